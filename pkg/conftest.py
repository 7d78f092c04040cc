import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "dtis.settings")
django.setup()
