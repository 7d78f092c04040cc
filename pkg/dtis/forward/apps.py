from django.apps import AppConfig


class ForwardConfig(AppConfig):
    name = "dtis.forward"
