from pathlib import Path

import environ

env = environ.FileAwareEnv()

DEVELOPMENT = env.bool("DEVELOPMENT", default=True)

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parents[2]

SECRET_KEY = env(
    "SECRET_KEY", default="dtis-has-no-web-surface-so-this-is-not-secret"
)

DEBUG = env.bool("DEBUG", default=DEVELOPMENT)

# Application definition

INSTALLED_APPS = [
    "dtis.core",
    "dtis.specfun",
    "dtis.geometry",
    "dtis.forward",
    "dtis.surrogate",
    "dtis.optimizer",
    "dtis.metrics",
    "dtis.cli",
    # other apps
    "django_rq",
]

# No models live in this project; the database only satisfies Django.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": env("DB_NAME", default=str(BASE_DIR / "dtis.sqlite3")),
    },
}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

###########
# Logging #
###########
LOG_LEVEL = env("LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
        "simple": {"format": "%(levelname)s %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose" if not DEVELOPMENT else "simple",
        },
    },
    "loggers": {
        "dtis": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
        "rq.worker": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
    },
}
