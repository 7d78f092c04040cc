from django.apps import AppConfig


class SpecfunConfig(AppConfig):
    name = "dtis.specfun"
