from django.apps import AppConfig


class MetricsConfig(AppConfig):
    name = "dtis.metrics"
