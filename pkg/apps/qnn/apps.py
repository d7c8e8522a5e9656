from django.apps import AppConfig


class QnnAppConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.qnn"
    verbose_name = "Quantum neural networks"
