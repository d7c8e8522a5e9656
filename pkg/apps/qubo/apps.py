from django.apps import AppConfig


class QuboConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.qubo"
    verbose_name = "QUBO"
