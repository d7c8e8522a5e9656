from django.apps import AppConfig


class StatevecConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.statevec"
    verbose_name = "Statevector simulator"
