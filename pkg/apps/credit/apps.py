from django.apps import AppConfig


class CreditConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.credit"
    verbose_name = "Credit feature selection"
