from django.apps import AppConfig


class QimageConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.qimage"
    verbose_name = "Quantum image encoding"
