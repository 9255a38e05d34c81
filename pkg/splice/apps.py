from django.apps import AppConfig


class SpliceConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'splice'
    verbose_name = "Murasugi 和与稳定化"
