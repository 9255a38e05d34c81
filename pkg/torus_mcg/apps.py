from django.apps import AppConfig


class TorusMcgConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'torus_mcg'
    verbose_name = "一孔环面映射类群"
