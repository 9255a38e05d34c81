from django.apps import AppConfig


class SurfaceCoreConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'surface_core'
    verbose_name = "边界配置与曲面类型"
