from django.apps import AppConfig


class OperadsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'operads'
    verbose_name = 'Motor de Operads'
