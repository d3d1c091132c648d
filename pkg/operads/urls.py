from django.urls import path
from . import views

app_name = 'operads'

urlpatterns = [
    path('runs/', views.lista_runs, name='lista_runs'),
    path('runs/<int:pk>/', views.detalhe_run, name='detalhe_run'),
    path('sources/<int:pk>/', views.detalhe_source, name='detalhe_source'),
]
