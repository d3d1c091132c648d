import json

from django.contrib import admin
from django.core.exceptions import ValidationError
from django.db import models
from django.forms import Textarea
from django.utils.html import format_html

from .errors import OperadError
from .models import ComputationRun, OperadSource


@admin.register(OperadSource)
class OperadSourceAdmin(admin.ModelAdmin):
    list_display = ['name', 'kind_badge', 'total_runs', 'atualizado_em']
    list_filter = ['kind', 'criado_em']
    search_fields = ['name', 'description', 'text']
    readonly_fields = ['kind', 'normalized_preview', 'criado_em', 'atualizado_em']

    fieldsets = (
        ('Documento', {
            'fields': ('name', 'kind', 'description', 'text')
        }),
        ('Forma normalizada', {
            'fields': ('normalized_preview',),
            'classes': ('collapse',)
        }),
        ('Controle do Sistema', {
            'fields': ('criado_em', 'atualizado_em'),
            'classes': ('collapse',)
        }),
    )

    formfield_overrides = {
        models.TextField: {'widget': Textarea(attrs={'rows': 12, 'cols': 90, 'style': 'font-family: monospace;'})},
    }

    def kind_badge(self, obj):
        colors = {
            'operad': '#17a2b8',
            'morphism': '#6f42c1',
            'algebra': '#28a745',
        }
        return format_html(
            '<span style="background-color: {}; color: white; padding: 3px 8px; border-radius: 8px; font-size: 0.8rem;">{}</span>',
            colors.get(obj.kind, '#6c757d'),
            obj.get_kind_display()
        )
    kind_badge.short_description = 'Tipo'

    def total_runs(self, obj):
        count = obj.runs.count()
        if count > 0:
            return format_html('<span style="font-weight: bold;">{}</span>', count)
        return format_html('<span style="color: #7A7A7A;">0</span>')
    total_runs.short_description = 'Execuções'

    def normalized_preview(self, obj):
        if not obj.pk:
            return '-'
        try:
            return format_html('<pre>{}</pre>', obj.normalized())
        except OperadError as error:
            return format_html('<span style="color: #dc3545;">{}</span>', error)
    normalized_preview.short_description = 'Normalizado'

    actions = ['validar_documentos']

    def validar_documentos(self, request, queryset):
        valid, invalid = 0, []
        for source in queryset:
            try:
                source.full_clean()
            except ValidationError as error:
                invalid.append(f"{source.name}: {'; '.join(error.messages)}")
                continue
            source.save(update_fields=['kind', 'atualizado_em'])
            valid += 1
        self.message_user(request, f'{valid} documento(s) válido(s).')
        for message in invalid:
            self.message_user(request, message, level='error')
    validar_documentos.short_description = 'Validar documentos selecionados'


@admin.register(ComputationRun)
class ComputationRunAdmin(admin.ModelAdmin):
    list_display = ['id', 'command', 'status_badge', 'exit_code', 'duracao_formatada', 'source', 'criado_em']
    list_filter = ['status', 'command', 'criado_em']
    search_fields = ['command', 'message', 'text_report']
    readonly_fields = [
        'command', 'options', 'status', 'exit_code', 'message', 'report_preview',
        'text_report', 'duration', 'source', 'criado_em',
    ]
    exclude = ['report']
    date_hierarchy = 'criado_em'

    fieldsets = (
        ('Execução', {
            'fields': ('command', 'options', 'source', 'status', 'exit_code', 'message')
        }),
        ('Relatório', {
            'fields': ('text_report', 'report_preview'),
            'classes': ('wide',)
        }),
        ('Controle do Sistema', {
            'fields': ('duration', 'criado_em'),
            'classes': ('collapse',)
        }),
    )

    def status_badge(self, obj):
        colors = {
            'ok': '#28a745',
            'usage': '#6c757d',
            'parse_error': '#ffc107',
            'resource_cap': '#17a2b8',
            'math_failure': '#dc3545',
        }
        return format_html(
            '<span style="background-color: {}; color: white; padding: 4px 8px; border-radius: 12px; font-size: 0.8rem; font-weight: bold;">{}</span>',
            colors.get(obj.status, '#6c757d'),
            obj.get_status_display()
        )
    status_badge.short_description = 'Status'

    def duracao_formatada(self, obj):
        if obj.duration is None:
            return format_html('<span style="color: #7A7A7A;">-</span>')
        return f'{obj.duration:.2f}s'
    duracao_formatada.short_description = 'Duração'

    def report_preview(self, obj):
        if obj.report is None:
            return '-'
        return format_html('<pre>{}</pre>', json.dumps(obj.report, sort_keys=True, indent=2, ensure_ascii=False))
    report_preview.short_description = 'JSON'

    def has_add_permission(self, request):
        return False


admin.site.site_header = "PBW Lab - Administração"
admin.site.site_title = "PBW Lab Admin"
admin.site.index_title = "Documentos e execuções"
