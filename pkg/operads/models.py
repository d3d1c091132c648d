from django.core.exceptions import ValidationError
from django.core.validators import RegexValidator
from django.db import models

from .dsl import (
    document_kind, parse, parse_algebra, parse_morphism, print_algebra, print_morphism, print_presentation,
)
from .errors import OperadError


class OperadSource(models.Model):
    class Kind(models.TextChoices):
        OPERAD = 'operad', 'Operad'
        MORPHISM = 'morphism', 'Morfismo'
        ALGEBRA = 'algebra', 'Álgebra'

    name = models.CharField(
        max_length=100, unique=True,
        validators=[RegexValidator(r'^[A-Za-z_][A-Za-z0-9_-]*$', 'Use letras, dígitos, "_" ou "-".')],
        help_text="Referência usada na linha de comando como source:NOME",
    )
    kind = models.CharField(max_length=20, choices=Kind.choices, editable=False, default=Kind.OPERAD)
    text = models.TextField(help_text="Documento na DSL (operad, morphism ou algebra)")
    description = models.TextField(blank=True)

    # Controle
    criado_em = models.DateTimeField(auto_now_add=True)
    atualizado_em = models.DateTimeField(auto_now=True)

    class Meta:
        verbose_name = 'Documento DSL'
        verbose_name_plural = 'Documentos DSL'
        ordering = ['name']
        indexes = [
            models.Index(fields=['kind'], name='operads_ope_kind_3f1c2a_idx'),
        ]

    def __str__(self):
        return f"{self.name} ({self.get_kind_display()})"

    def parsed(self, resolve=None):
        """Objeto lido do texto: apresentação, morfismo ou ``AlgebraSpec``."""
        kind = document_kind(self.text)
        if kind == self.Kind.MORPHISM:
            return parse_morphism(self.text, resolve)
        if kind == self.Kind.ALGEBRA:
            return parse_algebra(self.text, resolve)
        return parse(self.text)

    def normalized(self):
        value = self.parsed()
        if self.kind == self.Kind.OPERAD:
            return print_presentation(value)
        if self.kind == self.Kind.MORPHISM:
            return print_morphism(value)
        return print_algebra(value)

    def clean(self):
        try:
            self.kind = document_kind(self.text)
            self.parsed()
        except OperadError as error:
            raise ValidationError({'text': str(error)})


class ComputationRun(models.Model):
    class Status(models.TextChoices):
        OK = 'ok', 'Concluída'
        USAGE = 'usage', 'Uso incorreto'
        PARSE_ERROR = 'parse_error', 'Erro de leitura'
        RESOURCE_CAP = 'resource_cap', 'Limite de recursos'
        MATH_FAILURE = 'math_failure', 'Falha matemática'

    EXIT_STATUS = {
        0: Status.OK,
        1: Status.USAGE,
        2: Status.PARSE_ERROR,
        3: Status.RESOURCE_CAP,
        4: Status.MATH_FAILURE,
    }

    command = models.CharField(max_length=30)
    options = models.JSONField(default=dict, blank=True)
    status = models.CharField(max_length=20, choices=Status.choices, default=Status.OK)
    exit_code = models.PositiveSmallIntegerField(default=0)
    message = models.TextField(blank=True, help_text="Mensagem de erro, quando houver")
    report = models.JSONField(null=True, blank=True)
    text_report = models.TextField(blank=True)
    duration = models.FloatField(null=True, blank=True, help_text="Tempo de execução em segundos")
    source = models.ForeignKey(
        OperadSource, on_delete=models.SET_NULL, null=True, blank=True, related_name='runs',
    )

    criado_em = models.DateTimeField(auto_now_add=True)

    class Meta:
        verbose_name = 'Execução'
        verbose_name_plural = 'Execuções'
        ordering = ['-criado_em']
        indexes = [
            models.Index(fields=['command', 'status'], name='operads_com_command_8b2e4d_idx'),
            models.Index(fields=['criado_em'], name='operads_com_criado__5a7e91_idx'),
        ]

    def __str__(self):
        return f"{self.command} #{self.pk} ({self.get_status_display()})"

    @classmethod
    def status_for(cls, exit_code):
        return cls.EXIT_STATUS.get(exit_code, cls.Status.MATH_FAILURE)

    @property
    def succeeded(self):
        return self.exit_code == 0
