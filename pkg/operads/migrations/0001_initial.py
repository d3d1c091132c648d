# Generated by Django 5.2.5 on 2026-10-19 12:00

import django.core.validators
import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='OperadSource',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(help_text='Referência usada na linha de comando como source:NOME', max_length=100, unique=True, validators=[django.core.validators.RegexValidator('^[A-Za-z_][A-Za-z0-9_-]*$', 'Use letras, dígitos, "_" ou "-".')])),
                ('kind', models.CharField(choices=[('operad', 'Operad'), ('morphism', 'Morfismo'), ('algebra', 'Álgebra')], default='operad', editable=False, max_length=20)),
                ('text', models.TextField(help_text='Documento na DSL (operad, morphism ou algebra)')),
                ('description', models.TextField(blank=True)),
                ('criado_em', models.DateTimeField(auto_now_add=True)),
                ('atualizado_em', models.DateTimeField(auto_now=True)),
            ],
            options={
                'verbose_name': 'Documento DSL',
                'verbose_name_plural': 'Documentos DSL',
                'ordering': ['name'],
                'indexes': [models.Index(fields=['kind'], name='operads_ope_kind_3f1c2a_idx')],
            },
        ),
        migrations.CreateModel(
            name='ComputationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(max_length=30)),
                ('options', models.JSONField(blank=True, default=dict)),
                ('status', models.CharField(choices=[('ok', 'Concluída'), ('usage', 'Uso incorreto'), ('parse_error', 'Erro de leitura'), ('resource_cap', 'Limite de recursos'), ('math_failure', 'Falha matemática')], default='ok', max_length=20)),
                ('exit_code', models.PositiveSmallIntegerField(default=0)),
                ('message', models.TextField(blank=True, help_text='Mensagem de erro, quando houver')),
                ('report', models.JSONField(blank=True, null=True)),
                ('text_report', models.TextField(blank=True)),
                ('duration', models.FloatField(blank=True, help_text='Tempo de execução em segundos', null=True)),
                ('criado_em', models.DateTimeField(auto_now_add=True)),
                ('source', models.ForeignKey(blank=True, null=True, on_delete=django.db.models.deletion.SET_NULL, related_name='runs', to='operads.operadsource')),
            ],
            options={
                'verbose_name': 'Execução',
                'verbose_name_plural': 'Execuções',
                'ordering': ['-criado_em'],
                'indexes': [models.Index(fields=['command', 'status'], name='operads_com_command_8b2e4d_idx'), models.Index(fields=['criado_em'], name='operads_com_criado__5a7e91_idx')],
            },
        ),
    ]
