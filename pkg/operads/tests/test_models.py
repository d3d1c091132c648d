from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, TestCase

from operads.models import ComputationRun, OperadSource
from operads.zoo import ALGEBRAS, MORPHISMS, OPERADS


class OperadSourceTests(TestCase):
    def test_tipo_definido_pela_validacao(self):
        source = OperadSource(name='Ass2', text=OPERADS['Ass'].replace('operad Ass', 'operad Ass2'))
        source.full_clean()
        self.assertEqual(source.kind, OperadSource.Kind.OPERAD)

        source = OperadSource(name='lie-ass', text=MORPHISMS['LieAss'])
        source.full_clean()
        self.assertEqual(source.kind, OperadSource.Kind.MORPHISM)

        source = OperadSource(name='heis', text=ALGEBRAS['heisenberg'])
        source.full_clean()
        self.assertEqual(source.kind, OperadSource.Kind.ALGEBRA)

    def test_texto_invalido(self):
        source = OperadSource(name='ruim', text='operad X { generators: m(2); relations: n(a1,a2) = 0; }')
        with self.assertRaises(ValidationError) as ctx:
            source.full_clean()
        self.assertIn('text', ctx.exception.message_dict)

    def test_nome_invalido(self):
        source = OperadSource(name='com espaço', text=OPERADS['Com'])
        with self.assertRaises(ValidationError) as ctx:
            source.full_clean()
        self.assertIn('name', ctx.exception.message_dict)

    def test_forma_normalizada(self):
        source = OperadSource(name='Lie', text=OPERADS['Lie'])
        source.full_clean()
        source.save()
        normalized = source.normalized()
        self.assertTrue(normalized.startswith('operad Lie {'))
        self.assertIn('generators: b(2) antisym;', normalized)
        self.assertEqual(str(source), 'Lie (Operad)')


class ComputationRunTests(TestCase):
    def test_status_pelo_codigo_de_saida(self):
        self.assertEqual(ComputationRun.status_for(0), ComputationRun.Status.OK)
        self.assertEqual(ComputationRun.status_for(1), ComputationRun.Status.USAGE)
        self.assertEqual(ComputationRun.status_for(2), ComputationRun.Status.PARSE_ERROR)
        self.assertEqual(ComputationRun.status_for(3), ComputationRun.Status.RESOURCE_CAP)
        self.assertEqual(ComputationRun.status_for(4), ComputationRun.Status.MATH_FAILURE)

    def test_sucesso_e_filtro_por_status(self):
        first = ComputationRun.objects.create(command='dims', exit_code=0)
        second = ComputationRun.objects.create(command='gb', exit_code=3, status=ComputationRun.Status.RESOURCE_CAP)
        self.assertTrue(first.succeeded)
        self.assertFalse(second.succeeded)
        self.assertEqual(ComputationRun.objects.filter(status=ComputationRun.Status.OK).get(), first)

    def test_documento_apagado_mantem_execucao(self):
        source = OperadSource.objects.create(name='Com', kind='operad', text=OPERADS['Com'])
        run = ComputationRun.objects.create(command='dims', source=source)
        source.delete()
        run.refresh_from_db()
        self.assertIsNone(run.source)


class ConfiguracaoTests(SimpleTestCase):
    def test_idioma_e_fuso(self):
        self.assertEqual(settings.LANGUAGE_CODE, 'pt-br')
        self.assertEqual(settings.TIME_ZONE, 'America/Sao_Paulo')
        self.assertTrue(settings.USE_TZ)
