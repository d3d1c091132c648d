from django.test import SimpleTestCase, tag

from operads.errors import OrderingError
from operads.groebner import buchberger
from operads.orderings import (
    BoundOrdering, Comparison, check_admissibility, compare, parse_ordering, preset_for,
)
from operads.presentation import shuffleize
from operads.zoo import zoo

LEFT = ('m', ('m', 1, 2), 3)
RIGHT = ('m', 1, ('m', 2, 3))


class LeituraTests(SimpleTestCase):
    def test_preset_expandido(self):
        spec = parse_ordering('prepoisson')
        self.assertEqual([kind for kind, _ in spec.layers], ['pathclass', 'pathlex'])
        self.assertEqual(str(spec), 'prepoisson')

    def test_pathlex_acrescentado_no_fim(self):
        spec = parse_ordering('weightfirst')
        self.assertEqual(spec.layers[-1], ('pathlex', ''))
        spec = parse_ordering('rootclass:m<mbar')
        self.assertEqual(spec.layers, (('rootclass', 'm<mbar'), ('pathlex', '')))

    def test_camada_desconhecida(self):
        with self.assertRaises(OrderingError):
            parse_ordering('degrevlex')

    def test_gerador_desconhecido(self):
        generators = shuffleize(zoo('Ass')).generators
        with self.assertRaises(OrderingError):
            BoundOrdering('pathlex:foo<m', generators)


class ComparacaoTests(SimpleTestCase):
    def setUp(self):
        self.generators = shuffleize(zoo('Ass')).generators

    def test_pathlex_caminho_mais_longo_e_maior(self):
        ordering = BoundOrdering('pathlex', self.generators)
        self.assertEqual(compare(ordering, LEFT, RIGHT), Comparison.GREATER)
        self.assertEqual(compare(ordering, RIGHT, LEFT), Comparison.LESS)
        self.assertEqual(compare(ordering, LEFT, LEFT), Comparison.EQUAL)

    def test_aridades_diferentes(self):
        ordering = BoundOrdering('pathlex', self.generators)
        with self.assertRaises(OrderingError):
            ordering.compare(('m', 1, 2), LEFT)

    def test_ordem_total_e_deterministica(self):
        ordering = BoundOrdering('pathlex:mbar<m', self.generators)
        keys = {ordering.key(m) for m in [LEFT, RIGHT, ('mbar', ('m', 1, 2), 3), ('m', ('mbar', 1, 2), 3)]}
        self.assertEqual(len(keys), 4)

    def test_preset_por_geradores(self):
        self.assertEqual(preset_for(self.generators), 'pathlex')
        self.assertEqual(preset_for(shuffleize(zoo('PrePoisson')).generators), 'prepoisson')


@tag('properties')
class AdmissibilidadeTests(SimpleTestCase):
    def test_pathlex_sem_violacoes(self):
        generators = shuffleize(zoo('Ass')).generators
        report = check_admissibility('pathlex', generators, trials=10000, seed=1)
        self.assertTrue(report.clean, report.to_json())
        self.assertGreater(report.exhaustive_pairs, 0)

    def test_prepoisson_sem_violacoes(self):
        generators = shuffleize(zoo('PrePoisson')).generators
        report = check_admissibility('prepoisson', generators, trials=10000, seed=1)
        self.assertTrue(report.clean, report.to_json())

    def test_classe_da_raiz_nao_e_monotona(self):
        generators = shuffleize(zoo('Ass')).generators
        report = check_admissibility('rootclass:m<mbar', generators, trials=0)
        self.assertFalse(report.clean)
        self.assertGreater(report.to_json()['violation_count'], 0)


@tag('properties')
class InvarianciaTests(SimpleTestCase):
    """Dimensões não dependem da ordem admissível escolhida."""

    def assertInvariant(self, name, orderings, expected):
        presentation = shuffleize(zoo(name))
        for ordering in orderings:
            dims = buchberger(presentation, ordering, len(expected)).dims()
            self.assertEqual(dims, {n: d for n, d in enumerate(expected, start=1)}, f'{name} {ordering}')

    def test_ass(self):
        self.assertInvariant('Ass', ('pathlex', 'pathlex:mbar<m', 'weightfirst'), [1, 2, 6, 24])

    def test_lie(self):
        self.assertInvariant('Lie', ('pathlex', 'weightfirst'), [1, 1, 2, 6])

    @tag('slow')
    def test_dend(self):
        self.assertInvariant(
            'Dend', ('pathlex', 'pathlex:succbar<succ<precbar<prec', 'pathlex:prec<succ'), [1, 4, 30, 336],
        )

    @tag('slow')
    def test_prepoisson(self):
        self.assertInvariant(
            'PrePoisson', ('prepoisson', 'pathlex', 'pathlex:circ<circbar<dotbar<dot', 'weightfirst'), [1, 4, 30, 336],
        )
