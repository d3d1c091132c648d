from django.test import SimpleTestCase, tag

from operads.bar import BarComplex, bar_homology, bar_homology_table
from operads.errors import MathematicalFailure
from operads.pbw import RightModule
from operads.zoo import find_morphism


def module_for(source, target, max_arity):
    return RightModule.build(find_morphism(source, target).shuffled(), max_arity)


class BarTests(SimpleTestCase):
    def test_aridade_1(self):
        module = module_for('Lie', 'Ass', 3)
        self.assertEqual(bar_homology(module, 1, 0), 1)
        self.assertEqual(bar_homology(module, 1, 1), 0)

    def test_diferencial_ao_quadrado(self):
        complex_ = BarComplex(module_for('Lie', 'Ass', 3))
        self.assertTrue(complex_.chains(3, 2))
        self.assertEqual(complex_.check_square_zero(3, 2), [])

    def test_h0_sao_os_geradores(self):
        module = module_for('Lie', 'Ass', 3)
        table = bar_homology_table(module, 3)
        for n in ('1', '2', '3'):
            self.assertEqual(table[n]['0'], 1)
            self.assertEqual(table[n]['1'], 0)
            self.assertTrue(table[n]['h0_matches_generators'])

    def test_grau_acima_do_limite(self):
        with self.assertRaises(MathematicalFailure):
            bar_homology(module_for('Lie', 'Ass', 3), 3, 3)

    @tag('slow')
    def test_poisson_aciclico_em_grau_1(self):
        table = bar_homology_table(module_for('Lie', 'Poisson', 4), 4)
        for n in ('1', '2', '3', '4'):
            self.assertEqual(table[n]['0'], 1)
            self.assertEqual(table[n]['1'], 0)

    @tag('slow')
    def test_dias_sobre_leib_tem_h1(self):
        module = module_for('Leib', 'Dias', 4)
        table = bar_homology_table(module, 4)
        self.assertEqual([table[n]['1'] for n in ('1', '2', '3', '4')], [0, 0, 3, 12])
        for n in ('1', '2', '3', '4'):
            self.assertEqual(table[n]['0'], module.quotient(int(n))[0])
            self.assertTrue(table[n]['h0_matches_generators'], n)
