from django.test import SimpleTestCase

from operads.envelope import (
    GradedAlgebra, direct_image, evaluate, evaluate_generators, regular_evaluation,
)
from operads.errors import MathematicalFailure, MorphismError, ResourceCapExceeded
from operads.groebner import buchberger
from operads.pbw import RightModule
from operads.presentation import shuffleize
from operads.zoo import find_morphism, load_algebra, zoo


def basis_of(name, max_arity):
    return buchberger(shuffleize(zoo(name)), 'pathlex', max_arity)


class AvaliacaoTests(SimpleTestCase):
    def test_com_em_dimensao_2(self):
        self.assertEqual(evaluate(basis_of('Com', 4), {1: 2}, 4), {1: 2, 2: 3, 3: 4, 4: 5})

    def test_ass_em_dimensao_2(self):
        self.assertEqual(evaluate(basis_of('Ass', 4), {1: 2}, 4), {1: 2, 2: 4, 3: 8, 4: 16})
        self.assertEqual(regular_evaluation({1: 1, 2: 2, 3: 6, 4: 24}, 2, 4), {1: 2, 2: 4, 3: 8, 4: 16})

    def test_espaco_nulo(self):
        self.assertEqual(evaluate(basis_of('Ass', 3), {}, 3), {1: 0, 2: 0, 3: 0})

    def test_pesos_misturados(self):
        self.assertEqual(evaluate(basis_of('Com', 4), {1: 2, 2: 1}, 4), {1: 2, 2: 4, 3: 6, 4: 9})

    def test_limite_de_peso(self):
        with self.assertRaises(ResourceCapExceeded):
            evaluate(basis_of('Com', 3), {1: 1}, 7)


class AlgebraTests(SimpleTestCase):
    def test_dimensoes_por_peso(self):
        algebra = GradedAlgebra.from_spec(load_algebra('freelie2'))
        self.assertEqual(algebra.dims, {1: 2, 2: 1, 3: 2})
        self.assertTrue(algebra.check(3))

    def test_produto_que_nao_preserva_peso(self):
        with self.assertRaises(MathematicalFailure):
            GradedAlgebra('w', zoo('Lie'), [('x', 1), ('y', 1)], {('b', ('x', 'y')): {'x': 1}})

    def test_jacobi_violada(self):
        algebra = GradedAlgebra(
            'j', zoo('Lie'),
            [('x', 1), ('y', 1), ('w', 1), ('z', 2), ('u', 3)],
            {('b', ('x', 'y')): {'z': 1}, ('b', ('z', 'w')): {'u': 1}},
        )
        with self.assertRaises(MathematicalFailure):
            algebra.check(3)


class EnvelopeTests(SimpleTestCase):
    def setUp(self):
        self.module = RightModule.build(find_morphism('Lie', 'Ass').shuffled(), 4)

    def envelope(self, name, max_weight=4):
        return direct_image(self.module, GradedAlgebra.from_spec(load_algebra(name)), max_weight)

    def test_abeliana_da_algebra_simetrica(self):
        self.assertEqual(self.envelope('abelian2'), {1: 2, 2: 3, 3: 4, 4: 5})

    def test_heisenberg_tem_as_dimensoes_da_abeliana(self):
        abelian = self.envelope('abelian-graded')
        self.assertEqual(abelian, {1: 2, 2: 4, 3: 6, 4: 9})
        self.assertEqual(self.envelope('heisenberg'), abelian)
        self.assertEqual(evaluate_generators(self.module, {1: 2, 2: 1}, 4), abelian)

    def test_lie_livre_da_algebra_tensorial(self):
        self.assertEqual(self.envelope('freelie2', 3), {1: 2, 2: 4, 3: 8})

    def test_algebra_sobre_outro_operad(self):
        algebra = GradedAlgebra('c', zoo('Com'), [('x', 1)])
        with self.assertRaises(MorphismError):
            direct_image(self.module, algebra, 3)
