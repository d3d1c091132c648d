from fractions import Fraction

from django.test import SimpleTestCase

from operads import linalg
from operads.trees import Term


class PostoTests(SimpleTestCase):
    def test_linhas_proporcionais(self):
        self.assertEqual(linalg.rank([{0: 1, 1: 2}, {0: 2, 1: 4}], 2), 1)
        self.assertEqual(linalg.rank([], 3), 0)

    def test_rref_com_pivos(self):
        rows, pivots = linalg.rref([{0: 2, 1: 4}, {1: 1, 2: 3}], 3)
        self.assertEqual(pivots, (0, 1))
        self.assertEqual(rows[0], {0: 1, 2: -6})
        self.assertEqual(rows[1], {1: 1, 2: 3})

    def test_coeficientes_racionais_exatos(self):
        rows, _ = linalg.rref([{0: 3, 1: 1}], 2)
        self.assertEqual(rows[0][1], Fraction(1, 3))
        self.assertIsInstance(rows[0][1], Fraction)


class NucleoTests(SimpleTestCase):
    def test_nucleo_a_direita(self):
        self.assertEqual(linalg.nullspace([{0: 1, 1: 1}], 2), [{1: 1, 0: -1}])

    def test_nucleo_a_esquerda(self):
        kernel = linalg.left_kernel([{0: 1}, {0: 2}], 1)
        self.assertEqual(kernel, [{1: 1, 0: -2}])

    def test_inversa(self):
        self.assertEqual(linalg.inverse([[1, 1], [0, 1]]), [[1, -1], [0, 1]])
        self.assertEqual(linalg.inverse([[2]]), [[Fraction(1, 2)]])

    def test_matriz_singular(self):
        self.assertIsNone(linalg.inverse([[1, 2], [2, 4]]))


class TermosTests(SimpleTestCase):
    def test_base_escalonada(self):
        a, b, c = ('m', 1, ('m', 2, 3)), ('m', ('m', 1, 2), 3), ('m', ('m', 1, 3), 2)
        terms = [Term({a: 1, b: 1}), Term({b: 1, c: 1}), Term({a: 1, c: -1})]
        echelon = linalg.echelon_terms(terms, key=repr)
        self.assertEqual(len(echelon), 2)
        self.assertEqual(linalg.span_rank(terms), 2)
        for term in echelon:
            self.assertEqual(term.coefficient(term.leading(repr)), 1)

    def test_termos_nulos_ignorados(self):
        self.assertEqual(linalg.echelon_terms([Term.zero(2)]), [])
        self.assertEqual(linalg.span_rank([Term.zero(2)]), 0)
