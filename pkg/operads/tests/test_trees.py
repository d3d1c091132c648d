import random

from django.test import SimpleTestCase, tag
from django.test.utils import override_settings

from operads.errors import InvalidMonomialError, ResourceCapExceeded
from operads.presentation import GeneratorSpec
from operads.trees import (
    IDENTITY, Term, compose, compose_terms, divides, enumerate_monomials, is_shuffle, leaves,
    make_monomial, ordered_partitions, partial_compose, rewrite, serialize, slot_blocks, standardize,
)

M = GeneratorSpec('m', 2)
LEFT = ('m', ('m', 1, 2), 3)
RIGHT = ('m', 1, ('m', 2, 3))


class EnumeracaoTests(SimpleTestCase):
    def test_contagem_do_operad_livre_binario(self):
        self.assertEqual(len(enumerate_monomials([M], 2)), 1)
        self.assertEqual(len(enumerate_monomials([M], 3)), 3)
        self.assertEqual(len(enumerate_monomials([M], 4)), 15)

    def test_todos_os_monomios_sao_shuffle(self):
        for m in enumerate_monomials([M, GeneratorSpec('t', 3)], 4):
            self.assertTrue(is_shuffle(m), serialize(m))

    def test_ordem_deterministica(self):
        self.assertEqual(enumerate_monomials([M], 4), enumerate_monomials([M], 4))

    def test_filtro_na_raiz(self):
        combs = enumerate_monomials([M], 4, accept=lambda m: m[1] == 1 or not isinstance(m[2], tuple))
        self.assertTrue(all(is_shuffle(m) for m in combs))
        self.assertLess(len(combs), 15)

    @override_settings(OPERADS={'MAX_ARITY': 3})
    def test_limite_de_aridade(self):
        with self.assertRaises(ResourceCapExceeded):
            enumerate_monomials([M], 4)

    def test_particoes_ordenadas_pelos_minimos(self):
        partitions = list(ordered_partitions(range(1, 4), 2))
        self.assertEqual(len(partitions), 3)
        for blocks in partitions:
            self.assertEqual([min(b) for b in blocks], sorted(min(b) for b in blocks))


class MonomioTests(SimpleTestCase):
    def test_condicao_de_minimos_locais(self):
        self.assertTrue(is_shuffle(LEFT))
        self.assertTrue(is_shuffle(('m', ('m', 1, 3), 2)))
        self.assertFalse(is_shuffle(('m', 2, 1)))
        self.assertFalse(is_shuffle(('m', ('m', 2, 3), 1)))

    def test_make_monomial_rejeita_rotulos_invalidos(self):
        self.assertEqual(make_monomial(('m', None, None), [1, 2]), ('m', 1, 2))
        with self.assertRaises(InvalidMonomialError):
            make_monomial(('m', None, None), [2, 1])
        with self.assertRaises(InvalidMonomialError):
            make_monomial(('m', None, None), [1, 2, 3])
        with self.assertRaises(InvalidMonomialError):
            make_monomial(('m', None, None, None), [1, 2, 3], arities={'m': 2})

    def test_serializacao_com_prefixo(self):
        self.assertEqual(serialize(LEFT, 'a'), 'm(m(a1,a2),a3)')
        self.assertEqual(serialize(IDENTITY), '1')

    def test_standardize(self):
        m, labels = standardize(('m', 3, 7))
        self.assertEqual(m, ('m', 1, 2))
        self.assertEqual(labels, (3, 7))


class ComposicaoTests(SimpleTestCase):
    def test_composicao_com_blocos(self):
        self.assertEqual(compose(('m', 1, 2), [('m', 1, 2), 1], [(1, 3), (2,)]), ('m', ('m', 1, 3), 2))

    def test_blocos_com_minimos_decrescentes(self):
        with self.assertRaises(InvalidMonomialError):
            compose(('m', 1, 2), [1, ('m', 1, 2)], [(2,), (1, 3)])

    def test_blocos_de_tamanho_errado(self):
        with self.assertRaises(InvalidMonomialError):
            compose(('m', 1, 2), [('m', 1, 2), 1], [(1,), (2, 3)])

    def test_slot_blocks(self):
        self.assertEqual(slot_blocks(4, (2, 4)), (2, [(1,), (2, 4), (3,)]))
        self.assertEqual(slot_blocks(3, (1, 2)), (1, [(1, 2), (3,)]))

    def test_associatividade_em_exemplo(self):
        left = compose(('m', 1, 2), [('m', 1, 2), 1], [(1, 3), (2,)])
        slot, blocks = slot_blocks(4, (2, 4))
        inners = [IDENTITY] * 3
        inners[slot - 1] = ('m', 1, 2)
        sequential = compose(left, inners, blocks)
        simultaneous = compose(('m', 1, 2), [('m', 1, 2), ('m', 1, 2)], [(1, 3), (2, 4)])
        self.assertEqual(sequential, ('m', ('m', 1, 3), ('m', 2, 4)))
        self.assertEqual(sequential, simultaneous)

    def test_composicao_parcial_de_termos(self):
        inner = Term({('m', 1, 2): 1, ('m', 2, 1): -1})
        result = partial_compose(('m', 1, 2), 2, inner, [(1,), (2, 3)])
        self.assertEqual(result, Term({('m', 1, ('m', 2, 3)): 1, ('m', 1, ('m', 3, 2)): -1}))

    @tag('properties')
    def test_unidade_e_forma_shuffle_em_casos_aleatorios(self):
        rng = random.Random(7)
        pools = {n: enumerate_monomials([M], n) for n in range(1, 5)}
        for _ in range(10000):
            outer = rng.choice(pools[rng.randint(2, 3)])
            k = len(leaves(outer))
            sizes = [rng.randint(1, 2) for _ in range(k)]
            labels = list(range(1, sum(sizes) + 1))
            rng.shuffle(labels)
            blocks, start = [], 0
            for size in sizes:
                blocks.append(tuple(sorted(labels[start:start + size])))
                start += size
            order = sorted(range(k), key=lambda i: min(blocks[i]))
            blocks = [blocks[i] for i in order]
            sizes = [sizes[i] for i in order]
            inners = [rng.choice(pools[size]) for size in sizes]
            result = compose(outer, inners, blocks)
            self.assertTrue(is_shuffle(result))
            self.assertEqual(len(leaves(result)), sum(sizes))
            self.assertEqual(compose(outer, [IDENTITY] * k, [(i,) for i in range(1, k + 1)]), outer)
            self.assertEqual(compose(IDENTITY, [outer], [tuple(range(1, k + 1))]), outer)


class DivisibilidadeTests(SimpleTestCase):
    def test_ocorrencias(self):
        big = ('m', ('m', ('m', 1, 2), 3), 4)
        embeddings = divides(LEFT, big)
        self.assertEqual(len(embeddings), 2)
        self.assertEqual({e.path for e in embeddings}, {(), (0,)})
        self.assertEqual(divides(RIGHT, LEFT), [])

    def test_ocorrencia_respeita_minimos_pendentes(self):
        # m(m(1,3),2) sob m(m(1,2),3): os pendentes viriam com mínimos 1,3,2
        self.assertEqual(divides(LEFT, ('m', ('m', 1, 3), 2)), [])

    def test_reescrita(self):
        embedding = divides(LEFT, LEFT)[0]
        result = rewrite(LEFT, embedding, Term({RIGHT: 1, LEFT: -2}))
        self.assertEqual(result, Term({RIGHT: 1, LEFT: -2}))

        big = ('m', ('m', ('m', 1, 2), 3), 4)
        inner = next(e for e in divides(LEFT, big) if e.path == (0,))
        self.assertEqual(rewrite(big, inner, Term.monomial(RIGHT)), Term.monomial(('m', ('m', 1, ('m', 2, 3)), 4)))


class TermTests(SimpleTestCase):
    def test_cancelamento(self):
        t = Term.monomial(LEFT) - Term.monomial(LEFT)
        self.assertFalse(t)
        self.assertEqual(t.to_string(), '0')

    def test_aridades_misturadas(self):
        with self.assertRaises(InvalidMonomialError):
            Term({('m', 1, 2): 1, LEFT: 1})
        with self.assertRaises(InvalidMonomialError):
            Term.monomial(('m', 1, 2)) + Term.monomial(LEFT)

    def test_texto(self):
        t = Term({('m', 1, 2): 2, ('m', 2, 1): -1})
        self.assertEqual(t.to_string(variable_prefix='a'), '2*m(a1,a2) - m(a2,a1)')
        self.assertEqual(t.to_json(), [['2', 'm(1,2)'], ['-1', 'm(2,1)']])

    def test_monico(self):
        t = Term({LEFT: 3, RIGHT: 6})
        monic = t.monic(key=serialize)
        self.assertEqual(monic.coefficient(LEFT), 1)
        self.assertEqual(monic.coefficient(RIGHT), 2)

    def test_composicao_bilinear(self):
        outer = Term({('m', 1, 2): 1, ('m', 2, 1): 1})
        result = compose_terms(outer, [Term.monomial(('m', 1, 2)), Term.monomial(IDENTITY)], [(1, 2), (3,)])
        self.assertEqual(result, Term({LEFT: 1, ('m', 3, ('m', 1, 2)): 1}))
