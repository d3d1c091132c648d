from fractions import Fraction

from django.test import SimpleTestCase

from operads.dsl import (
    document_kind, parse, parse_algebra, parse_map, parse_morphism, parse_term, print_algebra,
    print_morphism, print_presentation,
)
from operads.errors import DSLSyntaxError, MorphismError, PresentationError
from operads.presentation import Symmetry
from operads.trees import Term
from operads.zoo import ALGEBRAS, MORPHISMS, OPERADS, zoo


class LeituraTests(SimpleTestCase):
    def test_operad_simples(self):
        lie = parse(OPERADS['Lie'])
        self.assertEqual(lie.name, 'Lie')
        self.assertEqual(lie.generators[0].symmetry, Symmetry.ANTISYMMETRIC)
        self.assertEqual(len(lie.relations), 1)
        self.assertEqual(lie.relations[0].arity, 3)

    def test_pesos_e_comentarios(self):
        text = '''
# comentário
operad P {
  generators: b(2) antisym @1, p(2) sym;   # colchete de peso 1
  relations:
    p(p(a1,a2),a3) = p(a1,p(a2,a3));
}
'''
        presentation = parse(text)
        self.assertEqual(presentation.specs['b'].weight, 1)
        self.assertEqual(presentation.relations[0], Term({
            ('p', ('p', 1, 2), 3): 1, ('p', 1, ('p', 2, 3)): -1,
        }))

    def test_coeficientes_racionais(self):
        term = parse_term('1/2*m(a1,a2) - 3 m(a2,a1)', zoo('Ass'))
        self.assertEqual(term.coefficient(('m', 1, 2)), Fraction(1, 2))
        self.assertEqual(term.coefficient(('m', 2, 1)), -3)

    def test_alias_do_oposto(self):
        self.assertEqual(parse_term('mbar(a1,a2)', zoo('Ass')), Term.monomial(('m', 2, 1)))

    def test_tipo_do_documento(self):
        self.assertEqual(document_kind(OPERADS['Ass']), 'operad')
        self.assertEqual(document_kind(MORPHISMS['LieAss']), 'morphism')
        self.assertEqual(document_kind(ALGEBRAS['heisenberg']), 'algebra')


class ErrosTests(SimpleTestCase):
    def test_caractere_inesperado_com_linha(self):
        text = 'operad X {\n  generators: m(2);\n  relations: m(m(a1,a2),a3) $ ;\n}'
        with self.assertRaises(DSLSyntaxError) as ctx:
            parse(text)
        self.assertEqual(ctx.exception.line, 3)
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_token_esperado(self):
        with self.assertRaises(DSLSyntaxError) as ctx:
            parse('operad X {\n  generators m(2);\n}')
        self.assertEqual(ctx.exception.line, 2)

    def test_gerador_nao_declarado(self):
        with self.assertRaises(PresentationError) as ctx:
            parse('operad X { generators: m(2); relations: n(a1,a2) = 0; }')
        self.assertIn("undeclared generator 'n'", str(ctx.exception))

    def test_aridade_errada(self):
        with self.assertRaises(PresentationError) as ctx:
            parse('operad X { generators: m(2); relations: m(a1,a2,a3) = 0; }')
        self.assertIn('arity mismatch', str(ctx.exception))

    def test_relacao_nao_homogenea(self):
        with self.assertRaises(PresentationError) as ctx:
            parse('operad X { generators: m(2); relations: m(a1,a2) - m(m(a1,a2),a3) = 0; }')
        self.assertIn('arity-inhomogeneous relation', str(ctx.exception))

    def test_variavel_repetida(self):
        with self.assertRaises(PresentationError):
            parse('operad X { generators: m(2); relations: m(m(a1,a1),a3) = 0; }')

    def test_morfismo_sem_imagem(self):
        with self.assertRaises(MorphismError):
            parse_morphism('morphism X { source: Lie; target: Ass; map: }')


class ImpressaoTests(SimpleTestCase):
    def test_ida_e_volta_do_zoo(self):
        for name in OPERADS:
            original = zoo(name)
            self.assertEqual(parse(print_presentation(original)), original, name)

    def test_morfismo_impresso(self):
        morphism = parse_morphism(MORPHISMS['LieAss'])
        printed = print_morphism(morphism)
        self.assertIn('b -> m(a1,a2) - m(a2,a1);', printed)
        self.assertEqual(parse_morphism(printed).images, morphism.images)

    def test_mapa_de_linha_de_comando(self):
        images = parse_map('b -> m(a1,a2) - mbar(a1,a2)', zoo('Lie'), zoo('Ass'))
        self.assertEqual(images, {'b': Term({('m', 1, 2): 1, ('m', 2, 1): -1})})

    def test_algebra(self):
        spec = parse_algebra(ALGEBRAS['heisenberg'])
        self.assertEqual(spec.basis, [('x1', 1), ('x2', 1), ('y', 2)])
        self.assertEqual(spec.products[('b', ('x1', 'x2'))], {'y': 1})
        again = parse_algebra(print_algebra(spec))
        self.assertEqual(again.products, spec.products)
        self.assertEqual(again.basis, spec.basis)

    def test_algebra_com_elemento_desconhecido(self):
        with self.assertRaises(PresentationError):
            parse_algebra('algebra A over Lie { basis: x@1; gamma(b; x, w) = x; }')
