from django.test import SimpleTestCase, tag

from operads import linalg
from operads.errors import IncompleteBasisError, MorphismError, PresentationError
from operads.groebner import buchberger
from operads.pbw import (
    FilteredPresentation, GradedComparison, PBWAnalysis, RightModule, associated_graded,
    freeness_check, gr_is_isomorphic_check, render_composite, verify_morphism,
)
from operads.presentation import (
    OperadMorphism, ShufflePresentation, change_generators, identity_morphism, shuffleize,
)
from operads.trees import Term, shape_key
from operads.zoo import find_morphism, load_morphism, zoo


def module_for(source, target, max_arity):
    return RightModule.build(find_morphism(source, target).shuffled(), max_arity)


class LiberdadeTests(SimpleTestCase):
    def test_ass_livre_sobre_lie(self):
        report = freeness_check(module_for('Lie', 'Ass', 4), 4)
        self.assertTrue(report.free)
        self.assertEqual(report.generator_dims, {1: 1, 2: 1, 3: 1, 4: 1})
        self.assertEqual(report.egf_generator_dims, {1: 1, 2: 1, 3: 1, 4: 1})
        self.assertIsNone(report.witness)
        self.assertTrue(all(row['verdict'] == 'match' for row in report.per_arity))

    def test_poisson_livre_sobre_lie(self):
        report = freeness_check(module_for('Lie', 'Poisson', 4), 4)
        self.assertTrue(report.free)
        self.assertEqual(report.generator_dims, {1: 1, 2: 1, 3: 1, 4: 1})

    def test_prelie_livre_sobre_lie(self):
        report = freeness_check(module_for('Lie', 'PreLie', 4), 4)
        self.assertTrue(report.free)
        self.assertEqual(report.generator_dims, report.egf_generator_dims)

    def test_identidade(self):
        module = RightModule.build(identity_morphism(zoo('Ass')).shuffled(), 4)
        report = freeness_check(module, 4)
        self.assertTrue(report.free)
        self.assertEqual(report.generator_dims, {1: 1, 2: 0, 3: 0, 4: 0})

    def test_aridade_alem_da_base(self):
        module = module_for('Lie', 'Ass', 3)
        with self.assertRaises(IncompleteBasisError):
            module.quotient(4)

    def test_acao_associativa(self):
        module = module_for('Lie', 'PreLie', 4)
        self.assertEqual(module.check_action_associativity(4, samples=20, seed=2), [])

    @tag('slow')
    def test_ass_e_prelie_ate_aridade_5(self):
        for target in ('Ass', 'PreLie'):
            report = freeness_check(module_for('Lie', target, 5), 5)
            self.assertTrue(report.free, target)
        report = freeness_check(module_for('Lie', 'Ass', 5), 5)
        self.assertEqual(report.generator_dims, {1: 1, 2: 1, 3: 1, 4: 1, 5: 1})


class DiasSobreLeibTests(SimpleTestCase):
    def test_defeito_e_testemunha(self):
        report = freeness_check(module_for('Leib', 'Dias', 4), 4)
        self.assertFalse(report.free)
        self.assertEqual(report.free_up_to, 2)
        self.assertEqual(report.defect_arity, 3)
        self.assertEqual(report.generator_dims[1], 1)
        self.assertEqual(report.generator_dims[2], 2)
        self.assertEqual(report.egf_generator_dims, {1: 1, 2: 2, 3: 0, 4: 0})
        row = report.per_arity[2]
        self.assertEqual(row['n'], 3)
        witness = report.witness
        self.assertIsNotNone(witness)
        self.assertEqual(witness['arity'], 3)
        self.assertTrue(witness['combination'])
        self.assertEqual(witness['expanded_normal_form'], '0')
        self.assertEqual(witness['kernel_dimension'], row['dim_free_model'] - row['dim_N'])

    @tag('slow')
    def test_pelo_graduado_associado(self):
        analysis = PBWAnalysis(load_morphism('LeibDias'), 4, use_gr=True)
        data = analysis.run(bar=False)
        self.assertEqual(data['filtration'], 'automatic')
        self.assertFalse(analysis.freeness.free)
        witness = analysis.freeness.witness
        self.assertIsNotNone(witness)
        self.assertEqual(witness['arity'], analysis.freeness.defect_arity)
        self.assertTrue(witness['combination'])
        self.assertEqual(witness['expanded_normal_form'], '0')
        self.assertGreater(witness['kernel_dimension'], 0)


class MorfismoTests(SimpleTestCase):
    def setUp(self):
        self.bad = OperadMorphism('LieAssBad', zoo('Lie'), zoo('Ass'), {'b': Term.monomial(('m', 1, 2))})

    def test_morfismo_valido(self):
        shuffled = find_morphism('Lie', 'Ass').shuffled()
        basis = buchberger(shuffled.target, 'pathlex', 3)
        self.assertEqual(verify_morphism(shuffled, basis), {'valid': True, 'checked': 1, 'failures': []})

    def test_morfismo_invalido(self):
        shuffled = self.bad.shuffled()
        result = verify_morphism(shuffled, buchberger(shuffled.target, 'pathlex', 3))
        self.assertFalse(result['valid'])
        self.assertEqual(len(result['failures']), 1)

    def test_analise_recusa_morfismo_invalido(self):
        with self.assertRaises(MorphismError):
            PBWAnalysis(self.bad, 3).run(bar=False)


class GraduadoTests(SimpleTestCase):
    def test_homogenea_fica_igual(self):
        base = shuffleize(zoo('PrePoisson'))
        self.assertIs(associated_graded(FilteredPresentation(base)), base)

    def test_sem_gerador_de_peso_positivo(self):
        with self.assertRaises(PresentationError):
            FilteredPresentation(shuffleize(zoo('Ass')))

    def test_dendcircdot_degenera_em_prepoisson(self):
        graded = associated_graded(FilteredPresentation(shuffleize(zoo('DendCircDot'))))
        prepoisson = shuffleize(zoo('PrePoisson'))
        self.assertEqual(
            linalg.echelon_terms(list(graded.relations), key=shape_key),
            linalg.echelon_terms(list(prepoisson.relations), key=shape_key),
        )

    def test_ass_degenera_em_poisson(self):
        bracket = Term({('m', 1, 2): 1, ('m', 2, 1): -1})
        jordan = Term({('m', 1, 2): 1, ('m', 2, 1): 1})
        changed = shuffleize(change_generators(zoo('Ass'), [('b', 1, bracket), ('p', 0, jordan)]))
        comparison = GradedComparison(changed, 4)
        self.assertEqual(comparison.basis_graded.dims(), {1: 1, 2: 2, 3: 6, 4: 24})
        self.assertEqual(comparison.check['isomorphic_up_to'], 4)
        self.assertEqual(comparison.to_json()['dims_gr'], {'1': 1, '2': 2, '3': 6, '4': 24})

    def test_relacao_a_menos_aparece_como_excesso(self):
        base = shuffleize(zoo('Ass'))
        cut = ShufflePresentation('cut', base.generators, base.relations[1:])
        check = gr_is_isomorphic_check(buchberger(base, 'pathlex', 3), buchberger(cut, 'pathlex', 3), 3)
        self.assertEqual(check['isomorphic_up_to'], 2)
        self.assertEqual(check['per_arity'][2]['verdict'], 'excess 1')

    @tag('slow')
    def test_dendcircdot_isomorfo_ao_graduado(self):
        comparison = GradedComparison(shuffleize(zoo('DendCircDot')), 4)
        self.assertEqual(comparison.check['isomorphic_up_to'], 4)


class AnaliseTests(SimpleTestCase):
    def test_relatorio_completo(self):
        data = PBWAnalysis(load_morphism('LieAss'), 3).run()
        self.assertEqual(data['morphism'], 'LieAss')
        self.assertTrue(data['morphism_check']['valid'])
        self.assertEqual(data['freeness']['free_up_to'], 3)
        self.assertEqual(data['dims_N'], {'1': 1, '2': 2, '3': 6})
        self.assertEqual(data['bar_homology']['3']['1'], 0)
        self.assertTrue(data['bar_homology']['3']['h0_matches_generators'])

    @tag('slow')
    def test_dend_livre_sobre_prelie_pelo_graduado(self):
        analysis = PBWAnalysis(load_morphism('PreLieDendCircDot'), 4, use_gr=True)
        data = analysis.run()
        self.assertNotIn('filtration', data)
        self.assertEqual(data['freeness']['free_up_to'], 4)
        self.assertEqual(analysis.freeness.generator_dims, {1: 1, 2: 2, 3: 9, 4: 68})
        self.assertEqual(data['dims_N'], {'1': 1, '2': 4, '3': 30, '4': 336})
        self.assertEqual(data['gr']['dims_target'], data['gr']['dims_gr'])
        self.assertEqual(data['gr']['check']['isomorphic_up_to'], 4)
        self.assertTrue(data['gr']['quadratic_basis'])
        for n in ('1', '2', '3', '4'):
            self.assertEqual(data['bar_homology'][n]['1'], 0, n)
            self.assertTrue(data['bar_homology'][n]['h0_matches_generators'], n)

    def test_texto_da_composicao(self):
        self.assertEqual(render_composite(('m', 1, 2), [(1, 3), (2,)], [('b', 1, 2), 1]), 'm([b(1,3)],2)')
