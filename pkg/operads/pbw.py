"""Análise PBW: filtrações, graduado associado, módulo à direita e teste de liberdade.

O módulo ``N`` sobre ``M`` via ``phi`` é livre até a aridade ``D`` quando, para cada
``n <= D``, a dimensão de ``(X∘M)(n)`` coincide com ``dim N(n)``; ``X`` é o quociente de
``N`` pela imagem da ação dos geradores de ``M``.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import combinations, product

from . import linalg
from .errors import IncompleteBasisError, MathematicalFailure, MorphismError, PresentationError
from .groebner import buchberger
from .orderings import preset_for
from .presentation import ShuffleMorphism, ShufflePresentation, automatic_filtration
from .series import composite_dims, egf_compose, egf_of, egf_solve_left
from .trees import (
    IDENTITY, Term, compose_terms, is_leaf, ordered_partitions, partial_compose, relabel, serialize,
    slot_blocks, vertices,
)

logger = logging.getLogger(__name__)


@dataclass
class FilteredPresentation:
    base: ShufflePresentation

    def __post_init__(self):
        if not self.distinguished:
            raise PresentationError(f'{self.base.name} has no generator of positive weight to filter by')

    @property
    def weights(self):
        return self.base.weights

    @property
    def distinguished(self):
        return [g.name for g in self.base.generators if g.weight > 0]

    def weight(self, m):
        return sum(self.weights[node[0]] for _, node in vertices(m))

    def is_homogeneous(self, term):
        return len({self.weight(m) for m in term}) <= 1


def associated_graded(filtered):
    """Troca cada relação pela sua componente de peso mínimo, numa base adaptada à filtração."""
    base = filtered.base
    if all(filtered.is_homogeneous(r) for r in base.relations):
        return base
    relations = []
    for n in sorted({r.arity for r in base.relations}):
        terms = base.relations_of_arity(n)
        columns = sorted({m for r in terms for m in r}, key=lambda m: (filtered.weight(m), serialize(m)))
        reduced, _ = linalg.rref(linalg.terms_to_rows(terms, columns), len(columns))
        for row in reduced:
            lowest = filtered.weight(columns[min(row)])
            relations.append(Term(
                {columns[j]: c for j, c in row.items() if filtered.weight(columns[j]) == lowest}, n,
            ))
    logger.info('Graduado associado de %s: %d relações', base.name, len(relations))
    return ShufflePresentation(f'gr({base.name})', base.generators, relations, source=base.source)


def graded_morphism(morphism, filtered, graded):
    """``phi`` composto com a projeção no graduado: cada imagem vira sua parte de peso mínimo."""
    images = {}
    for name, image in morphism.images.items():
        if not image:
            images[name] = image
            continue
        lowest = min(filtered.weight(m) for m in image)
        images[name] = Term({m: c for m, c in image.items() if filtered.weight(m) == lowest}, image.arity)
    return ShuffleMorphism(f'gr({morphism.name})', morphism.source, graded, images)


def gr_is_isomorphic_check(base_basis, candidate_basis, max_arity):
    """Compara as tabelas de dimensão; igualdade certifica ``candidato ↠ gr(base)`` como isomorfismo."""
    per_arity = []
    for n in range(1, max_arity + 1):
        expected = len(base_basis.normal_monomials(n))
        found = len(candidate_basis.normal_monomials(n))
        per_arity.append({'n': n, 'dim_base': expected, 'dim_candidate': found,
                          'verdict': 'match' if expected == found else f'excess {found - expected}'})
    return {
        'isomorphic_up_to': max_arity if all(row['verdict'] == 'match' for row in per_arity) else
        next(row['n'] for row in per_arity if row['verdict'] != 'match') - 1,
        'per_arity': per_arity,
    }


@dataclass
class GradedComparison:
    """Graduado associado de ``base`` com as bases de Gröbner dos dois lados até ``max_arity``."""

    base: ShufflePresentation
    max_arity: int
    ordering: str = None

    def __post_init__(self):
        self.filtered = FilteredPresentation(self.base)
        self.graded = associated_graded(self.filtered)
        ordering = self.ordering or preset_for(self.graded.generators)
        self.basis_base = buchberger(self.base, ordering, self.max_arity)
        self.basis_graded = buchberger(self.graded, ordering, self.max_arity)
        self.check = gr_is_isomorphic_check(self.basis_base, self.basis_graded, self.max_arity)

    def to_json(self):
        return {
            'presentation': self.graded.name,
            'relations': [r.to_string() for r in self.graded.relations],
            'quadratic_basis': self.basis_graded.quadratic,
            'dims_target': {str(n): d for n, d in self.basis_base.dims().items()},
            'dims_gr': {str(n): d for n, d in self.basis_graded.dims().items()},
            'check': self.check,
        }


class RightModule:
    """``N`` como módulo à direita sobre ``M`` via um morfismo shuffle ``phi``."""

    def __init__(self, morphism, basis_m, basis_n):
        self.morphism = morphism
        self.basis_m = basis_m
        self.basis_n = basis_n
        self.complete_to = min(basis_m.complete_to, basis_n.complete_to)
        self._images = {}
        self._quotients = {}

    @classmethod
    def build(cls, morphism, max_arity, ordering_m=None, ordering_n=None):
        source, target = morphism.source, morphism.target
        basis_m = buchberger(source, ordering_m or preset_for(source.generators), max_arity)
        basis_n = buchberger(target, ordering_n or preset_for(target.generators), max_arity)
        return cls(morphism, basis_m, basis_n)

    def _check(self, n):
        if n > self.complete_to:
            raise IncompleteBasisError(f'module data is complete to arity {self.complete_to}, arity {n} requested')

    def columns(self, n):
        self._check(n)
        return sorted(self.basis_n.normal_monomials(n), key=self.basis_n.key, reverse=True)

    def image(self, mu):
        """``phi(mu)`` para um monômio de ``M`` (termo no operad livre de ``N``)."""
        return self.morphism.image_of(mu, self._images)

    def act(self, term, generator, block):
        """Ação de um gerador shuffle de ``M`` ocupando o bloco ``block`` da aridade resultante."""
        n = term.arity + generator.arity - 1
        slot, blocks = slot_blocks(n, block)
        result = Term.zero(n)
        for nu, c in term.items():
            result = result + c * partial_compose(nu, slot, self.morphism.images[generator.name], blocks)
        return self.basis_n.reduce(result)

    def action_rows(self, n):
        rows = []
        for g in self.morphism.source.generators:
            k = n - g.arity + 1
            if k < 1:
                continue
            for nu in self.basis_n.normal_monomials(k):
                for block in combinations(range(1, n + 1), g.arity):
                    reduced = self.act(Term.monomial(nu), g, block)
                    if reduced:
                        rows.append(reduced)
        return rows

    def quotient(self, n):
        """``(dim X(n), representantes)``: monômios normais fora dos pivôs da imagem da ação."""
        if n not in self._quotients:
            columns = self.columns(n)
            rows = self.action_rows(n)
            _, pivots = linalg.rref(linalg.terms_to_rows(rows, columns), len(columns))
            pivots = set(pivots)
            representatives = [m for j, m in enumerate(columns) if j not in pivots]
            self._quotients[n] = representatives
            logger.debug('X(%d): dim N = %d, posto da ação = %d', n, len(columns), len(pivots))
        return len(self._quotients[n]), self._quotients[n]

    def generator_quotient(self, max_arity):
        return {n: self.quotient(n)[0] for n in range(1, max_arity + 1)}

    def free_model_basis(self, n):
        """Base de ``(X∘M)(n)``: ``(xi, blocos, mus)`` com ``xi`` representante de ``X(k)``."""
        for k in range(1, n + 1):
            _, representatives = self.quotient(k)
            if not representatives:
                continue
            for blocks in ordered_partitions(range(1, n + 1), k):
                pools = [self.basis_m.normal_monomials(len(block)) for block in blocks]
                for mus in product(*pools):
                    for xi in representatives:
                        yield xi, blocks, mus

    def evaluate(self, xi, blocks, mus):
        inners = [self.image(mu) for mu in mus]
        return compose_terms(Term.monomial(xi), inners, blocks)

    def check_action_associativity(self, n, samples=20, seed=0):
        """Agir duas vezes reduzindo no meio coincide com compor tudo e reduzir no fim."""
        rng = random.Random(seed)
        generators = list(self.morphism.source.generators)
        failures = []
        for _ in range(samples):
            g1, g2 = rng.choice(generators), rng.choice(generators)
            k = n - g1.arity - g2.arity + 2
            if k < 1:
                continue
            normals = self.basis_n.normal_monomials(k)
            nu = Term.monomial(rng.choice(normals))
            middle = k + g1.arity - 1
            block1 = tuple(sorted(rng.sample(range(1, middle + 1), g1.arity)))
            block2 = tuple(sorted(rng.sample(range(1, n + 1), g2.arity)))
            once = self.act(nu, g1, block1)
            twice = self.act(once, g2, block2)
            slot1, blocks1 = slot_blocks(middle, block1)
            raw = Term.zero(middle)
            for m, c in nu.items():
                raw = raw + c * partial_compose(m, slot1, self.morphism.images[g1.name], blocks1)
            slot2, blocks2 = slot_blocks(n, block2)
            free = Term.zero(n)
            for m, c in raw.items():
                free = free + c * partial_compose(m, slot2, self.morphism.images[g2.name], blocks2)
            if self.basis_n.reduce(free) != twice:
                failures.append((serialize(next(iter(nu))), g1.name, block1, g2.name, block2))
        return failures


def _render(node, fills):
    if is_leaf(node):
        return fills[node]
    return f'{node[0]}(' + ','.join(_render(child, fills) for child in node[1:]) + ')'


def render_composite(xi, blocks, mus):
    """Texto de ``xi∘(mu_1,...,mu_k)`` com as subárvores de ``M`` entre colchetes."""
    fills = {}
    for slot, (block, mu) in enumerate(zip(blocks, mus), start=1):
        if mu == IDENTITY:
            fills[slot] = str(block[0])
        else:
            relabeled = serialize(relabel(mu, {i + 1: label for i, label in enumerate(block)}))
            fills[slot] = f'[{relabeled}]'
    return _render(xi, fills)


def _format_combination(pairs):
    parts = []
    for i, (c, text) in enumerate(pairs):
        magnitude = abs(c)
        body = text if magnitude == 1 else f'{magnitude}*{text}'
        if i == 0:
            parts.append(body if c > 0 else f'-{body}')
        else:
            parts.append(f'{"+" if c > 0 else "-"} {body}')
    return ' '.join(parts)


@dataclass
class FreenessReport:
    max_arity: int
    free_up_to: int
    generator_dims: dict
    per_arity: list
    egf_generator_dims: dict = field(default_factory=dict)
    witness: dict = None
    via_associated_graded: bool = False

    @property
    def free(self):
        return self.free_up_to == self.max_arity

    @property
    def defect_arity(self):
        return next((row['n'] for row in self.per_arity if row['verdict'] != 'match'), None)

    def to_json(self):
        data = {
            'max_arity': self.max_arity,
            'free_up_to': self.free_up_to,
            'generator_dims': {str(n): d for n, d in self.generator_dims.items()},
            'per_arity': self.per_arity,
            'egf_generator_dims': {str(n): str(d) for n, d in self.egf_generator_dims.items()},
            'via_associated_graded': self.via_associated_graded,
        }
        if self.witness is not None:
            data['witness'] = self.witness
        return data


def find_witness(module, n):
    """Vetor do núcleo de ``(X∘M)(n) → N(n)``, escrito como combinação de composições."""
    columns = module.columns(n)
    index = {m: j for j, m in enumerate(columns)}
    basis, rows = [], []
    for xi, blocks, mus in module.free_model_basis(n):
        reduced = module.basis_n.reduce(module.evaluate(xi, blocks, mus))
        basis.append((xi, blocks, mus))
        rows.append({index[m]: c for m, c in reduced.items()})
    kernel = linalg.left_kernel(rows, len(columns))
    if not kernel:
        return None
    vector = min(kernel, key=len)
    pairs = []
    free = Term.zero(n)
    for i in sorted(vector):
        xi, blocks, mus = basis[i]
        pairs.append((vector[i], render_composite(xi, blocks, mus)))
        free = free + vector[i] * module.evaluate(xi, blocks, mus)
    return {
        'arity': n,
        'combination': _format_combination(pairs),
        'expanded': free.to_string(),
        'expanded_normal_form': module.basis_n.reduce(free).to_string(),
        'kernel_dimension': len(kernel),
    }


def freeness_check(module, max_arity, witness=True):
    generator_dims = module.generator_quotient(max_arity)
    m_dims = module.basis_m.dims(max_arity)
    n_dims = module.basis_n.dims(max_arity)
    model = egf_compose(egf_of(generator_dims, max_arity), egf_of(m_dims, max_arity)).dims()
    per_arity = []
    free_up_to = 0
    broken = False
    for n in range(1, max_arity + 1):
        expected = composite_dims(generator_dims, m_dims, n)
        if expected != model[n]:
            raise MathematicalFailure(f'composite count {expected} disagrees with the EGF value {model[n]} at arity {n}')
        if expected < n_dims[n]:
            raise MathematicalFailure(
                f'free model smaller than N at arity {n} ({expected} < {n_dims[n]}): the canonical map cannot be onto'
            )
        verdict = 'match' if expected == n_dims[n] else f'defect {expected - n_dims[n]}'
        per_arity.append({'n': n, 'dim_N': n_dims[n], 'dim_free_model': expected, 'verdict': verdict})
        if verdict == 'match' and not broken:
            free_up_to = n
        else:
            broken = True
        logger.info('Aridade %d: dim N = %d, dim X∘M = %d (%s)', n, n_dims[n], expected, verdict)
    report = FreenessReport(
        max_arity=max_arity,
        free_up_to=free_up_to,
        generator_dims=generator_dims,
        per_arity=per_arity,
        egf_generator_dims=egf_solve_left(egf_of(n_dims, max_arity), egf_of(m_dims, max_arity)).dims(),
    )
    if witness and report.defect_arity is not None:
        report.witness = find_witness(module, report.defect_arity)
    return report


def verify_morphism(morphism, basis):
    """Substitui as imagens nas relações da fonte e reduz módulo a base do alvo."""
    needed = morphism.source.max_relation_arity()
    if needed > basis.complete_to:
        raise IncompleteBasisError(f'target basis is complete to {basis.complete_to}, relations need arity {needed}')
    cache = {}
    failures = []
    for relation in morphism.source.relations:
        image = Term.zero(relation.arity)
        for m, c in relation.items():
            image = image + c * morphism.image_of(m, cache)
        normal = basis.reduce(image)
        if normal:
            failures.append({'relation': relation.to_string(), 'normal_form': normal.to_string(basis.key)})
    return {'valid': not failures, 'checked': len(morphism.source.relations), 'failures': failures[:10]}


@dataclass
class PBWAnalysis:
    """Encadeia shuffle, bases, graduado (opcional), liberdade e homologia de barra."""

    morphism: object
    max_arity: int
    use_gr: bool = False
    ordering: str = None
    report: dict = field(default_factory=dict)

    def run(self, bar=True):
        from .bar import bar_homology_table

        morphism = self.morphism
        data = {'morphism': morphism.name, 'max_arity': self.max_arity}
        if self.use_gr:
            if not morphism.target.has_weights:
                _, morphism = automatic_filtration(morphism)
                data['filtration'] = 'automatic'
            shuffled = morphism.shuffled()
            comparison = GradedComparison(shuffled.target, self.max_arity, self.ordering)
            data['morphism_check'] = verify_morphism(shuffled, comparison.basis_base)
            data['gr'] = comparison.to_json()
            graded_phi = graded_morphism(shuffled, comparison.filtered, comparison.graded)
            basis_source = buchberger(shuffled.source, preset_for(shuffled.source.generators), self.max_arity)
            module = RightModule(graded_phi, basis_source, comparison.basis_graded)
        else:
            shuffled = morphism.shuffled()
            module = RightModule.build(shuffled, self.max_arity, ordering_n=self.ordering)
            data['morphism_check'] = verify_morphism(shuffled, module.basis_n)
        if not data['morphism_check']['valid']:
            failure = data['morphism_check']['failures'][0]
            raise MorphismError(
                f"{morphism.name} is not well defined: {failure['relation']} maps to {failure['normal_form']}"
            )
        report = freeness_check(module, self.max_arity)
        report.via_associated_graded = self.use_gr
        if self.use_gr:
            isomorphic = data['gr']['check']['isomorphic_up_to']
            report.free_up_to = min(report.free_up_to, isomorphic)
        data['freeness'] = report.to_json()
        data['dims_M'] = {str(n): d for n, d in module.basis_m.dims().items()}
        data['dims_N'] = {str(n): d for n, d in module.basis_n.dims().items()}
        if bar:
            data['bar_homology'] = bar_homology_table(module, self.max_arity)
        self.report = data
        self.module = module
        self.freeness = report
        return data
