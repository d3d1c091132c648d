"""Bases de Gröbner de operads shuffle, completadas aridade a aridade.

A completação é feita por estágios: no estágio ``n`` entram as relações de aridade ``n``
e os S-polinômios de aridade ``n`` entre elementos de aridade menor; tudo é reduzido
módulo a base atual e escalonado, e as linhas escalonadas viram os novos elementos.
"""
import logging
import time
from itertools import combinations

from . import linalg
from .conf import limit
from .errors import IncompleteBasisError, MathematicalFailure, ResourceCapExceeded
from .orderings import BoundOrdering
from .trees import (
    Term, arity, divides, enumerate_monomials, match_at, rewrite, serialize, vertex_count,
    vertex_paths, vertices,
)

logger = logging.getLogger(__name__)


class GroebnerBasis:
    """Elementos mônicos, com o líder de cada um e a aridade até a qual a base é completa."""

    def __init__(self, presentation, ordering, elements=(), complete_to=1):
        self.presentation = presentation
        self.generators = list(presentation.generators)
        if not isinstance(ordering, BoundOrdering):
            ordering = BoundOrdering(ordering, self.generators)
        self.ordering = ordering
        self.elements = []
        self.leads = []
        self.by_root = {}
        self.complete_to = complete_to
        self._normal_forms = {}
        self._normal_monomials = {}
        self.add(elements)

    def __len__(self):
        return len(self.elements)

    def key(self, m):
        return self.ordering.key(m)

    def add(self, elements):
        for element in elements:
            element = element.monic(self.key)
            lead = element.leading(self.key)
            self.by_root.setdefault(lead[0], []).append(len(self.elements))
            self.elements.append(element)
            self.leads.append(lead)
        if len(self.elements) > limit('MAX_BASIS_ELEMENTS'):
            raise ResourceCapExceeded(
                f'Gröbner basis has {len(self.elements)} elements, above MAX_BASIS_ELEMENTS={limit("MAX_BASIS_ELEMENTS")}'
            )
        self._normal_forms.clear()
        self._normal_monomials.clear()

    def elements_of_arity(self, n):
        return [e for e, lead in zip(self.elements, self.leads) if arity(lead) == n]

    # -- divisão -----------------------------------------------------------------

    def first_divisor(self, m):
        """Primeira ocorrência (pré-ordem, depois ordem de inserção) de um líder em ``m``."""
        for path, node in vertices(m):
            for index in self.by_root.get(node[0], ()):
                embedding = match_at(self.leads[index], m, path)
                if embedding is not None:
                    return index, embedding
        return None

    def all_divisors(self, m):
        found = []
        for index, lead in enumerate(self.leads):
            found.extend((index, embedding) for embedding in divides(lead, m))
        return found

    def is_normal(self, m):
        return self.first_divisor(m) is None

    def _step(self, m, index, embedding):
        element = self.elements[index]
        tail = element - Term.monomial(self.leads[index])
        return rewrite(m, embedding, -tail)

    def normal_form_monomial(self, m):
        cached = self._normal_forms.get(m)
        if cached is not None:
            return cached
        max_steps = limit('REDUCTION_STEPS')
        work = {m: 1}
        result = {}
        steps = 0
        while work:
            current = max(work, key=self.key)
            coeff = work.pop(current)
            if not coeff:
                continue
            known = self._normal_forms.get(current)
            if known is not None:
                for u, c in known.items():
                    result[u] = result.get(u, 0) + coeff * c
                continue
            found = self.first_divisor(current)
            if found is None:
                result[current] = result.get(current, 0) + coeff
                continue
            steps += 1
            if steps > max_steps:
                raise MathematicalFailure(f'reduction of {serialize(m)} exceeded {max_steps} steps')
            for u, c in self._step(current, *found).items():
                work[u] = work.get(u, 0) + coeff * c
        normal = Term(result, arity(m))
        self._normal_forms[m] = normal
        return normal

    def reduce(self, term, rng=None):
        """Forma normal de ``term``; com ``rng`` os sítios de redução são sorteados."""
        if rng is not None:
            return self._reduce_randomly(term, rng)
        result = Term.zero(term.arity)
        for m, c in term.items():
            result = result + c * self.normal_form_monomial(m)
        return result

    def _reduce_randomly(self, term, rng):
        max_steps = limit('REDUCTION_STEPS')
        work = term.as_dict()
        result = {}
        steps = 0
        while work:
            current = rng.choice(sorted(work, key=serialize))
            coeff = work.pop(current)
            divisors = self.all_divisors(current)
            if not divisors:
                result[current] = result.get(current, 0) + coeff
                continue
            steps += 1
            if steps > max_steps:
                raise MathematicalFailure('randomized reduction exceeded REDUCTION_STEPS')
            index, embedding = rng.choice(divisors)
            for u, c in self._step(current, index, embedding).items():
                value = work.get(u, 0) + coeff * c
                if value:
                    work[u] = value
                else:
                    work.pop(u, None)
        return Term(result, term.arity)

    # -- monômios normais ---------------------------------------------------------

    def _root_normal(self, m):
        return all(match_at(self.leads[i], m, ()) is None for i in self.by_root.get(m[0], ()))

    def normal_monomials(self, n):
        if n > self.complete_to:
            raise IncompleteBasisError(f'basis is complete to arity {self.complete_to}, arity {n} requested')
        if n not in self._normal_monomials:
            self._normal_monomials[n] = enumerate_monomials(self.generators, n, accept=self._root_normal)
        return self._normal_monomials[n]

    def dims(self, up_to=None):
        up_to = self.complete_to if up_to is None else up_to
        return {n: len(self.normal_monomials(n)) for n in range(1, up_to + 1)}

    # -- relatório -------------------------------------------------------------------

    @property
    def quadratic(self):
        return all(vertex_count(m) == 2 for e in self.elements for m in e)

    @property
    def koszul(self):
        """Base quadrática de uma apresentação quadrática (certificado até ``complete_to``)."""
        return self.quadratic and self.presentation_quadratic

    @property
    def presentation_quadratic(self):
        return all(vertex_count(m) == 2 for r in self.presentation.relations for m in r)

    def to_json(self, dims=True):
        data = {
            'ordering': str(self.ordering),
            'complete_to': self.complete_to,
            'quadratic': self.quadratic,
            'elements': [
                {'lead': serialize(lead), 'term': element.to_string(self.key)}
                for element, lead in sorted(zip(self.elements, self.leads), key=lambda pair: (arity(pair[1]), self.key(pair[1])))
            ],
        }
        if dims:
            data['dims'] = {str(n): d for n, d in self.dims().items()}
        if self.presentation_quadratic:
            data['koszul'] = self.koszul
            data['koszul_up_to'] = self.complete_to
        return data


def reduce(term, basis, rng=None):
    return basis.reduce(term, rng=rng)


def _lead_generators(basis):
    names = {node[0] for lead in basis.leads for _, node in vertices(lead)}
    return [g for g in basis.generators if g.name in names]


def max_overlap_arity(basis):
    """Duas ocorrências com um vértice comum cobrem no máximo ``a + b - 2`` folhas."""
    return 2 * max((arity(lead) for lead in basis.leads), default=1) - 2


def critical_pairs(basis, n):
    """S-polinômios de aridade ``n`` vindos de ocorrências sobrepostas de dois líderes.

    Só contam os monômios ``m`` cobertos pela união das duas ocorrências; a sobreposição
    precisa de ao menos um vértice em comum.
    """
    if not basis.leads or n > max_overlap_arity(basis):
        return []
    generators = _lead_generators(basis)
    pairs = []
    for m in enumerate_monomials(generators, n):
        embeddings = basis.all_divisors(m)
        if len(embeddings) < 2:
            continue
        paths = vertex_paths(m)
        for (i, e1), (j, e2) in combinations(embeddings, 2):
            if not (e1.covered & e2.covered) or (e1.covered | e2.covered) != paths:
                continue
            s = rewrite(m, e1, basis.elements[i]) - rewrite(m, e2, basis.elements[j])
            if s:
                pairs.append(s)
    logger.debug('Aridade %d: %d S-polinômios', n, len(pairs))
    return pairs


def buchberger(presentation, ordering, max_arity):
    """Completa a base até ``max_arity``; determinística dado (apresentação, ordem, aridade)."""
    if max_arity > limit('MAX_ARITY'):
        raise ResourceCapExceeded(f'arity {max_arity} exceeds MAX_ARITY={limit("MAX_ARITY")}')
    started = time.monotonic()
    basis = GroebnerBasis(presentation, ordering)
    for n in range(2, max_arity + 1):
        candidates = presentation.relations_of_arity(n) + critical_pairs(basis, n)
        reduced = [basis.reduce(t) for t in candidates]
        new = linalg.echelon_terms(reduced, key=basis.key)
        basis.add(new)
        basis.complete_to = n
        logger.info('Aridade %d: %d candidatos, %d novos elementos (total %d)',
                    n, len(candidates), len(new), len(basis))
    basis.complete_to = max(max_arity, 1)
    logger.info('Base de %s completa até %d em %.2fs', presentation.name, basis.complete_to,
                time.monotonic() - started)
    return basis


def normal_monomials(basis, n):
    return basis.normal_monomials(n)
