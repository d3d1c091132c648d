"""Álgebras graduadas nilpotentes, avaliação de operads e envelopes (imagem direta).

Um elemento de ``N(V)`` é escrito como ``nu(b_1, ..., b_n)`` com ``nu`` monômio normal de
``N(n)`` e ``b_i`` elementos da base de ``V``. Reordenando as entradas para que a
sequência ``b`` fique crescente chegamos às coordenadas ``(conteúdo, nu')``; os
coinvariantes do subgrupo de Young do conteúdo completam a identificação.
"""
import logging
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial

from . import linalg
from .conf import limit
from .errors import MathematicalFailure, MorphismError, PresentationError, ResourceCapExceeded
from .presentation import Symmetry, act
from .trees import Term, is_leaf, partial_compose, slot_blocks

logger = logging.getLogger(__name__)


class GradedAlgebra:
    """Álgebra sobre um operad simétrico, com base graduada por pesos >= 1."""

    def __init__(self, name, operad, basis, products=None):
        self.name = name
        self.operad = operad
        self.names = [element for element, _ in basis]
        self.weights = [weight for _, weight in basis]
        if any(w < 1 for w in self.weights):
            raise PresentationError(f'algebra {name}: basis weights must be at least 1')
        self.index = {element: i for i, element in enumerate(self.names)}
        self.table = {}
        for (generator, arguments), value in (products or {}).items():
            self._store(generator, tuple(self.index[a] for a in arguments),
                        {self.index[e]: Fraction(c) for e, c in value.items() if c})

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.name, spec.operad, spec.basis, spec.products)

    def _store(self, generator, arguments, value):
        spec = self.operad.specs[generator]
        expected = sum(self.weights[a] for a in arguments)
        for e in value:
            if self.weights[e] != expected:
                raise MathematicalFailure(
                    f'algebra {self.name}: gamma({generator}; ...) does not preserve weight'
                )
        entries = [(arguments, value)]
        if spec.symmetry == Symmetry.SYMMETRIC:
            entries.append((arguments[::-1], value))
        elif spec.symmetry == Symmetry.ANTISYMMETRIC:
            if arguments[0] == arguments[1] and value:
                raise MathematicalFailure(f'algebra {self.name}: antisymmetric {generator} must vanish on equal arguments')
            entries.append((arguments[::-1], {e: -c for e, c in value.items()}))
        for args, val in entries:
            known = self.table.get((generator, args))
            if known is not None and known != val:
                raise MathematicalFailure(f'algebra {self.name}: inconsistent values for {generator}{args}')
            self.table[(generator, args)] = val

    @property
    def dims(self):
        out = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return dict(sorted(out.items()))

    def gamma(self, generator, arguments):
        return self.table.get((generator, tuple(arguments)), {})

    def evaluate_tree(self, tree, filling):
        """Valor de uma árvore simétrica com a folha ``i`` trocada por ``filling[i-1]``."""
        if is_leaf(tree):
            return {filling[tree - 1]: Fraction(1)}
        children = [self.evaluate_tree(child, filling) for child in tree[1:]]
        out = {}
        for combo in product(*(list(c.items()) for c in children)):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            for e, c in self.gamma(tree[0], [e for e, _ in combo]).items():
                out[e] = out.get(e, 0) + coeff * c
        return {e: c for e, c in out.items() if c}

    def check(self, max_weight=None):
        """Verifica as relações do operad em todas as entradas de peso total <= ``max_weight``."""
        max_weight = max_weight or max(self.weights, default=0)
        for relation in self.operad.relations:
            n = relation.arity
            for filling in fillings(self.weights, n, max_weight):
                value = {}
                for tree, c in relation.items():
                    for e, v in self.evaluate_tree(tree, filling).items():
                        value[e] = value.get(e, 0) + c * v
                if any(value.values()):
                    names = ', '.join(self.names[i] for i in filling)
                    raise MathematicalFailure(
                        f'algebra {self.name} violates {relation.to_string(variable_prefix="a")} on ({names})'
                    )
        return True


def fillings(weights, length, max_weight, exact=None):
    """Tuplas de índices da base com peso total <= ``max_weight`` (ou == ``exact``)."""
    bound = exact if exact is not None else max_weight

    def extend(prefix, total):
        if len(prefix) == length:
            if exact is None or total == exact:
                yield tuple(prefix)
            return
        remaining = length - len(prefix) - 1
        for i, w in enumerate(weights):
            if total + w + remaining * min(weights) <= bound:
                yield from extend(prefix + [i], total + w)

    if not weights or length < 1:
        return
    yield from extend([], 0)


def contents(weights, max_weight):
    """Multiconjuntos de índices (tuplas ordenadas) de peso total <= ``max_weight``."""
    if not weights:
        return
    longest = max_weight // min(weights)
    for n in range(1, longest + 1):
        for content in combinations_with_replacement(range(len(weights)), n):
            if sum(weights[i] for i in content) <= max_weight:
                yield content


def pattern(content):
    runs = []
    for i, e in enumerate(content):
        if i and content[i - 1] == e:
            runs[-1] += 1
        else:
            runs.append(1)
    return tuple(runs)


def _check_weight(max_weight):
    if max_weight > limit('MAX_WEIGHT'):
        raise ResourceCapExceeded(f'weight bound {max_weight} exceeds MAX_WEIGHT={limit("MAX_WEIGHT")}')


def _weights_of(space):
    if isinstance(space, dict):
        return [w for w, count in sorted(space.items()) for _ in range(count)]
    return list(space)


class Evaluator:
    """Ação de ``S_n`` nos monômios normais de uma base de Gröbner e coinvariantes de Young."""

    def __init__(self, basis):
        self.basis = basis
        self._actions = {}
        self._coinvariants = {}

    def columns(self, n):
        return sorted(self.basis.normal_monomials(n), key=self.basis.key, reverse=True)

    def act(self, nu, permutation):
        """``permutation[i]`` é o novo rótulo da folha ``i + 1``."""
        key = (nu, permutation)
        if key not in self._actions:
            mapping = {i + 1: p for i, p in enumerate(permutation)}
            self._actions[key] = self.basis.reduce(act(nu, mapping, self.basis.presentation))
        return self._actions[key]

    def young_rows(self, runs):
        """Linhas ``tau·nu - nu`` para as transposições vizinhas dentro de cada bloco."""
        n = sum(runs)
        rows = []
        start = 0
        for size in runs:
            for i in range(start, start + size - 1):
                swap = list(range(1, n + 1))
                swap[i], swap[i + 1] = swap[i + 1], swap[i]
                for nu in self.basis.normal_monomials(n):
                    row = self.act(nu, tuple(swap)) - Term.monomial(nu)
                    if row:
                        rows.append(row)
            start += size
        return rows

    def coinvariant_dim(self, runs, extra_rows=(), tag=None):
        """``extra_rows`` depende só da aridade; ``tag`` separa as entradas do cache."""
        key = (runs, tag)
        if key not in self._coinvariants:
            n = sum(runs)
            columns = self.columns(n)
            rows = self.young_rows(runs) + list(extra_rows)
            self._coinvariants[key] = len(columns) - linalg.rank(linalg.terms_to_rows(rows, columns), len(columns))
        return self._coinvariants[key]


def evaluate(basis, space, max_weight):
    """Dimensões de ``N(V)`` por peso, ``1..max_weight``."""
    _check_weight(max_weight)
    weights = _weights_of(space)
    evaluator = Evaluator(basis)
    dims = {w: 0 for w in range(1, max_weight + 1)}
    for content in contents(weights, max_weight):
        w = sum(weights[i] for i in content)
        dims[w] += evaluator.coinvariant_dim(pattern(content))
    return dims


def evaluate_generators(module, space, max_weight):
    """Dimensões de ``X(V)`` com ``X(n) = N(n) / imagem da ação de M̄``."""
    _check_weight(max_weight)
    weights = _weights_of(space)
    evaluator = Evaluator(module.basis_n)
    action = {}
    dims = {w: 0 for w in range(1, max_weight + 1)}
    for content in contents(weights, max_weight):
        n = len(content)
        if n not in action:
            action[n] = module.action_rows(n)
        w = sum(weights[i] for i in content)
        dims[w] += evaluator.coinvariant_dim(pattern(content), action[n], tag='generators')
    return dims


def regular_evaluation(operad_dims, dimension, max_weight):
    """Especialização da EGF para ``V`` concentrado no peso 1 (válida se ``N(n)`` é livre sobre ``S_n``)."""
    out = {}
    for w in range(1, max_weight + 1):
        value = Fraction(operad_dims.get(w, 0), factorial(w)) * dimension ** w
        out[w] = int(value) if value.denominator == 1 else value
    return out


class DirectImage:
    """Coequalizador de ``N(M(A)) ⇉ N(A)`` peso a peso."""

    def __init__(self, module, algebra):
        self.module = module
        self.algebra = algebra
        self.evaluator = Evaluator(module.basis_n)
        self.generators = list(algebra.operad.generators)

    def _coords(self, term, filling, index):
        order = sorted(range(len(filling)), key=lambda i: filling[i])
        permutation = [0] * len(filling)
        for r, i in enumerate(order):
            permutation[i] = r + 1
        content = tuple(filling[i] for i in order)
        out = {}
        for nu, c in term.items():
            for u, c2 in self.evaluator.act(nu, tuple(permutation)).items():
                j = index[(content, u)]
                out[j] = out.get(j, 0) + c * c2
        return out

    def _columns(self, weight):
        weights = self.algebra.weights
        columns = []
        for content in contents(weights, weight):
            if sum(weights[i] for i in content) == weight:
                columns.extend((content, u) for u in self.evaluator.columns(len(content)))
        return columns

    def _coequalizer_rows(self, weight, index):
        weights = self.algebra.weights
        images = self.module.morphism.images
        longest = weight // min(weights)
        for g in self.generators:
            a = g.arity
            for k in range(1, longest - a + 2):
                total = k + a - 1
                for nu in self.module.basis_n.normal_monomials(k):
                    for j in range(1, k + 1):
                        slot, blocks = slot_blocks(total, (j,) + tuple(range(k + 1, total + 1)))
                        composite = self.module.basis_n.reduce(partial_compose(nu, slot, images[g.name], blocks))
                        for filling in fillings(weights, total, weight, exact=weight):
                            row = self._coords(composite, filling, index)
                            arguments = (filling[j - 1],) + filling[k:]
                            for e, c in self.algebra.gamma(g.name, arguments).items():
                                outer = filling[:j - 1] + (e,) + filling[j:k]
                                for i, v in self._coords(Term.monomial(nu), outer, index).items():
                                    row[i] = row.get(i, 0) - c * v
                            row = {i: v for i, v in row.items() if v}
                            if row:
                                yield row

    def _young_rows(self, weight, index):
        weights = self.algebra.weights
        for content in contents(weights, weight):
            if sum(weights[i] for i in content) != weight:
                continue
            for row in self.evaluator.young_rows(pattern(content)):
                yield {index[(content, u)]: c for u, c in row.items()}

    def dims(self, max_weight):
        _check_weight(max_weight)
        out = {}
        for w in range(1, max_weight + 1):
            columns = self._columns(w)
            index = {column: j for j, column in enumerate(columns)}
            rows = list(self._young_rows(w, index)) + list(self._coequalizer_rows(w, index))
            out[w] = len(columns) - linalg.rank(rows, len(columns))
            logger.debug('Peso %d: dim N(A) = %d, quociente = %d', w, len(columns), out[w])
        return out


def direct_image(module, algebra, max_weight):
    """Dimensões de ``phi_!(A)`` por peso; ``A`` precisa ser nilpotente de peso <= ``max_weight``."""
    origins = {g.origin for g in module.morphism.source.generators}
    if set(algebra.operad.specs) != origins:
        raise MorphismError(f'algebra {algebra.name} is not over the source of {module.morphism.name}')
    algebra.check(max_weight)
    return DirectImage(module, algebra).dims(max_weight)
