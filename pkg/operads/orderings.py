"""Ordens admissíveis em monômios de mesma aridade.

Uma ordem é uma pilha de camadas; cada camada produz uma chave e a comparação é
lexicográfica nas chaves, com a serialização canônica como desempate final.
Texto de uma ordem: camadas separadas por ``;``, por exemplo
``weightfirst:circ=1;pathlex:dot<dotbar<circbar<circ``.
"""
import logging
import random
from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations

from .errors import InvalidMonomialError, OrderingError
from .trees import (
    arity, compose, enumerate_monomials, is_leaf, leaves, serialize, slot_blocks, vertices,
)

logger = logging.getLogger(__name__)

PRESETS = {
    'pathlex': 'pathlex',
    'weightfirst': 'weightfirst;pathlex',
    'prepoisson': 'pathclass:circ,circbar;pathlex:dot<dotbar<circbar<circ',
}

LAYER_KINDS = ('weightfirst', 'rootclass', 'pathclass', 'pathlex')


class Comparison(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class OrderingSpec:
    text: str
    layers: tuple = field(default_factory=tuple)

    def __str__(self):
        return self.text


def parse_ordering(text):
    """Lê um preset ou uma lista de camadas."""
    text = (text or 'pathlex').strip()
    expanded = PRESETS.get(text, text)
    layers = []
    for chunk in expanded.split(';'):
        chunk = chunk.strip()
        if not chunk:
            continue
        kind, _, argument = chunk.partition(':')
        kind = kind.strip()
        if kind not in LAYER_KINDS:
            raise OrderingError(f"unknown ordering layer '{kind}'")
        layers.append((kind, argument.strip()))
    if not layers:
        raise OrderingError('empty ordering')
    if not any(kind == 'pathlex' for kind, _ in layers):
        layers.append(('pathlex', ''))
    return OrderingSpec(text=text, layers=tuple(layers))


def _names(argument, known):
    names = [name.strip() for name in argument.replace('<', ',').split(',') if name.strip()]
    for name in names:
        if name not in known:
            raise OrderingError(f"ordering mentions unknown generator '{name}'")
    return names


def _ranks(order, declared):
    ranks = {name: i for i, name in enumerate(order)}
    for name in declared:
        if name not in ranks:
            ranks[name] = len(ranks)
    return ranks


def _path_words(m):
    words = {}

    def walk(node, word):
        if is_leaf(node):
            words[node] = word
            return
        for child in node[1:]:
            walk(child, word + (node[0],))

    walk(m, ())
    return words


class WeightLayer:
    def __init__(self, argument, generators):
        self.weights = {g.name: g.weight for g in generators}
        for item in filter(None, (part.strip() for part in argument.split(','))):
            name, _, value = item.partition('=')
            if name.strip() not in self.weights:
                raise OrderingError(f"ordering mentions unknown generator '{name.strip()}'")
            try:
                self.weights[name.strip()] = int(value)
            except ValueError:
                raise OrderingError(f"bad weight in '{item}'")

    def key(self, m):
        return sum(self.weights[node[0]] for _, node in vertices(m))


class RootClassLayer:
    """Classe do gerador da raiz. Não é monótona sob composição."""

    def __init__(self, argument, generators):
        declared = [g.name for g in generators]
        self.rank = {}
        for position, group in enumerate(argument.split('<')):
            for name in _names(group, declared):
                self.rank[name] = position

    def key(self, m):
        return self.rank.get(m[0], -1) if not is_leaf(m) else -1


class PathClassLayer:
    """Para cada folha (em ordem de rótulo), quantos vértices da classe há no caminho até a raiz."""

    def __init__(self, argument, generators):
        self.members = frozenset(_names(argument, [g.name for g in generators]))

    def key(self, m):
        words = _path_words(m)
        return tuple(sum(1 for name in words[label] if name in self.members) for label in sorted(words))


class PathLexLayer:
    """Ordem path-lexicográfica: palavras dos caminhos em deg-lex, depois a permutação das folhas."""

    def __init__(self, argument, generators):
        declared = [g.name for g in generators]
        self.rank = _ranks(_names(argument, declared), declared)

    def key(self, m):
        words = _path_words(m)
        paths = tuple(
            (len(words[label]), tuple(self.rank[name] for name in words[label]))
            for label in sorted(words)
        )
        return paths, tuple(-label for label in leaves(m))


LAYERS = {
    'weightfirst': WeightLayer,
    'rootclass': RootClassLayer,
    'pathclass': PathClassLayer,
    'pathlex': PathLexLayer,
}


class BoundOrdering:
    """Ordem ligada a um conjunto de geradores, com cache de chaves."""

    def __init__(self, spec, generators):
        if isinstance(spec, str):
            spec = parse_ordering(spec)
        self.spec = spec
        self.generators = list(generators)
        self.layers = [LAYERS[kind](argument, self.generators) for kind, argument in spec.layers]
        self._cache = {}

    def __str__(self):
        return self.spec.text

    def key(self, m):
        cached = self._cache.get(m)
        if cached is None:
            cached = tuple(layer.key(m) for layer in self.layers) + (serialize(m),)
            self._cache[m] = cached
        return cached

    def compare(self, m1, m2):
        if arity(m1) != arity(m2):
            raise OrderingError('cannot compare monomials of different arities')
        k1, k2 = self.key(m1), self.key(m2)
        if k1 < k2:
            return Comparison.LESS
        if k1 > k2:
            return Comparison.GREATER
        return Comparison.EQUAL


def bind(spec, generators):
    return BoundOrdering(spec, generators)


def compare(ordering, m1, m2):
    return ordering.compare(m1, m2)


@dataclass
class AdmissibilityReport:
    ordering: str
    trials: int
    exhaustive_pairs: int = 0
    violations: list = field(default_factory=list)

    @property
    def clean(self):
        return not self.violations

    def to_json(self):
        return {
            'ordering': self.ordering,
            'trials': self.trials,
            'exhaustive_pairs': self.exhaustive_pairs,
            'violations': [[serialize(a), serialize(b), serialize(ca), serialize(cb)]
                           for a, b, ca, cb in self.violations[:20]],
            'violation_count': len(self.violations),
        }


def _random_blocks(rng, sizes):
    remaining = list(range(1, sum(sizes) + 1))
    blocks = []
    for size in sizes:
        first = remaining.pop(0)
        others = rng.sample(remaining, size - 1)
        for label in others:
            remaining.remove(label)
        blocks.append((first,) + tuple(sorted(others)))
    return blocks


def _elementary_contexts(m, generators):
    """Composições com um único gerador acima ou abaixo de ``m``."""
    n = arity(m)
    for g in generators:
        k = g.arity
        corolla = (g.name,) + tuple(range(1, k + 1))
        total = n + k - 1
        # m abaixo do gerador
        for block in combinations(range(1, total + 1), n):
            slot, blocks = slot_blocks(total, block)
            yield lambda x, slot=slot, blocks=blocks: compose(
                corolla, [x if i == slot - 1 else 1 for i in range(k)], blocks
            )
        # gerador abaixo de m
        for block in combinations(range(1, total + 1), k):
            slot, blocks = slot_blocks(total, block)
            yield lambda x, slot=slot, blocks=blocks: compose(
                x, [corolla if i == slot - 1 else 1 for i in range(n)], blocks
            )


def _random_context(rng, m, pools, generators):
    """Composição aleatória com ``m`` como entrada interna ou como raiz."""
    n = arity(m)
    if rng.random() < 0.5:
        g = rng.choice(generators)
        corolla = (g.name,) + tuple(range(1, g.arity + 1))
        outer = rng.choice([corolla] + [o for ms in pools.values() for o in ms[:50]])
        slots = arity(outer)
        total = slots + n - 1
        block = rng.sample(range(1, total + 1), n)
        slot, blocks = slot_blocks(total, block)
        return lambda x: compose(outer, [x if i == slot - 1 else 1 for i in range(slots)], blocks)
    sizes = [rng.choice([1, 1, 2, 3]) for _ in range(n)]
    sizes = [size if size in pools or size == 1 else 1 for size in sizes]
    inners = [1 if size == 1 else rng.choice(pools[size]) for size in sizes]
    blocks = _random_blocks(rng, sizes)
    return lambda x: compose(x, inners, blocks)


def check_admissibility(ordering, generators, trials=None, seed=0, exhaustive=True, max_arity=3):
    """Procura contextos em que ``m1 < m2`` mas ``contexto(m1) >= contexto(m2)``.

    Amostragem aleatória mais, opcionalmente, todos os pares de aridade <= ``max_arity``
    em todos os contextos elementares. Relatório limpo é evidência, não prova.
    """
    from .conf import limit

    if not isinstance(ordering, BoundOrdering):
        ordering = BoundOrdering(ordering, generators)
    trials = limit('ADMISSIBILITY_TRIALS') if trials is None else trials
    generators = list(generators)
    pools = {a: enumerate_monomials(generators, a) for a in range(2, max_arity + 1)}
    pools = {a: ms for a, ms in pools.items() if ms}
    report = AdmissibilityReport(ordering=str(ordering), trials=trials)

    def record(m1, m2, context):
        try:
            c1, c2 = context(m1), context(m2)
        except InvalidMonomialError:
            return
        if ordering.key(c1) >= ordering.key(c2):
            report.violations.append((m1, m2, c1, c2))

    rng = random.Random(seed)
    arities = sorted(pools)
    for _ in range(trials):
        if not arities:
            break
        a = rng.choice(arities)
        if len(pools[a]) < 2:
            continue
        m1, m2 = rng.sample(pools[a], 2)
        if ordering.key(m1) > ordering.key(m2):
            m1, m2 = m2, m1
        record(m1, m2, _random_context(rng, m1, pools, generators))

    if exhaustive:
        for a in arities:
            ranked = sorted(pools[a], key=ordering.key)
            for i, j in combinations(range(len(ranked)), 2):
                m1, m2 = ranked[i], ranked[j]
                report.exhaustive_pairs += 1
                for context in _elementary_contexts(m1, generators):
                    record(m1, m2, context)
    logger.info('Admissibilidade de %s: %d violações', ordering, len(report.violations))
    return report


def preset_for(generators):
    """Preset padrão para um conjunto de geradores shuffle."""
    from .conf import limit

    names = {g.name for g in generators}
    if {'circ', 'circbar', 'dot', 'dotbar'} <= names:
        return 'prepoisson'
    return limit('DEFAULT_ORDERING')
