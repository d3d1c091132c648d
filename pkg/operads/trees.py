"""Operad shuffle livre: monômios em árvore, termos, composição e divisibilidade.

Um monômio é uma tupla aninhada: folha é o rótulo inteiro, vértice é
``(gerador, filho_1, ..., filho_k)``. A identidade de aridade 1 é a folha ``1``.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from sympy.utilities.iterables import multiset_partitions

from .conf import limit
from .errors import InvalidMonomialError, ResourceCapExceeded

logger = logging.getLogger(__name__)

IDENTITY = 1


def is_leaf(m):
    return isinstance(m, int)


@lru_cache(maxsize=None)
def leaves(m):
    """Rótulos das folhas na ordem planar."""
    if is_leaf(m):
        return (m,)
    out = ()
    for child in m[1:]:
        out += leaves(child)
    return out


def arity(m):
    return len(leaves(m))


@lru_cache(maxsize=None)
def min_leaf(m):
    if is_leaf(m):
        return m
    return min(min_leaf(child) for child in m[1:])


def vertices(m, path=()):
    """Percorre os vértices internos em pré-ordem, devolvendo ``(caminho, subárvore)``."""
    if is_leaf(m):
        return
    yield path, m
    for i, child in enumerate(m[1:]):
        yield from vertices(child, path + (i,))


def vertex_paths(m):
    return frozenset(path for path, _ in vertices(m))


def vertex_count(m):
    return sum(1 for _ in vertices(m))


def generator_names(m):
    return [node[0] for _, node in vertices(m)]


def serialize(m, variable_prefix=''):
    if is_leaf(m):
        return f'{variable_prefix}{m}'
    inner = ','.join(serialize(child, variable_prefix) for child in m[1:])
    return f'{m[0]}({inner})'


def shape_key(m):
    """Chave determinística: palavra de geradores da forma e depois a palavra de rótulos."""
    def shape(node):
        if is_leaf(node):
            return '_'
        return node[0] + '(' + ','.join(shape(child) for child in node[1:]) + ')'
    return shape(m), leaves(m)


def relabel(m, mapping):
    """Troca cada rótulo ``l`` por ``mapping[l]``."""
    if is_leaf(m):
        return mapping[m]
    return (m[0],) + tuple(relabel(child, mapping) for child in m[1:])


def substitute(m, replacements):
    """Troca a folha ``l`` pela subárvore ``replacements[l]`` (quando presente)."""
    if is_leaf(m):
        return replacements.get(m, m)
    return (m[0],) + tuple(substitute(child, replacements) for child in m[1:])


def standardize(m):
    labels = sorted(leaves(m))
    return relabel(m, {label: i + 1 for i, label in enumerate(labels)}), tuple(labels)


def is_shuffle(m):
    labels = leaves(m)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        return False
    return _local_minima_ok(m)


def _local_minima_ok(m):
    if is_leaf(m):
        return True
    minima = [min_leaf(child) for child in m[1:]]
    if any(a >= b for a, b in zip(minima, minima[1:])):
        return False
    return all(_local_minima_ok(child) for child in m[1:])


def make_monomial(shape, labels, arities=None):
    """Preenche as folhas ``None`` de ``shape`` com ``labels`` na ordem planar.

    ``arities`` (nome -> aridade) é opcional; quando dado, confere o número de filhos.
    """
    labels = list(labels)
    position = iter(labels)

    def fill(node):
        if node is None:
            try:
                return next(position)
            except StopIteration:
                raise InvalidMonomialError('not enough labels for the shape')
        name, *children = node
        if arities is not None and arities.get(name) != len(children):
            raise InvalidMonomialError(
                f"arity mismatch for '{name}': expected {arities.get(name)}, got {len(children)}"
            )
        return (name,) + tuple(fill(child) for child in children)

    m = fill(shape)
    if next(position, None) is not None:
        raise InvalidMonomialError('too many labels for the shape')
    if not is_shuffle(m):
        raise InvalidMonomialError(f'labels {tuple(labels)} violate the local minima condition')
    return m


def graft(m, path, replacement):
    """Substitui a subárvore no ``path`` por ``replacement``."""
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    children = list(m[1:])
    children[head] = graft(children[head], rest, replacement)
    return (m[0],) + tuple(children)


def subtree(m, path):
    for i in path:
        m = m[1 + i]
    return m


def check_blocks(blocks, sizes):
    flat = sorted(label for block in blocks for label in block)
    if flat != list(range(1, len(flat) + 1)):
        raise InvalidMonomialError('blocks must partition 1..n')
    minima = [min(block) for block in blocks]
    if any(a >= b for a, b in zip(minima, minima[1:])):
        raise InvalidMonomialError('block minima must increase')
    if [len(block) for block in blocks] != list(sizes):
        raise InvalidMonomialError('block sizes must match the inner arities')


def compose(outer, inners, blocks, check=True):
    """Composição shuffle: enxerta ``inners[j]`` na folha ``j+1`` de ``outer``.

    As folhas de ``inners[j]`` são renomeadas pelos elementos de ``blocks[j]`` em ordem crescente.
    """
    if len(inners) != arity(outer):
        raise InvalidMonomialError('one inner monomial per slot is required')
    blocks = [tuple(sorted(block)) for block in blocks]
    if check:
        check_blocks(blocks, [arity(inner) for inner in inners])
    replacements = {}
    for slot, (inner, block) in enumerate(zip(inners, blocks), start=1):
        replacements[slot] = relabel(inner, {i + 1: label for i, label in enumerate(block)})
    return substitute(outer, replacements)


def ordered_partitions(labels, k):
    """Partições de ``labels`` em ``k`` blocos, ordenados pelos mínimos."""
    labels = list(labels)
    if k == len(labels):
        yield [(label,) for label in labels]
        return
    for partition in multiset_partitions(labels, k):
        yield sorted((tuple(sorted(block)) for block in partition), key=min)


def slot_blocks(n, block):
    """Blocos da composição parcial em que ``block`` ocupa uma única entrada.

    Devolve ``(slot, blocks)``; as demais entradas recebem singletons.
    """
    block = tuple(sorted(block))
    rest = [label for label in range(1, n + 1) if label not in block]
    slot = 1 + sum(1 for label in rest if label < block[0])
    blocks = [(label,) for label in rest]
    blocks.insert(slot - 1, block)
    return slot, blocks


class Embedding(NamedTuple):
    path: tuple
    covered: frozenset
    hanging: tuple


def _match(pattern, node, path, hanging, covered):
    if is_leaf(pattern):
        hanging[pattern] = node
        return True
    if is_leaf(node) or node[0] != pattern[0] or len(node) != len(pattern):
        return False
    covered.append(path)
    for i, (p_child, n_child) in enumerate(zip(pattern[1:], node[1:])):
        if not _match(p_child, n_child, path + (i,), hanging, covered):
            return False
    return True


def match_at(divisor, m, path):
    node = subtree(m, path)
    hanging, covered = {}, []
    if not _match(divisor, node, path, hanging, covered):
        return None
    ordered = tuple(hanging[label] for label in range(1, len(hanging) + 1))
    minima = [min_leaf(h) for h in ordered]
    if any(a >= b for a, b in zip(minima, minima[1:])):
        return None
    return Embedding(path, frozenset(covered), ordered)


def divides(divisor, m):
    """Todas as ocorrências de ``divisor`` como submonômio de ``m``."""
    if is_leaf(divisor):
        return []
    found = []
    for path, node in vertices(m):
        if node[0] != divisor[0]:
            continue
        embedding = match_at(divisor, m, path)
        if embedding is not None:
            found.append(embedding)
    return found


def rewrite(m, embedding, term):
    """Troca a ocorrência ``embedding`` em ``m`` por ``term`` (mesma aridade do divisor)."""
    replacements = {label: h for label, h in enumerate(embedding.hanging, start=1)}
    out = {}
    for u, coeff in term.items():
        new = graft(m, embedding.path, substitute(u, replacements))
        out[new] = out.get(new, 0) + coeff
    return Term(out, arity(m))


def enumerate_monomials(generators, n, accept=None):
    """Todos os monômios de aridade ``n`` (filtrados por ``accept``), em ordem determinística.

    ``accept`` só precisa olhar a raiz: os filhos já vêm de tamanhos menores filtrados.
    """
    if n > limit('MAX_ARITY'):
        raise ResourceCapExceeded(f'arity {n} exceeds MAX_ARITY={limit("MAX_ARITY")}')
    generators = [(g.name, g.arity) for g in generators]
    by_size = {1: [IDENTITY]}
    for size in range(2, n + 1):
        found = []
        for name, k in generators:
            if k > size:
                continue
            for blocks in ordered_partitions(range(1, size + 1), k):
                pools = [by_size[len(block)] for block in blocks]
                for inners in product(*pools):
                    children = tuple(
                        relabel(inner, {i + 1: label for i, label in enumerate(block)})
                        for inner, block in zip(inners, blocks)
                    )
                    m = (name,) + children
                    if accept is None or accept(m):
                        found.append(m)
        found.sort(key=shape_key)
        by_size[size] = found
    return list(by_size[n])


def _fraction(value):
    return value if isinstance(value, Fraction) else Fraction(value)


class Term:
    """Combinação linear finita de monômios de mesma aridade, coeficientes racionais exatos."""

    __slots__ = ('arity', '_coeffs')

    def __init__(self, coeffs=None, arity_=None):
        data = {}
        for m, c in (coeffs or {}).items():
            c = _fraction(c)
            if c:
                data[m] = data.get(m, 0) + c
        data = {m: c for m, c in data.items() if c}
        arities = {arity(m) for m in data}
        if len(arities) > 1:
            raise InvalidMonomialError('arity-inhomogeneous relation')
        if arities:
            found = arities.pop()
            if arity_ is not None and arity_ != found:
                raise InvalidMonomialError(f'expected arity {arity_}, got {found}')
            arity_ = found
        self.arity = arity_
        self._coeffs = data

    @classmethod
    def monomial(cls, m, coeff=1):
        return cls({m: coeff}, arity(m))

    @classmethod
    def zero(cls, arity_=None):
        return cls({}, arity_)

    def items(self):
        return self._coeffs.items()

    def monomials(self):
        return list(self._coeffs)

    def coefficient(self, m):
        return self._coeffs.get(m, Fraction(0))

    def as_dict(self):
        return dict(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return self._coeffs == other._coeffs

    __hash__ = None

    def _combine(self, other, sign):
        if self.arity is not None and other.arity is not None and self.arity != other.arity:
            raise InvalidMonomialError('cannot add terms of different arities')
        data = dict(self._coeffs)
        for m, c in other.items():
            data[m] = data.get(m, 0) + sign * c
        return Term(data, self.arity if self.arity is not None else other.arity)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = _fraction(scalar)
        return Term({m: c * scalar for m, c in self.items()}, self.arity)

    __rmul__ = __mul__

    def map(self, fn):
        """Aplica ``fn`` (monômio -> monômio) a cada somando."""
        data = {}
        for m, c in self.items():
            new = fn(m)
            data[new] = data.get(new, 0) + c
        return Term(data, self.arity)

    def leading(self, key):
        return max(self._coeffs, key=key)

    def monic(self, key):
        return self * (1 / self._coeffs[self.leading(key)])

    def sorted_monomials(self, key=None):
        if key is None:
            return sorted(self._coeffs, key=serialize)
        return sorted(self._coeffs, key=key, reverse=True)

    def to_string(self, key=None, variable_prefix=''):
        if not self._coeffs:
            return '0'
        parts = []
        for i, m in enumerate(self.sorted_monomials(key)):
            c = self._coeffs[m]
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            body = serialize(m, variable_prefix)
            if magnitude != 1:
                body = f'{magnitude}*{body}'
            if i == 0:
                parts.append(body if sign == '+' else f'-{body}')
            else:
                parts.append(f'{sign} {body}')
        return ' '.join(parts)

    def to_json(self, key=None):
        return [[str(self._coeffs[m]), serialize(m)] for m in self.sorted_monomials(key)]

    def __repr__(self):
        return f'Term({self.to_string()})'


def compose_terms(outer, inners, blocks):
    """Extensão bilinear de :func:`compose` a termos."""
    blocks = [tuple(sorted(block)) for block in blocks]
    result = {}
    outer_items = list(outer.items())
    inner_items = [list(inner.items()) for inner in inners]
    for u, cu in outer_items:
        for combo in product(*inner_items):
            coeff = cu
            monos = []
            for m, c in combo:
                coeff *= c
                monos.append(m)
            new = compose(u, monos, blocks, check=False)
            result[new] = result.get(new, 0) + coeff
    return Term(result, sum(len(block) for block in blocks))


def partial_compose(outer, slot, inner, blocks):
    """Composição com ``inner`` (um Term) em uma única entrada e identidades nas demais."""
    inners = [Term.monomial(IDENTITY)] * arity(outer)
    inners[slot - 1] = inner
    return compose_terms(Term.monomial(outer), inners, blocks)
