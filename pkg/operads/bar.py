"""Homologia do complexo de barra ``B(N, M̄, 1)`` em aridade fixa.

Uma árvore de barra tem a raiz decorada por um monômio normal de ``N`` e os demais
vértices por monômios normais de ``M`` de aridade >= 2; o grau é o número de vértices
de ``M``. O filho ``i`` de um vértice ocupa a entrada ``i`` da decoração, e os filhos
vêm ordenados pelo menor rótulo. A diferencial contrai uma aresta por vez.
"""
import logging

from . import linalg
from .conf import limit
from .errors import MathematicalFailure
from .trees import Term, ordered_partitions, partial_compose

logger = logging.getLogger(__name__)

ROOT, INNER = 'N', 'M'


def tree_min(tree):
    return tree if isinstance(tree, int) else tree_min(tree[2][0])


def inner_vertices(tree, depth=0):
    """Vértices de ``M`` com a profundidade, em pré-ordem."""
    if isinstance(tree, int):
        return
    if tree[0] == INNER:
        yield tree, depth
    for child in tree[2]:
        yield from inner_vertices(child, depth + 1)


def _relabel(tree, mapping):
    if isinstance(tree, int):
        return mapping[tree]
    return (tree[0], tree[1], tuple(_relabel(child, mapping) for child in tree[2]))


class BarComplex:
    def __init__(self, module):
        self.module = module
        self._chains = {}
        self._inner = {}

    def _inner_trees(self, size, count):
        """Subárvores de ``M`` com folhas ``1..size`` e exatamente ``count`` vértices."""
        if (size, count) not in self._inner:
            self._inner[(size, count)] = self._build_inner(size, count)
        return self._inner[(size, count)]

    def _build_inner(self, size, count):
        if size == 1:
            return [1] if count == 0 else []
        if count < 1:
            return []
        found = []
        for k in range(2, size + 1):
            for mu in self.module.basis_m.normal_monomials(k):
                for blocks in ordered_partitions(range(1, size + 1), k):
                    for children in self._fillings(blocks, count - 1):
                        found.append((INNER, mu, children))
        return found

    def _fillings(self, blocks, count):
        if not blocks:
            if count == 0:
                yield ()
            return
        first, rest = blocks[0], blocks[1:]
        for used in range(0, count + 1):
            for child in self._inner_trees(len(first), used):
                placed = _relabel(child, {i + 1: label for i, label in enumerate(first)})
                for tail in self._fillings(rest, count - used):
                    yield (placed,) + tail

    def chains(self, n, degree):
        """Base de ``B_degree`` em aridade ``n``."""
        key = (n, degree)
        if key not in self._chains:
            found = []
            for k in range(1, n + 1):
                for nu in self.module.basis_n.normal_monomials(k):
                    for blocks in ordered_partitions(range(1, n + 1), k):
                        for children in self._fillings(blocks, degree):
                            found.append((ROOT, nu, children))
            self._chains[key] = found
            logger.debug('B_%d(%d): %d árvores', degree, n, len(found))
        return self._chains[key]

    def _contract(self, tree, target):
        """Contrai a aresta entre ``target`` e o pai; devolve ``{árvore: coeficiente}``."""
        if isinstance(tree, int):
            return None
        children = tree[2]
        for j, child in enumerate(children):
            if child is target:
                return self._merge(tree, j)
        for j, child in enumerate(children):
            found = self._contract(child, target)
            if found is not None:
                out = {}
                for new_child, c in found.items():
                    rebuilt = children[:j] + (new_child,) + children[j + 1:]
                    out[(tree[0], tree[1], rebuilt)] = c
                return out
        return None

    def _merge(self, parent, j):
        children = parent[2]
        child = children[j]
        merged = sorted(children[:j] + children[j + 1:] + child[2], key=tree_min)
        rank = {tree_min(x): r for r, x in enumerate(merged, start=1)}
        blocks = []
        for i, x in enumerate(children):
            if i == j:
                blocks.append(tuple(rank[tree_min(y)] for y in child[2]))
            else:
                blocks.append((rank[tree_min(x)],))
        if parent[0] == ROOT:
            inner = self.module.image(child[1])
            raw = partial_compose(parent[1], j + 1, inner, blocks)
            reduced = self.module.basis_n.reduce(raw)
        else:
            raw = partial_compose(parent[1], j + 1, Term.monomial(child[1]), blocks)
            reduced = self.module.basis_m.reduce(raw)
        merged = tuple(merged)
        return {(parent[0], m, merged): c for m, c in reduced.items()}

    def differential(self, tree):
        ordered = sorted(inner_vertices(tree), key=lambda item: (tree_min(item[0]), item[1]))
        out = {}
        for index, (vertex, _) in enumerate(ordered):
            sign = -1 if index % 2 else 1
            for new, c in self._contract(tree, vertex).items():
                out[new] = out.get(new, 0) + sign * c
        return {t: c for t, c in out.items() if c}

    def matrix(self, n, degree):
        """Linhas de ``d: B_degree → B_{degree-1}`` sobre a base de chegada."""
        index = {t: j for j, t in enumerate(self.chains(n, degree - 1))}
        rows = []
        for tree in self.chains(n, degree):
            image = self.differential(tree)
            rows.append({index[t]: c for t, c in image.items()})
        return rows, len(index)

    def rank(self, n, degree):
        if not self.chains(n, degree) or not self.chains(n, degree - 1):
            return 0
        rows, ncols = self.matrix(n, degree)
        return linalg.rank(rows, ncols)

    def homology(self, n, k):
        if k > limit('BAR_MAX_DEGREE'):
            raise MathematicalFailure(f'bar homology is computed up to degree {limit("BAR_MAX_DEGREE")}, degree {k} requested')
        self.module.columns(n)
        dim = len(self.chains(n, k))
        incoming = self.rank(n, k + 1)
        outgoing = self.rank(n, k) if k > 0 else 0
        return dim - incoming - outgoing

    def check_square_zero(self, n, degree=2):
        """``d∘d = 0`` em ``B_degree``; devolve as árvores em que falha."""
        failures = []
        for tree in self.chains(n, degree):
            total = {}
            for middle, c in self.differential(tree).items():
                for last, c2 in self.differential(middle).items():
                    total[last] = total.get(last, 0) + c * c2
            if any(total.values()):
                failures.append(tree)
        return failures


def bar_homology(module, n, k):
    return BarComplex(module).homology(n, k)


def bar_homology_table(module, max_arity, degrees=(0, 1)):
    """``{n: {k: dim H_k}}`` com a comparação de ``H_0`` contra ``X``."""
    complex_ = BarComplex(module)
    table = {}
    for n in range(1, max_arity + 1):
        row = {str(k): complex_.homology(n, k) for k in degrees}
        row['h0_matches_generators'] = row.get('0') == module.quotient(n)[0]
        table[str(n)] = row
    return table
