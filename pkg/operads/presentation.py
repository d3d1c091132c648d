"""Apresentações simétricas e shuffle, troca de geradores e morfismos.

Relações simétricas usam a mesma representação de árvores de ``trees``, com as
variáveis ``a1..an`` guardadas como folhas ``1..n`` e sem a condição de mínimos locais.
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import permutations

from . import linalg
from .errors import MorphismError, PresentationError
from .trees import (
    Term, arity, compose_terms, is_leaf, leaves, min_leaf, relabel, serialize, shape_key,
    standardize, vertices,
)

logger = logging.getLogger(__name__)

NAME_RE = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')
VARIABLE_RE = re.compile(r'^a\d+$')


class Symmetry(str, Enum):
    NONE = 'none'
    SYMMETRIC = 'sym'
    ANTISYMMETRIC = 'antisym'


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    arity: int
    symmetry: Symmetry = Symmetry.NONE
    weight: int = 0


@dataclass
class SymmetricPresentation:
    name: str
    generators: tuple
    relations: tuple = ()

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.relations = tuple(self.relations)

    @cached_property
    def specs(self):
        return {g.name: g for g in self.generators}

    def __eq__(self, other):
        if not isinstance(other, SymmetricPresentation):
            return NotImplemented
        return (self.name, self.generators, self.relations) == (other.name, other.generators, other.relations)

    @property
    def has_weights(self):
        return any(g.weight > 0 for g in self.generators)


@dataclass(frozen=True)
class ShuffleGenerator:
    name: str
    arity: int
    weight: int
    origin: str
    permutation: tuple
    symmetry: Symmetry = Symmetry.NONE


@dataclass
class ShufflePresentation:
    name: str
    generators: tuple
    relations: tuple = ()
    source: SymmetricPresentation = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.relations = tuple(self.relations)

    @cached_property
    def by_name(self):
        return {g.name: g for g in self.generators}

    @property
    def weights(self):
        return {g.name: g.weight for g in self.generators}

    def relations_of_arity(self, n):
        return [r for r in self.relations if r.arity == n]

    def max_relation_arity(self):
        return max((r.arity for r in self.relations), default=1)


def shuffle_name(name, permutation):
    if list(permutation) == sorted(permutation):
        return name
    if len(permutation) == 2:
        return f'{name}bar'
    return f'{name}_' + ''.join(str(p) for p in permutation)


def validate_generators(generators):
    seen = set()
    for g in generators:
        if not NAME_RE.match(g.name) or VARIABLE_RE.match(g.name):
            raise PresentationError(f"invalid generator name '{g.name}'")
        if g.name.endswith('bar') or re.search(r'_\d+$', g.name):
            raise PresentationError(f"generator name '{g.name}' clashes with opposite-generator names")
        if g.name in seen:
            raise PresentationError(f"duplicate generator '{g.name}'")
        seen.add(g.name)
        if g.arity < 2:
            raise PresentationError(f"generator '{g.name}' must have arity at least 2")
        if g.symmetry != Symmetry.NONE and g.arity != 2:
            raise PresentationError(f"symmetry declared on '{g.name}' of arity {g.arity}; only binary generators may be sym or antisym")
        if g.weight < 0:
            raise PresentationError(f"negative weight on '{g.name}'")


def check_symmetric_monomial(tree, specs):
    for _, node in vertices(tree):
        spec = specs.get(node[0])
        if spec is None:
            raise PresentationError(f"undeclared generator '{node[0]}'")
        if spec.arity != len(node) - 1:
            raise PresentationError(
                f"arity mismatch for '{node[0]}': declared {spec.arity}, used with {len(node) - 1}"
            )
    labels = leaves(tree)
    if len(set(labels)) != len(labels):
        duplicated = sorted({label for label in labels if labels.count(label) > 1})[0]
        raise PresentationError(f'variable a{duplicated} used twice in a monomial')
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise PresentationError(f'variables of {serialize(tree, "a")} must be exactly a1..a{len(labels)}')


def build_term(coeffs, specs):
    """Valida um dicionário árvore -> coeficiente e devolve o ``Term``."""
    arities = set()
    for tree in coeffs:
        check_symmetric_monomial(tree, specs)
        arities.add(arity(tree))
    if len(arities) > 1:
        raise PresentationError('arity-inhomogeneous relation')
    return Term(coeffs, arities.pop() if arities else None)


def validate(presentation):
    validate_generators(presentation.generators)
    for relation in presentation.relations:
        build_term(relation.as_dict(), presentation.specs)
    return presentation


def resolve_alias(name, children, specs):
    """Resolve ``gbar(x,y)`` como ``g(y,x)`` e ``g_213(...)`` pela permutação indicada."""
    if name in specs:
        return name, children
    if name.endswith('bar') and name[:-3] in specs and specs[name[:-3]].arity == 2 and len(children) == 2:
        return name[:-3], (children[1], children[0])
    base, _, digits = name.rpartition('_')
    if base in specs and digits.isdigit():
        perm = [int(d) for d in digits]
        if sorted(perm) == list(range(1, len(children) + 1)) and len(perm) == specs[base].arity:
            return base, tuple(children[p - 1] for p in perm)
    raise PresentationError(f"undeclared generator '{name}'")


def normalize(tree, specs):
    """Leva uma árvore simétrica a ``(sinal, monômio shuffle)``."""
    if is_leaf(tree):
        return 1, tree
    name, children = tree[0], tree[1:]
    spec = specs[name]
    sign = 1
    normed = []
    for child in children:
        s, m = normalize(child, specs)
        sign *= s
        normed.append(m)
    order = sorted(range(len(normed)), key=lambda j: min_leaf(normed[j]))
    rank = [0] * len(normed)
    for position, j in enumerate(order):
        rank[j] = position + 1
    ordered = tuple(normed[j] for j in order)
    identity = rank == sorted(rank)
    if identity or spec.symmetry == Symmetry.SYMMETRIC:
        generator = name
    elif spec.symmetry == Symmetry.ANTISYMMETRIC:
        generator = name
        sign = -sign
    else:
        generator = shuffle_name(name, rank)
    return sign, (generator,) + ordered


def to_shuffle_term(term, specs):
    data = {}
    for tree, c in term.items():
        sign, m = normalize(tree, specs)
        data[m] = data.get(m, 0) + sign * c
    return Term(data, term.arity)


def to_symmetric(m, generators_by_name):
    """Inverso de :func:`normalize` num monômio shuffle (devolve uma árvore simétrica)."""
    if is_leaf(m):
        return m
    g = generators_by_name[m[0]]
    children = tuple(to_symmetric(child, generators_by_name) for child in m[1:])
    return (g.origin,) + tuple(children[p - 1] for p in g.permutation)


def act(m, sigma, shuffle_presentation):
    """Ação de S_n: renomeia as folhas por ``sigma`` (dict) e renormaliza."""
    specs = shuffle_presentation.source.specs
    tree = relabel(to_symmetric(m, shuffle_presentation.by_name), sigma)
    sign, normal = normalize(tree, specs)
    return Term({normal: sign}, arity(normal))


def shuffle_generators(presentation):
    out = []
    for g in presentation.generators:
        if g.symmetry != Symmetry.NONE:
            out.append(ShuffleGenerator(g.name, g.arity, g.weight, g.name, (1, 2), g.symmetry))
            continue
        for perm in sorted(permutations(range(1, g.arity + 1))):
            out.append(ShuffleGenerator(shuffle_name(g.name, perm), g.arity, g.weight, g.name, perm))
    return out


def shuffleize(presentation):
    """Funtor de esquecimento: apresentação simétrica -> apresentação shuffle."""
    validate(presentation)
    specs = presentation.specs
    generators = shuffle_generators(presentation)
    by_arity = {}
    for relation in presentation.relations:
        if not relation:
            continue
        n = relation.arity
        for perm in permutations(range(1, n + 1)):
            mapping = {i + 1: p for i, p in enumerate(perm)}
            term = to_shuffle_term(relation.map(lambda tree: relabel(tree, mapping)), specs)
            if term:
                by_arity.setdefault(n, []).append(term)
    relations = []
    for n in sorted(by_arity):
        relations.extend(linalg.echelon_terms(by_arity[n], key=shape_key, descending=False))
    logger.debug('%s: %d relações shuffle', presentation.name, len(relations))
    return ShufflePresentation(f'{presentation.name}^f', generators, relations, source=presentation)


def canonical_symmetric(term, specs):
    """Ordena os filhos de vértices sym/antisym pelo menor rótulo."""

    def canon(tree):
        if is_leaf(tree):
            return 1, tree
        sign = 1
        children = []
        for child in tree[1:]:
            s, c = canon(child)
            sign *= s
            children.append(c)
        spec = specs.get(tree[0])
        if spec is not None and spec.symmetry != Symmetry.NONE and min_leaf(children[0]) > min_leaf(children[1]):
            children.reverse()
            if spec.symmetry == Symmetry.ANTISYMMETRIC:
                sign = -sign
        return sign, (tree[0],) + tuple(children)

    data = {}
    for tree, c in term.items():
        sign, t = canon(tree)
        data[t] = data.get(t, 0) + sign * c
    return Term(data, term.arity)


def _swap(tree):
    return relabel(tree, {1: 2, 2: 1})


def _orbit_coordinates(generators):
    coords = []
    for g in generators:
        if g.arity != 2:
            continue
        coords.append((g.name, False))
        if g.symmetry == Symmetry.NONE:
            coords.append((g.name, True))
    return coords


def _orbit_vector(term, specs, coords):
    index = {c: i for i, c in enumerate(coords)}
    vector = [Fraction(0)] * len(coords)
    for tree, c in term.items():
        if is_leaf(tree) or len(tree) != 3 or not all(is_leaf(x) for x in tree[1:]):
            raise PresentationError('new generators must be combinations of binary generators applied to a1, a2')
        spec = specs.get(tree[0])
        if spec is None:
            raise PresentationError(f"undeclared generator '{tree[0]}'")
        swapped = tree[1:] == (2, 1)
        if swapped and spec.symmetry == Symmetry.SYMMETRIC:
            swapped = False
        elif swapped and spec.symmetry == Symmetry.ANTISYMMETRIC:
            swapped, c = False, -c
        vector[index[(tree[0], swapped)]] += c
    return vector


def detect_symmetry(term, specs, coords):
    v = _orbit_vector(term, specs, coords)
    w = _orbit_vector(term.map(_swap), specs, coords)
    if not any(v):
        raise PresentationError('a new generator cannot be zero')
    if v == w:
        return Symmetry.SYMMETRIC, v, w
    if v == [-x for x in w]:
        return Symmetry.ANTISYMMETRIC, v, w
    return Symmetry.NONE, v, w


class GeneratorChange:
    """Troca linear invertível dos geradores binários.

    ``new_generators`` é uma lista ``(nome, peso, termo nos geradores antigos)``.
    """

    def __init__(self, presentation, new_generators):
        self.presentation = presentation
        specs = presentation.specs
        self.coords = _orbit_coordinates(presentation.generators)
        rows, basis_labels, self.new_specs = [], [], []
        for name, weight, term in new_generators:
            symmetry, v, w = detect_symmetry(term, specs, self.coords)
            self.new_specs.append(GeneratorSpec(name, 2, symmetry, weight))
            rows.append(v)
            basis_labels.append((name, False))
            if symmetry == Symmetry.NONE:
                rows.append(w)
                basis_labels.append((name, True))
        if len(rows) != len(self.coords):
            raise PresentationError(
                f'non-invertible substitution: {len(rows)} new orbit vectors for a space of dimension {len(self.coords)}'
            )
        inverse = linalg.inverse(rows)
        if inverse is None:
            raise PresentationError('non-invertible substitution (rank deficient)')
        self.expressions = {}
        for c_index, coord in enumerate(self.coords):
            self.expressions[coord] = [
                (label, inverse[c_index][r]) for r, label in enumerate(basis_labels) if inverse[c_index][r]
            ]
        kept = [g for g in presentation.generators if g.arity != 2]
        self.target_specs = {g.name: g for g in kept + self.new_specs}

    def _old_spec(self, name):
        return self.presentation.specs[name]

    def substitute_tree(self, tree):
        """Reescreve uma árvore nos geradores novos; devolve dict árvore -> coeficiente."""
        if is_leaf(tree):
            return {tree: Fraction(1)}
        name, children = tree[0], tree[1:]
        expanded = [self.substitute_tree(child) for child in children]
        spec = self._old_spec(name)
        if spec.arity != 2:
            out = {(name,): Fraction(1)}
            for part in expanded:
                out = {t + (c,): a * b for t, a in out.items() for c, b in part.items()}
            return out
        out = {}
        for (x, cx) in expanded[0].items():
            for (y, cy) in expanded[1].items():
                for (new_name, swapped), coeff in self.expressions[(name, False)]:
                    args = (y, x) if swapped else (x, y)
                    key = (new_name,) + args
                    out[key] = out.get(key, 0) + coeff * cx * cy
        return out

    def substitute(self, term):
        data = {}
        for tree, c in term.items():
            for new, coeff in self.substitute_tree(tree).items():
                data[new] = data.get(new, 0) + c * coeff
        return canonical_symmetric(Term(data, term.arity), self.target_specs)

    def apply(self, name=None):
        generators = [g for g in self.presentation.generators if g.arity != 2] + self.new_specs
        validate_generators(generators)
        relations = [self.substitute(r) for r in self.presentation.relations]
        return SymmetricPresentation(name or f'{self.presentation.name}\'', generators, [r for r in relations if r])


def change_generators(presentation, new_generators, name=None):
    """Reapresenta ``presentation`` nos geradores dados por termos de aridade 2."""
    validate(presentation)
    return GeneratorChange(presentation, new_generators).apply(name)


@dataclass
class OperadMorphism:
    name: str
    source: SymmetricPresentation
    target: SymmetricPresentation
    images: dict

    def __post_init__(self):
        missing = [g.name for g in self.source.generators if g.name not in self.images]
        if missing:
            raise MorphismError(f'no image given for {", ".join(missing)}')
        extra = [name for name in self.images if name not in self.source.specs]
        if extra:
            raise MorphismError(f'images given for unknown generators {", ".join(extra)}')
        for name, image in self.images.items():
            build_term(image.as_dict(), self.target.specs)
            if image and image.arity != self.source.specs[name].arity:
                raise MorphismError(f"image of '{name}' has arity {image.arity}, expected {self.source.specs[name].arity}")

    def shuffled(self):
        return ShuffleMorphism.from_symmetric(self)


@dataclass
class ShuffleMorphism:
    name: str
    source: ShufflePresentation
    target: ShufflePresentation
    images: dict

    @classmethod
    def from_symmetric(cls, morphism, target=None):
        source = shuffleize(morphism.source)
        target = target or shuffleize(morphism.target)
        specs = morphism.target.specs
        images = {}
        for g in source.generators:
            image = morphism.images[g.origin]
            mapping = {j + 1: p for j, p in enumerate(g.permutation)}
            images[g.name] = to_shuffle_term(image.map(lambda tree: relabel(tree, mapping)), specs)
        return cls(morphism.name, source, target, images)

    def image_of(self, m, cache=None):
        """Imagem de um monômio shuffle da fonte como termo no operad livre do alvo."""
        if cache is not None and m in cache:
            return cache[m]
        if is_leaf(m):
            result = Term.monomial(m)
        else:
            inners, blocks = [], []
            for child in m[1:]:
                std, labels = standardize(child)
                inners.append(self.image_of(std, cache))
                blocks.append(labels)
            result = compose_terms(self.images[m[0]], inners, blocks)
        if cache is not None:
            cache[m] = result
        return result


def identity_morphism(presentation):
    images = {
        g.name: Term.monomial((g.name,) + tuple(range(1, g.arity + 1)))
        for g in presentation.generators
    }
    return OperadMorphism(f'identity:{presentation.name}', presentation, presentation, images)


def _conjugate(term):
    ordered = term.sorted_monomials()
    return Term({m: (c if i == 0 else -c) for i, (m, c) in enumerate((m, term.coefficient(m)) for m in ordered)}, term.arity)


def _fresh(base, taken):
    if base not in taken:
        return base
    i = 1
    while f'{base}{i}' in taken:
        i += 1
    return f'{base}{i}'


def automatic_filtration(morphism):
    """Reapresenta o alvo com as imagens de ``phi`` como geradores de peso 1.

    Complementa com os conjugados das imagens e, se preciso, com cópias dos geradores do
    alvo. Devolve ``(alvo filtrado, morfismo para ele)``.
    """
    target = morphism.target
    specs = target.specs
    coords = _orbit_coordinates(target.generators)
    candidates = []
    binary_sources = [g for g in morphism.source.generators if g.arity == 2]
    if len(binary_sources) != len(morphism.source.generators):
        raise MorphismError('automatic filtration needs binary source generators')
    for g in binary_sources:
        candidates.append((g.name, 1, morphism.images[g.name], True))
    taken = {g.name for g in binary_sources}
    for g in binary_sources:
        name = _fresh('p', taken)
        taken.add(name)
        candidates.append((name, 0, _conjugate(morphism.images[g.name]), False))
    for g in target.generators:
        if g.arity != 2:
            continue
        plain = Term.monomial((g.name, 1, 2))
        options = [plain] if g.symmetry != Symmetry.NONE else [
            plain + Term.monomial((g.name, 2, 1)), plain, plain - Term.monomial((g.name, 2, 1)),
        ]
        for option in options:
            name = _fresh(g.name + 'f', taken)
            candidates.append((name, 0, option, False))
    chosen, vectors = [], []
    for name, weight, term, required in candidates:
        if len(vectors) == len(coords):
            break
        symmetry, v, w = detect_symmetry(term, specs, coords)
        trial = vectors + ([v] if symmetry != Symmetry.NONE else [v, w])
        if linalg.rank([dict(enumerate(row)) for row in trial], len(coords)) == len(trial):
            vectors = trial
            chosen.append((name, weight, term))
            taken.add(name)
        elif required:
            raise MorphismError(f"image of '{name}' is linearly dependent on the other images")
    change = GeneratorChange(target, chosen)
    filtered = change.apply(f'{target.name}[F]')
    images = {g.name: change.substitute(morphism.images[g.name]) for g in morphism.source.generators}
    logger.info('Filtração automática de %s: %s', target.name, ', '.join(name for name, _, _ in chosen))
    return filtered, OperadMorphism(morphism.name, morphism.source, filtered, images)
