"""Linguagem de apresentações: lexer, parser recursivo e impressão.

Três tipos de documento::

    operad Lie { generators: b(2) antisym; relations: b(b(a1,a2),a3) + ... = 0; }
    morphism LieAss { source: Lie; target: Ass; map: b -> m(a1,a2) - m(a2,a1); }
    algebra heis over Lie { basis: x1@1, x2@1, y@2; gamma(b; x1, x2) = y; }

Comentários começam com ``#``. Os termos usam apenas notação prefixa.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import DSLSyntaxError, PresentationError
from .presentation import (
    GeneratorSpec, OperadMorphism, SymmetricPresentation, Symmetry, build_term, resolve_alias,
    validate, validate_generators,
)
from .trees import is_leaf

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r'''
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<punct>[{}(),;:=+\-*/@])
''', re.VERBOSE)

VARIABLE_RE = re.compile(r'^a(\d+)$')


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


class Lexer:
    """Transforma o texto numa lista de tokens com linha e coluna."""

    def __init__(self, src):
        self.src = src
        self.tokens = list(self._scan())

    def _scan(self):
        line, line_start, pos = 1, 0, 0
        while pos < len(self.src):
            match = TOKEN_RE.match(self.src, pos)
            if match is None:
                raise DSLSyntaxError(f'unexpected character {self.src[pos]!r}', line, pos - line_start + 1)
            kind = match.lastgroup
            text = match.group()
            column = pos - line_start + 1
            pos = match.end()
            if kind == 'newline':
                line, line_start = line + 1, pos
                continue
            if kind in ('space', 'comment'):
                continue
            if kind == 'punct':
                kind = text
            elif kind == 'arrow':
                kind = '->'
            elif kind == 'string':
                text = text[1:-1]
            yield Token(kind, text, line, column)
        yield Token('eof', '', line, pos - line_start + 1)


@dataclass
class AlgebraSpec:
    """Álgebra lida do texto, ainda sem a verificação dos axiomas."""

    name: str
    operad: SymmetricPresentation
    basis: list
    products: dict = field(default_factory=dict)


class Parser:
    def __init__(self, text, resolve=None):
        self.tokens = Lexer(text).tokens
        self.pos = 0
        self.resolve = resolve

    # -- tokens ------------------------------------------------------------

    @property
    def current(self):
        return self.tokens[self.pos]

    def peek(self, offset=1):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def error(self, message, token=None):
        token = token or self.current
        return DSLSyntaxError(message, token.line, token.column)

    def advance(self):
        token = self.current
        if token.kind != 'eof':
            self.pos += 1
        return token

    def accept(self, kind, text=None):
        token = self.current
        if token.kind == kind and (text is None or token.text == text):
            return self.advance()
        return None

    def expect(self, kind, text=None):
        token = self.accept(kind, text)
        if token is None:
            wanted = text or kind
            found = self.current.text or self.current.kind
            raise self.error(f"expected '{wanted}', found '{found}'")
        return token

    def keyword(self, word):
        self.expect('ident', word)
        self.expect(':')

    # -- documentos ----------------------------------------------------------

    def document_kind(self):
        token = self.current
        if token.kind != 'ident' or token.text not in ('operad', 'morphism', 'algebra'):
            raise self.error("expected 'operad', 'morphism' or 'algebra'")
        return token.text

    def operad(self):
        self.expect('ident', 'operad')
        name = self.expect('ident').text
        self.expect('{')
        self.keyword('generators')
        generators = self.generator_list()
        specs = {g.name: g for g in generators}
        relations = []
        if self.accept('ident', 'relations'):
            self.expect(':')
            while self.current.kind != '}':
                relations.append(self.relation(specs))
        self.expect('}')
        self.expect('eof')
        presentation = SymmetricPresentation(name, generators, relations)
        return validate(presentation)

    def generator_list(self):
        generators = []
        start = self.current
        if self.accept(';'):
            return generators
        while True:
            generators.append(self.generator())
            if self.accept(';'):
                break
            self.expect(',')
        try:
            validate_generators(generators)
        except PresentationError as exc:
            raise PresentationError(f'line {start.line}: {exc}') from exc
        return generators

    def generator(self):
        name = self.expect('ident').text
        self.expect('(')
        arity = int(self.expect('number').text)
        self.expect(')')
        symmetry = Symmetry.NONE
        if self.current.kind == 'ident' and self.current.text in ('sym', 'antisym', 'none'):
            symmetry = Symmetry(self.advance().text)
        weight = 0
        if self.accept('@'):
            weight = int(self.expect('number').text)
        return GeneratorSpec(name, arity, symmetry, weight)

    def relation(self, specs):
        start = self.current
        lhs = self.term()
        rhs = {}
        if self.accept('='):
            rhs = self.term()
        self.expect(';')
        data = dict(lhs)
        for tree, c in rhs.items():
            data[tree] = data.get(tree, 0) - c
        return self.resolved(data, specs, start)

    def resolved(self, raw, specs, token):
        try:
            data = {}
            for tree, c in raw.items():
                tree = resolve_tree(tree, specs)
                data[tree] = data.get(tree, 0) + c
            return build_term(data, specs)
        except PresentationError as exc:
            raise PresentationError(f'line {token.line}: {exc}') from exc

    # -- termos ----------------------------------------------------------------

    def coefficient(self):
        number = Fraction(int(self.expect('number').text))
        if self.accept('/'):
            denominator = int(self.expect('number').text)
            if denominator == 0:
                raise self.error('zero denominator')
            number /= denominator
        self.accept('*')
        return number

    def term(self):
        """Soma de parcelas ``[coef[/den]*] app``; ``0`` sozinho é o termo nulo."""
        data = {}
        sign = 1
        if self.accept('-'):
            sign = -1
        else:
            self.accept('+')
        while True:
            if self.current.kind == 'number' and self.peek().kind not in ('*', '/', 'ident'):
                if self.advance().text != '0':
                    raise self.error('a bare number is only allowed as the zero term')
            else:
                coeff = Fraction(1)
                if self.current.kind == 'number':
                    coeff = self.coefficient()
                tree = self.application()
                data[tree] = data.get(tree, 0) + sign * coeff
            if self.accept('+'):
                sign = 1
            elif self.accept('-'):
                sign = -1
            else:
                return {tree: c for tree, c in data.items() if c}

    def application(self):
        name = self.expect('ident')
        if VARIABLE_RE.match(name.text):
            raise self.error(f"variable '{name.text}' cannot stand alone as a summand", name)
        self.expect('(')
        children = [self.argument()]
        while self.accept(','):
            children.append(self.argument())
        self.expect(')')
        return (name.text,) + tuple(children)

    def argument(self):
        token = self.current
        if token.kind == 'number':
            return int(self.advance().text)
        if token.kind == 'ident':
            variable = VARIABLE_RE.match(token.text)
            if variable and self.peek().kind != '(':
                self.advance()
                return int(variable.group(1))
            return self.application()
        raise self.error('expected a variable or an application')

    # -- morfismos e álgebras ----------------------------------------------------

    def reference(self):
        token = self.current
        if token.kind in ('ident', 'string'):
            self.advance()
            if self.resolve is None:
                raise self.error('no loader available to resolve operad references')
            return self.resolve(token.text)
        raise self.error('expected an operad name or a quoted path')

    def morphism(self):
        self.expect('ident', 'morphism')
        name = self.expect('ident').text
        self.expect('{')
        self.keyword('source')
        source = self.reference()
        self.expect(';')
        self.keyword('target')
        target = self.reference()
        self.expect(';')
        self.keyword('map')
        images = self.map_entries(target, source)
        self.expect('}')
        self.expect('eof')
        return OperadMorphism(name, source, target, images)

    def map_entries(self, target, source):
        images = {}
        while self.current.kind != '}':
            images.update(self.map_entry(target, source))
        return images

    def map_entry(self, target, source):
        generator = self.expect('ident')
        if generator.text not in source.specs:
            raise PresentationError(f"line {generator.line}: '{generator.text}' is not a generator of {source.name}")
        self.expect('->')
        raw = self.term()
        self.accept(';')
        return {generator.text: self.resolved(raw, target.specs, generator)}

    def algebra(self):
        self.expect('ident', 'algebra')
        name = self.expect('ident').text
        self.expect('ident', 'over')
        operad = self.reference()
        self.expect('{')
        self.keyword('basis')
        basis = []
        while True:
            element = self.expect('ident').text
            weight = 1
            if self.accept('@'):
                weight = int(self.expect('number').text)
            basis.append((element, weight))
            if self.accept(';'):
                break
            self.expect(',')
        names = {element for element, _ in basis}
        if len(names) != len(basis):
            raise PresentationError(f'duplicate basis element in algebra {name}')
        products = {}
        while self.current.kind != '}':
            start = self.expect('ident', 'gamma')
            self.expect('(')
            generator = self.expect('ident').text
            if generator not in operad.specs:
                raise PresentationError(f"line {start.line}: undeclared generator '{generator}'")
            self.expect(';')
            arguments = [self.basis_name(names)]
            while self.accept(','):
                arguments.append(self.basis_name(names))
            self.expect(')')
            if len(arguments) != operad.specs[generator].arity:
                raise PresentationError(f"line {start.line}: arity mismatch for '{generator}'")
            self.expect('=')
            products[(generator, tuple(arguments))] = self.linear_combination(names)
            self.expect(';')
        self.expect('}')
        self.expect('eof')
        return AlgebraSpec(name, operad, basis, products)

    def basis_name(self, names):
        token = self.expect('ident')
        if token.text not in names:
            raise PresentationError(f"line {token.line}: unknown basis element '{token.text}'")
        return token.text

    def linear_combination(self, names):
        data = {}
        sign = 1 if not self.accept('-') else -1
        while True:
            if self.current.kind == 'number' and self.peek().kind not in ('*', '/', 'ident'):
                if self.advance().text != '0':
                    raise self.error('a bare number is only allowed as zero')
            else:
                coeff = self.coefficient() if self.current.kind == 'number' else Fraction(1)
                element = self.basis_name(names)
                data[element] = data.get(element, 0) + sign * coeff
            if self.accept('+'):
                sign = 1
            elif self.accept('-'):
                sign = -1
            else:
                return {element: c for element, c in data.items() if c}


def resolve_tree(tree, specs):
    if is_leaf(tree):
        return tree
    name, children = resolve_alias(tree[0], tree[1:], specs)
    return (name,) + tuple(resolve_tree(child, specs) for child in children)


def _default_resolver():
    from .zoo import load_operad
    return load_operad


def parse(text):
    """Lê uma apresentação simétrica."""
    presentation = Parser(text).operad()
    logger.debug('Apresentação %s lida: %d geradores, %d relações',
                 presentation.name, len(presentation.generators), len(presentation.relations))
    return presentation


def parse_term(text, presentation):
    """Lê um termo isolado nos geradores de ``presentation``."""
    parser = Parser(text)
    start = parser.current
    raw = parser.term()
    parser.expect('eof')
    return parser.resolved(raw, presentation.specs, start)


def parse_map(text, source, target):
    """Lê uma entrada ``g -> TERMO`` de linha de comando."""
    parser = Parser(text)
    entry = parser.map_entry(target, source)
    parser.expect('eof')
    return entry


def parse_morphism(text, resolve=None):
    return Parser(text, resolve or _default_resolver()).morphism()


def parse_algebra(text, resolve=None):
    return Parser(text, resolve or _default_resolver()).algebra()


def document_kind(text):
    return Parser(text).document_kind()


def _generator_text(g):
    text = f'{g.name}({g.arity})'
    if g.symmetry != Symmetry.NONE:
        text += f' {g.symmetry.value}'
    if g.weight:
        text += f' @{g.weight}'
    return text


def print_presentation(presentation):
    lines = [f'operad {presentation.name} {{']
    lines.append('  generators: ' + ', '.join(_generator_text(g) for g in presentation.generators) + ';')
    lines.append('  relations:')
    for relation in presentation.relations:
        lines.append(f'    {relation.to_string(variable_prefix="a")} = 0;')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def print_morphism(morphism):
    lines = [f'morphism {morphism.name.replace(":", "_")} {{',
             f'  source: {morphism.source.name};',
             f'  target: {morphism.target.name};',
             '  map:']
    for g in morphism.source.generators:
        lines.append(f'    {g.name} -> {morphism.images[g.name].to_string(variable_prefix="a")};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def _combination_text(values):
    parts = []
    for i, (element, c) in enumerate(values.items()):
        magnitude = abs(Fraction(c))
        body = element if magnitude == 1 else f'{magnitude}*{element}'
        if i == 0:
            parts.append(body if c > 0 else f'-{body}')
        else:
            parts.append(f'{"+" if c > 0 else "-"} {body}')
    return ' '.join(parts) or '0'


def print_algebra(spec):
    lines = [f'algebra {spec.name} over {spec.operad.name} {{',
             '  basis: ' + ', '.join(f'{element}@{weight}' for element, weight in spec.basis) + ';']
    for (generator, arguments), values in spec.products.items():
        lines.append(f'  gamma({generator}; {", ".join(arguments)}) = {_combination_text(values)};')
    lines.append('}')
    return '\n'.join(lines) + '\n'
