"""Operads, morfismos e álgebras embutidos."""
from functools import lru_cache
from pathlib import Path

from .errors import PresentationError

OPERADS = {
    'Com': '''
operad Com {
  generators: m(2) sym;
  relations:
    m(m(a1,a2),a3) - m(a1,m(a2,a3)) = 0;
}
''',
    'Lie': '''
operad Lie {
  generators: b(2) antisym;
  relations:
    b(b(a1,a2),a3) + b(b(a2,a3),a1) + b(b(a3,a1),a2) = 0;
}
''',
    'Ass': '''
operad Ass {
  generators: m(2);
  relations:
    m(m(a1,a2),a3) - m(a1,m(a2,a3)) = 0;
}
''',
    'Poisson': '''
operad Poisson {
  generators: b(2) antisym @1, p(2) sym;
  relations:
    b(b(a1,a2),a3) + b(b(a2,a3),a1) + b(b(a3,a1),a2) = 0;
    p(p(a1,a2),a3) - p(a1,p(a2,a3)) = 0;
    b(p(a1,a2),a3) - p(b(a1,a3),a2) - p(a1,b(a2,a3)) = 0;
}
''',
    'Leib': '''
operad Leib {
  generators: b(2);
  relations:
    b(a1,b(a2,a3)) - b(b(a1,a2),a3) + b(b(a1,a3),a2) = 0;
}
''',
    'Dias': '''
# l = "⊣", r = "⊢"
operad Dias {
  generators: l(2), r(2);
  relations:
    l(l(a1,a2),a3) - l(a1,l(a2,a3)) = 0;
    l(l(a1,a2),a3) - l(a1,r(a2,a3)) = 0;
    l(r(a1,a2),a3) - r(a1,l(a2,a3)) = 0;
    r(l(a1,a2),a3) - r(a1,r(a2,a3)) = 0;
    r(r(a1,a2),a3) - r(a1,r(a2,a3)) = 0;
}
''',
    'Perm': '''
operad Perm {
  generators: p(2);
  relations:
    p(p(a1,a2),a3) - p(a1,p(a2,a3)) = 0;
    p(a1,p(a2,a3)) - p(a1,p(a3,a2)) = 0;
}
''',
    'PreLie': '''
operad PreLie {
  generators: circ(2);
  relations:
    circ(circ(a1,a2),a3) - circ(a1,circ(a2,a3)) - circ(circ(a1,a3),a2) + circ(a1,circ(a3,a2)) = 0;
}
''',
    'Dend': '''
operad Dend {
  generators: prec(2), succ(2);
  relations:
    prec(prec(a1,a2),a3) - prec(a1,prec(a2,a3)) - prec(a1,succ(a2,a3)) = 0;
    prec(succ(a1,a2),a3) - succ(a1,prec(a2,a3)) = 0;
    succ(prec(a1,a2),a3) + succ(succ(a1,a2),a3) - succ(a1,succ(a2,a3)) = 0;
}
''',
    # circ(a1,a2) = prec(a1,a2) - succ(a2,a1), dot(a1,a2) = prec(a1,a2) + succ(a2,a1)
    # circ(dot(..)) relation: these last two signs give dim 336 in arity 4 as Dend does; the opposite signs give 304
    'DendCircDot': '''
operad DendCircDot {
  generators: circ(2) @1, dot(2);
  relations:
    circ(circ(a1,a2),a3) - circ(a1,circ(a2,a3)) - circ(circ(a1,a3),a2) + circ(a1,circ(a3,a2)) = 0;
    dot(dot(a1,a2),a3) - dot(a1,dot(a2,a3)) - dot(a1,dot(a3,a2)) + circ(circ(a1,a3),a2) = 0;
    circ(dot(a1,a2),a3) - dot(circ(a1,a3),a2) - dot(a1,circ(a2,a3)) + dot(a1,circ(a3,a2)) = 0;
    dot(circ(a1,a2),a3) + dot(circ(a1,a3),a2) - circ(a1,dot(a2,a3)) - circ(a1,dot(a3,a2)) = 0;
}
''',
    # same circ(dot(..)) signs as DendCircDot
    'PrePoisson': '''
operad PrePoisson {
  generators: circ(2) @1, dot(2);
  relations:
    circ(circ(a1,a2),a3) - circ(a1,circ(a2,a3)) - circ(circ(a1,a3),a2) + circ(a1,circ(a3,a2)) = 0;
    dot(dot(a1,a2),a3) - dot(a1,dot(a2,a3)) - dot(a1,dot(a3,a2)) = 0;
    circ(dot(a1,a2),a3) - dot(circ(a1,a3),a2) - dot(a1,circ(a2,a3)) + dot(a1,circ(a3,a2)) = 0;
    dot(circ(a1,a2),a3) + dot(circ(a1,a3),a2) - circ(a1,dot(a2,a3)) - circ(a1,dot(a3,a2)) = 0;
}
''',
}

MORPHISMS = {
    'LieAss': '''
morphism LieAss { source: Lie; target: Ass; map: b -> m(a1,a2) - m(a2,a1); }
''',
    'LiePreLie': '''
morphism LiePreLie { source: Lie; target: PreLie; map: b -> circ(a1,a2) - circ(a2,a1); }
''',
    'LiePoisson': '''
morphism LiePoisson { source: Lie; target: Poisson; map: b -> b(a1,a2); }
''',
    'PreLieDend': '''
morphism PreLieDend { source: PreLie; target: Dend; map: circ -> prec(a1,a2) - succ(a2,a1); }
''',
    'PreLieDendCircDot': '''
morphism PreLieDendCircDot { source: PreLie; target: DendCircDot; map: circ -> circ(a1,a2); }
''',
    'LeibDias': '''
morphism LeibDias { source: Leib; target: Dias; map: b -> l(a1,a2) - r(a2,a1); }
''',
}

ALGEBRAS = {
    'abelian2': '''
algebra abelian2 over Lie { basis: x@1, y@1; }
''',
    'abelian-graded': '''
algebra abelian_graded over Lie { basis: x1@1, x2@1, y@2; }
''',
    'heisenberg': '''
algebra heisenberg over Lie {
  basis: x1@1, x2@1, y@2;
  gamma(b; x1, x2) = y;
}
''',
    # Lie livre em x, y truncada no peso 3: z = [x,y], u = [x,z], v = [y,z]
    'freelie2': '''
algebra freelie2 over Lie {
  basis: x@1, y@1, z@2, u@3, v@3;
  gamma(b; x, y) = z;
  gamma(b; x, z) = u;
  gamma(b; y, z) = v;
}
''',
}


@lru_cache(maxsize=None)
def zoo(name):
    from .dsl import parse

    if name not in OPERADS:
        raise PresentationError(f"unknown operad '{name}'; available: {', '.join(sorted(OPERADS))}")
    return parse(OPERADS[name])


def read_source(ref):
    path = Path(ref)
    if not path.is_file():
        raise PresentationError(f"'{ref}' is neither a built-in name nor a readable file")
    return path.read_text(encoding='utf-8')


def load_operad(ref):
    """Nome do zoo ou caminho de um arquivo ``.operad``."""
    from .dsl import parse

    if ref in OPERADS:
        return zoo(ref)
    return parse(read_source(ref))


def find_morphism(source, target):
    for text in MORPHISMS.values():
        morphism = builtin_morphism_text(text)
        if morphism.source.name == source and morphism.target.name == target:
            return morphism
    return None


def builtin_morphism_text(text):
    from .dsl import parse_morphism

    return parse_morphism(text, load_operad)


def load_morphism(ref):
    """Nome embutido, ``identity:<operad>`` ou caminho de arquivo ``.morphism``."""
    from .dsl import parse_morphism
    from .presentation import identity_morphism

    if ref.startswith('identity:'):
        return identity_morphism(load_operad(ref.partition(':')[2]))
    if ref in MORPHISMS:
        return builtin_morphism_text(MORPHISMS[ref])
    return parse_morphism(read_source(ref), load_operad)


def load_algebra(ref):
    from .dsl import parse_algebra

    if ref in ALGEBRAS:
        return parse_algebra(ALGEBRAS[ref], load_operad)
    return parse_algebra(read_source(ref), load_operad)
