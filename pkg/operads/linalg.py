"""Álgebra linear exata sobre Q (sympy ``DomainMatrix`` em formato esparso)."""
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .trees import Term


def _qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


def _matrix(rows, ncols):
    dod = {}
    for i, row in enumerate(rows):
        entries = {j: _qq(c) for j, c in row.items() if c}
        if entries:
            dod[i] = entries
    return DomainMatrix(dod, (len(rows), ncols), QQ)


def _sparse_rows(matrix):
    return matrix.to_sparse().rep


def rref(rows, ncols):
    """Forma escalonada reduzida. Devolve ``(linhas não nulas, pivôs)``."""
    if not rows or not ncols:
        return [], ()
    reduced, pivots = _matrix(rows, ncols).rref()
    sdm = _sparse_rows(reduced)
    out = []
    for i in range(len(pivots)):
        row = sdm.get(i, {})
        out.append({j: _fraction(c) for j, c in row.items()})
    return out, tuple(pivots)


def rank(rows, ncols):
    if not rows or not ncols:
        return 0
    return _matrix(rows, ncols).rank()


def nullspace(rows, ncols):
    """Base do núcleo à direita: vetores ``v`` com ``rows · v = 0``."""
    reduced, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        vector = {f: Fraction(1)}
        for row, p in zip(reduced, pivots):
            c = row.get(f)
            if c:
                vector[p] = -c
        basis.append(vector)
    return basis


def left_kernel(rows, ncols):
    """Combinações ``c`` das linhas com ``sum(c_i * rows[i]) = 0``."""
    transposed = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, c in row.items():
            transposed[j][i] = c
    return nullspace(transposed, len(rows))


def inverse(square):
    """Inversa de uma matriz quadrada dada como lista de listas; ``None`` se singular."""
    n = len(square)
    augmented = []
    for i, row in enumerate(square):
        entries = {j: c for j, c in enumerate(row) if c}
        entries[n + i] = Fraction(1)
        augmented.append(entries)
    reduced, pivots = rref(augmented, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        return None
    return [[row.get(n + j, Fraction(0)) for j in range(n)] for row in reduced[:n]]


def terms_to_rows(terms, columns):
    index = {m: j for j, m in enumerate(columns)}
    return [{index[m]: c for m, c in t.items()} for t in terms]


def echelon_terms(terms, key=None, descending=True):
    """Base escalonada reduzida do espaço gerado por ``terms``.

    As colunas seguem ``key`` (maior primeiro por padrão); os pivôs viram monômios líderes
    com coeficiente 1.
    """
    terms = [t for t in terms if t]
    if not terms:
        return []
    monomials = {m for t in terms for m in t}
    if key is None:
        columns = sorted(monomials, key=lambda m: (repr(m)))
    else:
        columns = sorted(monomials, key=key, reverse=descending)
    reduced, _ = rref(terms_to_rows(terms, columns), len(columns))
    arity = terms[0].arity
    return [Term({columns[j]: c for j, c in row.items()}, arity) for row in reduced]


def span_rank(terms):
    terms = [t for t in terms if t]
    columns = sorted({m for t in terms for m in t}, key=repr)
    return rank(terms_to_rows(terms, columns), len(columns))
