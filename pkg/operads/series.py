"""Séries geradoras exponenciais truncadas e contagem de produtos compostos."""
import logging
from fractions import Fraction
from math import factorial, prod

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_mul, rs_trunc
from sympy.polys.rings import ring
from sympy.utilities.iterables import multiset_partitions

from .conf import limit
from .errors import MathematicalFailure

logger = logging.getLogger(__name__)

R, t = ring('t', QQ)


def _qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


def _integral(value):
    return int(value) if value.denominator == 1 else value


class TruncatedEGF:
    """``f(t) = Σ dims(n) tⁿ/n!`` para ``n = 1..order``; termo constante nulo."""

    def __init__(self, poly, order):
        self.order = order
        self.poly = rs_trunc(poly, t, order + 1)

    @classmethod
    def from_dims(cls, dims, order=None):
        if not isinstance(dims, dict):
            dims = {n: d for n, d in enumerate(dims, start=1)}
        order = order or max(dims, default=0)
        poly = R.zero
        for n, d in dims.items():
            if 1 <= n <= order and d:
                poly += _qq(Fraction(d) / factorial(n)) * t**n
        return cls(poly, order)

    def coefficient(self, n):
        """Coeficiente de ``tⁿ`` (não multiplicado por ``n!``)."""
        return _fraction(dict(self.poly).get((n,), QQ.zero))

    def dim(self, n):
        return self.coefficient(n) * factorial(n)

    def dims(self):
        return {n: _integral(self.dim(n)) for n in range(1, self.order + 1)}

    def power(self, k):
        result = R.one
        for _ in range(k):
            result = rs_mul(result, self.poly, t, self.order + 1)
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedEGF):
            return NotImplemented
        return self.order == other.order and self.poly == other.poly

    def __repr__(self):
        return f'TruncatedEGF({self.dims()})'

    def obstructions(self):
        """Aridades em que o coeficiente é negativo ou não inteiro."""
        return [n for n, d in self.dims().items() if not isinstance(d, int) or d < 0]

    def to_json(self):
        pairs = []
        for n in range(1, self.order + 1):
            c = self.coefficient(n)
            pairs.append([c.numerator, c.denominator])
        return {'dims': [str(d) for d in self.dims().values()], 'egf_num_den_pairs': pairs}


def egf_of(dims, order=None):
    return TruncatedEGF.from_dims(dims, order or limit('EGF_ORDER'))


def dims_of(f):
    return f.dims()


def egf_compose(f, g):
    """``f∘g`` truncada na ordem comum."""
    order = min(f.order, g.order)
    result = R.zero
    power = R.one
    for k in range(1, order + 1):
        power = rs_mul(power, g.poly, t, order + 1)
        c = f.coefficient(k)
        if c:
            result += _qq(c) * power
    return TruncatedEGF(result, order)


def egf_solve_left(f_n, f_m):
    """A única ``f_X`` truncada com ``f_X∘f_M = f_N``, coeficiente a coeficiente."""
    order = min(f_n.order, f_m.order)
    m1 = f_m.coefficient(1)
    if not m1:
        raise MathematicalFailure('cannot solve f_X∘f_M = f_N: f_M has zero linear coefficient')
    powers = {k: f_m.power(k) for k in range(1, order + 1)}
    x = {}
    for n in range(1, order + 1):
        lower = sum(
            (x[k] * _fraction(dict(powers[k]).get((n,), QQ.zero)) for k in range(1, n)),
            Fraction(0),
        )
        x[n] = (f_n.coefficient(n) - lower) / (m1 ** n)
    poly = R.zero
    for n, c in x.items():
        if c:
            poly += _qq(c) * t**n
    solved = TruncatedEGF(poly, order)
    logger.debug('f_X = %s', solved.dims())
    return solved


def composite_dims(x_dims, m_dims, n):
    """``dim (X∘M)(n)`` somando sobre partições de ``{1..n}`` em blocos."""
    total = 0
    for k in range(1, n + 1):
        xk = x_dims.get(k, 0)
        if not xk:
            continue
        for partition in multiset_partitions(list(range(n)), k):
            total += xk * prod(m_dims.get(len(block), 0) for block in partition)
    return total
