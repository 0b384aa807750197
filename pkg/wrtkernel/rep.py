"""The ring R = Z[v^(+-1)][V] of sl2 representations, v = q^(1/2).

V_n is the n-dimensional irreducible module, V = V_2. Pairings of R are
evaluated through ``rosso_pairing``: <V_n, f(V)> = [n] f(lambda_n).
"""
import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple, Union

from .errors import FalsificationError
from .qlaurent import (ONE, ZERO, QLaurent, exact_divide, q_bracket, q_bracket_binom, q_braces,
                       q_factorial_braces, q_lambda, q_pochhammer, q_round_binom)

logger = logging.getLogger("wrtkernel.rep")

Scalar = Union[int, QLaurent]


class RElt:
    """Polynomial in V with coefficients in Z[v^(+-1)]."""

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Dict[int, Scalar] = None) -> None:
        clean = {}
        for d, c in (coeffs or {}).items():
            c = c if isinstance(c, QLaurent) else QLaurent.constant(c)
            if c:
                clean[d] = c
        self._coeffs = clean

    @classmethod
    def V(cls) -> 'RElt':
        return cls({1: ONE})

    @classmethod
    def constant(cls, c: Scalar) -> 'RElt':
        return cls({0: c})

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def coeff(self, d: int) -> QLaurent:
        return self._coeffs.get(d, ZERO)

    def items(self) -> Iterator[Tuple[int, QLaurent]]:
        return iter(sorted(self._coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, ZERO) + c
        return RElt(out)

    __radd__ = __add__

    def __neg__(self) -> 'RElt':
        return RElt({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: Dict[int, QLaurent] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, ZERO) + c1 * c2
        return RElt(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'RElt':
        result = RElt.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, RElt) and self._coeffs == other._coeffs

    __hash__ = None

    def evaluate(self, x: QLaurent) -> QLaurent:
        """Substitute V -> x."""
        value = ZERO
        for d in range(self.degree, -1, -1):
            value = value * x + self.coeff(d)
        return value

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"({c})*V^{d}" for d, c in self.items())

    __repr__ = __str__


def _coerce(other) -> RElt:
    if isinstance(other, RElt):
        return other
    if isinstance(other, (int, QLaurent)):
        return RElt.constant(other)
    raise TypeError(f"cannot combine RElt with {type(other).__name__}")


# -- bases -------------------------------------------------------------------

@lru_cache(maxsize=None)
def V_n(n: int) -> RElt:
    """V_1 = 1, V_2 = V, V_(n+1) = V V_n - V_(n-1)."""
    if n < 1:
        raise ValueError(f"V_n needs n >= 1, got {n}")
    if n == 1:
        return RElt.constant(1)
    if n == 2:
        return RElt.V()
    return RElt.V() * V_n(n - 1) - V_n(n - 2)


@lru_cache(maxsize=None)
def P_basis(n: int, eps: int) -> RElt:
    """prod_(j=1..n) (V - lambda_(2j-1+eps))."""
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    result = RElt.constant(1)
    for j in range(1, n + 1):
        result = result * (RElt.V() - q_lambda(2 * j - 1 + eps))
    return result


@lru_cache(maxsize=None)
def S_basis(p: int, eps: int) -> RElt:
    """V^eps prod_(j=1..p) (V^2 - lambda_j^2)."""
    result = RElt.V() if eps else RElt.constant(1)
    for j in range(1, p + 1):
        result = result * (RElt.V() ** 2 - q_lambda(j) * q_lambda(j))
    return result


def expand_in_basis(x: RElt, eps: int) -> Dict[int, QLaurent]:
    """Coefficients of x against the monic basis P_k^(eps)."""
    rest = x
    out: Dict[int, QLaurent] = {}
    for k in range(x.degree, -1, -1):
        c = rest.coeff(k)
        if c:
            out[k] = c
            rest = rest - P_basis(k, eps) * c
    if rest:
        raise ArithmeticError(f"peeling left a remainder {rest}")
    return out


def expected_Vn_coefficient(n: int, k: int, eps: int) -> QLaurent:
    """qbinom(n+k, 2k+1), times lambda_n / lambda_(k+1) when eps = 1."""
    value = q_bracket_binom(n + k, 2 * k + 1)
    if eps and value:
        quotient = exact_divide(value * q_lambda(n), q_lambda(k + 1))
        if quotient is None:
            raise FalsificationError(f"lambda_{k + 1} does not divide qbinom({n + k}, {2 * k + 1}) lambda_{n}")
        value = quotient
    return value


def expand_Vn(n: int, eps: int) -> List[QLaurent]:
    """V_n in the P^(eps) basis, checked against the closed coefficients."""
    found = expand_in_basis(V_n(n), eps)
    coefficients = []
    for k in range(n):
        expected = expected_Vn_coefficient(n, k, eps)
        if found.get(k, ZERO) != expected:
            raise FalsificationError(f"V_{n} has coefficient {found.get(k, ZERO)} at P_{k}^({eps}), "
                                     f"expected {expected}")
        coefficients.append(expected)
    return coefficients


def to_vn_basis(x: RElt) -> Dict[int, QLaurent]:
    """Coefficients of x against V_1, V_2, ... (V_n is monic of degree n - 1)."""
    rest = x
    out: Dict[int, QLaurent] = {}
    for d in range(x.degree, -1, -1):
        c = rest.coeff(d)
        if c:
            out[d + 1] = c
            rest = rest - V_n(d + 1) * c
    return out


def change_of_basis(n_max: int, eps: int) -> List[List[QLaurent]]:
    """Row k holds P_k^(eps) against 1, V, ..., V^n_max; the matrix is unitriangular."""
    rows = []
    for k in range(n_max + 1):
        p = P_basis(k, eps)
        row = [p.coeff(d) for d in range(n_max + 1)]
        if row[k] != ONE or any(row[k + 1:]):
            raise FalsificationError(f"P_{k}^({eps}) is not monic of degree {k}")
        rows.append(row)
    return rows


# -- pairing -----------------------------------------------------------------

def rosso_pairing(x: RElt, y: RElt) -> QLaurent:
    total = ZERO
    for n, c in to_vn_basis(x).items():
        total = total + c * q_bracket(n) * y.evaluate(q_lambda(n))
    return total


def orthogonality_value(p: int, eps: int) -> QLaurent:
    """{2p+1}!/{1}, times lambda_(p+1) when eps = 1."""
    value = exact_divide(q_factorial_braces(2 * p + 1), q_braces(1))
    return value * q_lambda(p + 1) if eps else value


def verify_orthogonality(k: int, p: int, eps: int) -> bool:
    value = rosso_pairing(S_basis(p, eps), P_basis(k, eps))
    expected = orthogonality_value(p, eps) if k == p else ZERO
    if value != expected:
        raise FalsificationError(f"<S_{p}, P_{k}> at eps={eps} is {value}, expected {expected}")
    return True


# -- quantum trace B(n, l, j) ------------------------------------------------

@lru_cache(maxsize=None)
def B_recursive(n: int, l: int, j: int) -> QLaurent:
    if l > n or l < 0:
        return ZERO
    if n == 0:
        return ONE
    value = q_braces(j - n) * q_braces(j + n) * B_recursive(n - 1, l, j)
    if l:
        value = value + QLaurent.q_power(j) * (ONE - QLaurent.q_power(-l)) * B_recursive(n - 1, l - 1, j + 1)
    return value


def B_closed(n: int, l: int, j: int) -> QLaurent:
    """(-1)^l q^(-(j+l)n + 2jl + l(l-1)) (q;q)_n (q;q)_(n-l) binomq(j-1, n-l) binomq(j+n, n-l)."""
    if l > n or l < 0:
        return ZERO
    m = n - l
    sign = -1 if l % 2 else 1
    unit = QLaurent.q_power(-(j + l) * n + 2 * j * l + l * (l - 1), sign)
    return unit * q_pochhammer(1, n) * q_pochhammer(1, m) * q_round_binom(j - 1, m) * q_round_binom(j + n, m)


def B_trace(n: int, l: int, j: int) -> QLaurent:
    """B(n, l, j) by recursion, checked against the closed form and (q;q)_n-divisibility."""
    value = B_recursive(n, l, j)
    if value != B_closed(n, l, j):
        raise FalsificationError(f"B({n}, {l}, {j}): recursion and closed form disagree")
    if exact_divide(value, q_pochhammer(1, n)) is None:
        raise FalsificationError(f"B({n}, {l}, {j}) is not divisible by (q;q)_{n}")
    return value
