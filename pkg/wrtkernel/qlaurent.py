"""Exact Laurent polynomials in q^(1/4) and in (z, q).

Exponents of q are integers counting quarters: the key 4 stands for q and
the key 2 for v = q^(1/2). Coefficients are Python integers, or `Fraction`
when a value is flagged ``rational`` (solvers only).
"""
import logging
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

import sympy

from .errors import NotDivisibleError

logger = logging.getLogger("wrtkernel.qlaurent")

Coeff = Union[int, Fraction]

_X = sympy.Symbol('x')
_TERM = re.compile(r"\s*(-?\d+(?:/\d+)?)\*q\^\((-?\d+)/4\)\s*")


def _accumulate(target: Dict, key, value):
    value = target.get(key, 0) + value
    if value:
        target[key] = value
    else:
        target.pop(key, None)


class QLaurent:
    """Element of Z[q^(±1/4)] (or Q[q^(±1/4)] when ``rational``)."""

    __slots__ = ('_terms', 'rational')

    def __init__(self, terms: Optional[Mapping[int, Coeff]] = None, rational: bool = False) -> None:
        clean: Dict[int, Coeff] = {}
        for e, c in (terms or {}).items():
            if not c:
                continue
            if rational:
                c = Fraction(c)
            elif isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c} in an integral QLaurent")
                c = c.numerator
            clean[int(e)] = c if rational else int(c)
        self._terms = clean
        self.rational = rational

    @classmethod
    def monomial(cls, quarters: int, coeff: Coeff = 1) -> 'QLaurent':
        return cls({quarters: coeff}, rational=isinstance(coeff, Fraction) and coeff.denominator != 1)

    @classmethod
    def q_power(cls, exponent: Union[int, Fraction], coeff: Coeff = 1) -> 'QLaurent':
        """coeff * q^exponent; the exponent must be a multiple of 1/4."""
        quarters = Fraction(exponent) * 4
        if quarters.denominator != 1:
            raise ValueError(f"q^{exponent} is not a power of q^(1/4)")
        return cls.monomial(int(quarters), coeff)

    @classmethod
    def constant(cls, c: int) -> 'QLaurent':
        return cls({0: c})

    @classmethod
    def from_text(cls, text: str) -> 'QLaurent':
        text = text.strip()
        if text == '0':
            return cls()
        terms: Dict[int, Fraction] = {}
        for part in text.split(' + '):
            m = _TERM.fullmatch(part)
            if m is None:
                raise ValueError(f"cannot parse term {part!r}")
            _accumulate(terms, int(m.group(2)), Fraction(m.group(1)))
        rational = any(c.denominator != 1 for c in terms.values())
        return cls(terms, rational=rational)

    # -- inspection -------------------------------------------------------

    def items(self) -> Iterator[Tuple[int, Coeff]]:
        return iter(sorted(self._terms.items()))

    @property
    def terms(self) -> Dict[int, Coeff]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, quarters: int) -> Coeff:
        return self._terms.get(quarters, 0)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def in_z_q(self) -> bool:
        """True iff only integral powers of q occur."""
        return all(e % 4 == 0 for e in self._terms)

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self._terms.values())

    def to_integral(self) -> 'QLaurent':
        if not self.is_integral():
            raise NotDivisibleError(f"{self} has non-integral coefficients")
        return QLaurent({e: Fraction(c).numerator for e, c in self._terms.items()})

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic -------------------------------------------------------

    def _combine(self, other: 'QLaurent', sign: int) -> 'QLaurent':
        terms = dict(self._terms)
        for e, c in other._terms.items():
            _accumulate(terms, e, sign * c)
        return QLaurent(terms, self.rational or other.rational)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self) -> 'QLaurent':
        return QLaurent({e: -c for e, c in self._terms.items()}, self.rational)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            rational = self.rational or (isinstance(other, Fraction) and other.denominator != 1)
            return QLaurent({e: c * other for e, c in self._terms.items()}, rational)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[int, Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                _accumulate(terms, e1 + e2, c1 * c2)
        return QLaurent(terms, self.rational or other.rational)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'QLaurent':
        if n < 0:
            if self.is_monomial():
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return QLaurent({-e * -n: c ** -n})
            raise ValueError("only unit monomials have negative powers")
        result = QLaurent.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- substitutions ----------------------------------------------------

    def shift(self, quarters: int) -> 'QLaurent':
        """Multiply by q^(quarters/4)."""
        return QLaurent({e + quarters: c for e, c in self._terms.items()}, self.rational)

    def conjugate(self) -> 'QLaurent':
        """The bar involution q^(1/4) -> q^(-1/4)."""
        return QLaurent({-e: c for e, c in self._terms.items()}, self.rational)

    def scale_exponents(self, k: int) -> 'QLaurent':
        """Substitute q -> q^k."""
        return QLaurent({e * k: c for e, c in self._terms.items()}, self.rational)

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        return ' + '.join(f"{c}*q^({e}/4)" for e, c in self.items())

    def __repr__(self) -> str:
        return f"QLaurent('{self}')"


def _coerce(other):
    if isinstance(other, QLaurent):
        return other
    if isinstance(other, int):
        return QLaurent.constant(other)
    if isinstance(other, Fraction):
        return QLaurent({0: other}, rational=other.denominator != 1)
    return NotImplemented


ZERO = QLaurent()
ONE = QLaurent.constant(1)


def _to_poly(f: QLaurent) -> sympy.Poly:
    low = f.valuation()
    rep = {(e - low,): sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for e, c in f.items()}
    return sympy.Poly.from_dict(rep, _X, domain=sympy.QQ)


def exact_divide(f: QLaurent, g: QLaurent, rational: bool = False) -> Optional[QLaurent]:
    """Return h with f = g*h, or None when no such Laurent polynomial exists.

    With ``rational=False`` the quotient must also have integer coefficients.
    """
    if not g:
        raise ZeroDivisionError("exact_divide by the zero polynomial")
    if not f:
        return QLaurent()
    quo, rem = _to_poly(f).div(_to_poly(g))
    if not rem.is_zero:
        return None
    shift = f.valuation() - g.valuation()
    terms = {}
    for (k,), c in quo.terms():
        terms[k + shift] = Fraction(int(c.p), int(c.q))
    h = QLaurent(terms, rational=True)
    if rational:
        return h
    if not h.is_integral():
        return None
    return h.to_integral()


def divide_or_raise(f: QLaurent, g: QLaurent, rational: bool = False) -> QLaurent:
    h = exact_divide(f, g, rational=rational)
    if h is None:
        raise NotDivisibleError(f"({f}) is not divisible by ({g})")
    return h


# -- q-combinatorics -------------------------------------------------------

def q_braces(n: int) -> QLaurent:
    """{n} = q^(n/2) - q^(-n/2)."""
    terms: Dict[int, int] = {}
    _accumulate(terms, 2 * n, 1)
    _accumulate(terms, -2 * n, -1)
    return QLaurent(terms)


def q_bracket(n: int) -> QLaurent:
    """The quantum integer [n] = {n}/{1}."""
    sign = 1 if n >= 0 else -1
    m = abs(n)
    return QLaurent({2 * (m - 1 - 2 * i): sign for i in range(m)})


def q_lambda(n: int) -> QLaurent:
    """lambda_n = q^(n/2) + q^(-n/2)."""
    terms: Dict[int, int] = {}
    _accumulate(terms, 2 * n, 1)
    _accumulate(terms, -2 * n, 1)
    return QLaurent(terms)


@lru_cache(maxsize=None)
def q_factorial_braces(n: int) -> QLaurent:
    """{n}! = {1}{2}...{n}."""
    if n <= 0:
        return ONE
    return q_factorial_braces(n - 1) * q_braces(n)


@lru_cache(maxsize=None)
def q_pochhammer(a: int, m: int) -> QLaurent:
    """(q^a; q)_m = (1 - q^a)(1 - q^(a+1))...(1 - q^(a+m-1))."""
    if m <= 0:
        return ONE
    return q_pochhammer(a, m - 1) * (ONE - QLaurent.q_power(a + m - 1))


def X_poly(k: int) -> QLaurent:
    """X_k = (q;q)_k / (q;q)_floor(k/2)."""
    half = k // 2
    return q_pochhammer(half + 1, k - half)


@lru_cache(maxsize=None)
def q_bracket_binom(n: int, k: int) -> QLaurent:
    """Symmetric q-binomial {n}!/({k}!{n-k}!); zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return q_bracket_binom(n - 1, k - 1).shift(-2 * (n - k)) + q_bracket_binom(n - 1, k).shift(2 * k)


@lru_cache(maxsize=None)
def q_round_binom(m: int, n: int) -> QLaurent:
    """(q^(m-n+1); q)_n / (q; q)_n for any integer m."""
    if n < 0:
        raise ValueError("q_round_binom needs n >= 0")
    if n == 0:
        return ONE
    return divide_or_raise(q_pochhammer(m - n + 1, n), q_pochhammer(1, n))


# -- two variables ----------------------------------------------------------

class ZQLaurent:
    """Element of Z[z^(±1), q^(±1/4)], stored as z-exponent -> QLaurent."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[int, Union[QLaurent, Coeff]]] = None) -> None:
        clean: Dict[int, QLaurent] = {}
        for j, c in (terms or {}).items():
            c = _coerce(c)
            if c:
                clean[int(j)] = c
        self._terms = clean

    @classmethod
    def z_power(cls, j: int, coeff: Union[QLaurent, Coeff] = 1) -> 'ZQLaurent':
        return cls({j: coeff})

    @classmethod
    def constant(cls, coeff: Union[QLaurent, Coeff]) -> 'ZQLaurent':
        return cls({0: coeff})

    def items(self) -> Iterator[Tuple[int, QLaurent]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, j: int) -> QLaurent:
        return self._terms.get(j, ZERO)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _combine(self, other: 'ZQLaurent', sign: int) -> 'ZQLaurent':
        terms = dict(self._terms)
        for j, c in other._terms.items():
            terms[j] = terms.get(j, ZERO) + c * sign
        return ZQLaurent(terms)

    def __add__(self, other):
        other = _coerce_z(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_z(other)
        if other is NotImplemented:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = _coerce_z(other)
        if other is NotImplemented:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self) -> 'ZQLaurent':
        return ZQLaurent({j: -c for j, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QLaurent)):
            return ZQLaurent({j: c * other for j, c in self._terms.items()})
        other = _coerce_z(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[int, QLaurent] = {}
        for j1, c1 in self._terms.items():
            for j2, c2 in other._terms.items():
                terms[j1 + j2] = terms.get(j1 + j2, ZERO) + c1 * c2
        return ZQLaurent(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'ZQLaurent':
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = ZQLaurent.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = _coerce_z(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def sigma(self) -> 'ZQLaurent':
        """The involution z -> z^(-1)."""
        return ZQLaurent({-j: c for j, c in self._terms.items()})

    def shift_z(self, c: int) -> 'ZQLaurent':
        """Substitute z -> q^c z."""
        return ZQLaurent({j: coeff.shift(4 * c * j) for j, coeff in self._terms.items()})

    def evaluate_z(self, quarters: int) -> QLaurent:
        """Substitute z -> q^(quarters/4)."""
        result = ZERO
        for j, coeff in self._terms.items():
            result = result + coeff.shift(quarters * j)
        return result

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        return ' + '.join(f"({c})*z^{j}" for j, c in self.items())

    def __repr__(self) -> str:
        return f"ZQLaurent('{self}')"


def _coerce_z(other):
    if isinstance(other, ZQLaurent):
        return other
    if isinstance(other, (int, Fraction, QLaurent)):
        return ZQLaurent.constant(other)
    return NotImplemented


@lru_cache(maxsize=None)
def pochhammer(a: int, m: int) -> ZQLaurent:
    """(q^a z; q)_m as a polynomial in z."""
    if m < 0:
        raise ValueError("pochhammer needs m >= 0")
    if m == 0:
        return ZQLaurent.constant(1)
    factor = ZQLaurent({0: 1, 1: -QLaurent.q_power(a + m - 1)})
    return pochhammer(a, m - 1) * factor


def pochhammer_newton(a: int, m: int) -> ZQLaurent:
    """(q^a z; q)_m through its q-binomial expansion in z."""
    terms = {}
    for j in range(m + 1):
        sign = -1 if j % 2 else 1
        terms[j] = q_round_binom(m, j).shift(4 * (j * (j - 1) // 2 + a * j)) * sign
    return ZQLaurent(terms)
