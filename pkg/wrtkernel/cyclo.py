"""Exact arithmetic in the cyclotomic ring Z[zeta_t] and its fraction field.

Every value at a root of unity lives here. ``RootSpec`` fixes the root:
xi^(1/4) := zeta_t^u with conductor t = 8r (r odd) or 4r (r even), so the
ring Z[zeta_t] contains xi, xi^(1/4) and e_8 = zeta_8.
"""
import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from mpmath import iv

from .errors import DegenerateRootError, RootSpecError
from .misc import get_hash
from .qlaurent import QLaurent, X_poly, q_pochhammer

logger = logging.getLogger("wrtkernel.cyclo")

Scalar = Union[int, Fraction]
_X = sympy.Symbol('x')


@lru_cache(maxsize=None)
def cyclotomic_poly(t: int) -> Tuple[int, ...]:
    """Coefficients of Phi_t, constant term first.

    Obtained by dividing x^t - 1 by Phi_d for every proper divisor d of t.
    """
    if t < 1:
        raise ValueError(f"cyclotomic_poly needs t >= 1, got {t}")
    poly = sympy.Poly(_X ** t - 1, _X, domain=sympy.ZZ)
    for d in sympy.divisors(t)[:-1]:
        poly = poly.exquo(sympy.Poly(list(reversed(cyclotomic_poly(d))), _X, domain=sympy.ZZ))
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def euler_phi(t: int) -> int:
    return len(cyclotomic_poly(t)) - 1


@lru_cache(maxsize=None)
def _power_table(t: int) -> Tuple[Tuple[int, ...], ...]:
    """Row e holds the reduced coordinates of zeta_t^e, 0 <= e < t."""
    phi = cyclotomic_poly(t)
    n = len(phi) - 1
    rows = []
    cur = [0] * n
    cur[0] = 1
    for _ in range(t):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(n):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _normalize(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class GroupRingAccumulator:
    """Collects a sum of c * zeta_t^e and reduces it once at the end."""

    def __init__(self, t: int) -> None:
        self.t = t
        self.vec: List[Scalar] = [0] * t

    def add_power(self, e: int, c: Scalar = 1) -> None:
        self.vec[e % self.t] += c

    def add(self, x: 'CycElt', e: int = 0, c: Scalar = 1) -> None:
        """Add c * zeta_t^e * x."""
        t = self.t
        for i, a in enumerate(x.coeffs):
            if a:
                self.vec[(i + e) % t] += c * a

    def add_qlaurent(self, f: QLaurent, spec: 'RootSpec', quarters: int = 0, c: Scalar = 1) -> None:
        """Add c * ev_xi(q^(quarters/4) * f)."""
        t, u = self.t, spec.u
        for e, a in f.items():
            self.vec[(u * (e + quarters)) % t] += c * a

    def result(self) -> 'CycElt':
        return CycElt.from_group_ring(self.t, self.vec)


class CycElt:
    """Element of Q(zeta_t) in the power basis 1, zeta, ..., zeta^(phi(t)-1)."""

    __slots__ = ('t', 'coeffs')

    def __init__(self, t: int, coeffs: Sequence[Scalar]) -> None:
        if len(coeffs) != euler_phi(t):
            raise ValueError(f"expected {euler_phi(t)} coefficients for t={t}, got {len(coeffs)}")
        self.t = t
        self.coeffs = tuple(_normalize(c) for c in coeffs)

    @classmethod
    def zero(cls, t: int) -> 'CycElt':
        return cls(t, [0] * euler_phi(t))

    @classmethod
    def from_int(cls, t: int, n: Scalar) -> 'CycElt':
        coeffs = [0] * euler_phi(t)
        coeffs[0] = n
        return cls(t, coeffs)

    @classmethod
    def one(cls, t: int) -> 'CycElt':
        return cls.from_int(t, 1)

    @classmethod
    def zeta_power(cls, t: int, e: int) -> 'CycElt':
        return cls(t, _power_table(t)[e % t])

    @classmethod
    def from_group_ring(cls, t: int, vec: Sequence[Scalar]) -> 'CycElt':
        """Reduce sum_e vec[e] * zeta_t^e, 0 <= e < t."""
        table = _power_table(t)
        n = euler_phi(t)
        out = list(vec[:n])
        for e in range(n, t):
            c = vec[e]
            if not c:
                continue
            row = table[e]
            for i in range(n):
                if row[i]:
                    out[i] += c * row[i]
        return cls(t, out)

    @classmethod
    def from_json(cls, data: Mapping) -> 'CycElt':
        return cls(int(data['t']), [Fraction(c) for c in data['coeffs']])

    def to_json(self) -> dict:
        return {"t": self.t, "coeffs": [c if isinstance(c, int) else str(c) for c in self.coeffs]}

    def digest(self) -> str:
        return get_hash(self)

    # -- predicates -------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def rational_value(self) -> Optional[Fraction]:
        """The element as a rational number, or None if it is irrational."""
        if any(self.coeffs[1:]):
            return None
        return Fraction(self.coeffs[0])

    def is_unit(self) -> bool:
        return bool(self) and self.is_integral() and divides(self, CycElt.one(self.t)) is not None

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: 'CycElt') -> None:
        if other.t != self.t:
            raise ValueError(f"mixing conductors {self.t} and {other.t}")

    def _lift(self, other) -> Optional['CycElt']:
        if isinstance(other, CycElt):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycElt.from_int(self.t, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return CycElt(self.t, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return CycElt(self.t, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> 'CycElt':
        return CycElt(self.t, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycElt(self.t, [a * other for a in self.coeffs])
        other = self._lift(other)
        if other is None:
            return NotImplemented
        t = self.t
        acc = GroupRingAccumulator(t)
        vec = acc.vec
        right = [(j, b) for j, b in enumerate(other.coeffs) if b]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in right:
                vec[(i + j) % t] += a * b
        return acc.result()

    __rmul__ = __mul__

    def inverse(self) -> 'CycElt':
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_t)")
        return _inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return CycElt(self.t, [Fraction(a) / other for a in self.coeffs])
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> 'CycElt':
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = CycElt.one(self.t)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_zeta_power(self, e: int) -> 'CycElt':
        acc = GroupRingAccumulator(self.t)
        acc.add(self, e)
        return acc.result()

    def galois(self, a: int) -> 'CycElt':
        """Apply zeta_t -> zeta_t^a (a coprime to t)."""
        if math.gcd(a, self.t) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.t}")
        acc = GroupRingAccumulator(self.t)
        for i, c in enumerate(self.coeffs):
            if c:
                acc.add_power(a * i, c)
        return acc.result()

    def conjugate(self) -> 'CycElt':
        """Complex conjugation, zeta -> zeta^(-1)."""
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Absolute norm down to Q."""
        phi = sympy.Poly(list(reversed(cyclotomic_poly(self.t))), _X, domain=sympy.QQ)
        res = sympy.resultant(phi.as_expr(), _as_poly(self).as_expr(), _X)
        res = sympy.Rational(res)
        return Fraction(int(res.p), int(res.q))

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.t, self.coeffs))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + f"]@{self.t}"

    def __repr__(self) -> str:
        return f"CycElt({self.t}, {list(self.coeffs)!r})"


def _as_poly(x: CycElt) -> sympy.Poly:
    rep = {(i,): sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
           for i, c in enumerate(x.coeffs) if c}
    return sympy.Poly.from_dict(rep or {(0,): 0}, _X, domain=sympy.QQ)


@lru_cache(maxsize=4096)
def _inverse(x: CycElt) -> CycElt:
    phi = sympy.Poly(list(reversed(cyclotomic_poly(x.t))), _X, domain=sympy.QQ)
    inv = _as_poly(x).invert(phi)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
    coeffs += [0] * (euler_phi(x.t) - len(coeffs))
    return CycElt(x.t, coeffs)


def divides(x: CycElt, y: CycElt) -> Optional[CycElt]:
    """Return y/x when it lies in Z[zeta_t], otherwise None."""
    if not x:
        raise ZeroDivisionError("divides: the divisor is zero")
    quotient = y * x.inverse()
    return quotient if quotient.is_integral() else None


def is_associate(x: CycElt, y: CycElt) -> bool:
    """x ~ y: x/y is a unit of Z[zeta_t]."""
    if not x and not y:
        raise ValueError("is_associate: both elements are zero")
    if not x or not y:
        return False
    return divides(y, x) is not None and divides(x, y) is not None


# -- root specifications ---------------------------------------------------

class Group(str, enum.Enum):
    SU2 = "su2"
    SO3 = "so3"


def conductor(r: int) -> int:
    return 8 * r if r % 2 else 4 * r


def _order(e: int, t: int) -> int:
    return t // math.gcd(e, t)


def default_u(r: int) -> int:
    """Smallest u with ord(zeta_t^(4u)) = r and ord(zeta_t^u) = 4r."""
    t = conductor(r)
    for u in range(1, t):
        if _order(4 * u, t) == r and _order(u, t) == 4 * r:
            return u
    raise RootSpecError(f"no primitive fourth root for r={r}")


@dataclass(frozen=True)
class RootSpec:
    """The root xi of order r together with the choice xi^(1/4) = zeta_t^u."""

    r: int
    u: Optional[int] = None
    group: Group = Group.SU2
    allow_degenerate: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        try:
            group = Group(self.group)
        except ValueError as err:
            raise RootSpecError(f"unknown group {self.group!r}") from err
        object.__setattr__(self, 'group', group)
        r = self.r
        if r < 2:
            raise RootSpecError(f"r must be >= 2, got {r}")
        if group is Group.SO3 and r % 2 == 0:
            raise RootSpecError(f"SO(3) needs an odd r >= 3, got {r}")
        t = conductor(r)
        u = default_u(r) if self.u is None else self.u % t
        object.__setattr__(self, 'u', u)
        if _order(4 * u, t) != r:
            raise RootSpecError(f"zeta_{t}^{4 * u} does not have order {r}")
        if group is Group.SU2 and self.ord4 == 2 * r and not self.allow_degenerate:
            raise DegenerateRootError(
                f"SU(2) with ord(xi^(1/4)) = 2r (r={r}, u={u}): F at U^+ and U^- vanishes, "
                "so the invariant is not defined for this root")

    @property
    def t(self) -> int:
        return conductor(self.r)

    @property
    def ord4(self) -> int:
        return _order(self.u, self.t)

    @property
    def is_degenerate(self) -> bool:
        return self.group is Group.SU2 and self.ord4 == 2 * self.r

    def zeta(self, e: int) -> CycElt:
        return CycElt.zeta_power(self.t, e)

    def q_power(self, quarters: int) -> CycElt:
        """ev_xi(q^(quarters/4))."""
        return self.zeta(self.u * quarters)

    def xi(self, k: int = 1) -> CycElt:
        return self.q_power(4 * k)

    def e8(self) -> CycElt:
        return self.zeta(self.t // 8)

    def imag_unit(self) -> CycElt:
        return self.zeta(self.t // 4)

    def one(self) -> CycElt:
        return CycElt.one(self.t)

    def const(self, n: Scalar) -> CycElt:
        return CycElt.from_int(self.t, n)

    def fourth_roots(self) -> List[int]:
        """The four exponents u' with zeta_t^(4u') = xi."""
        t = self.t
        return sorted((self.u + j * (t // 4)) % t for j in range(4))

    def with_u(self, u: int, allow_degenerate: bool = False) -> 'RootSpec':
        return RootSpec(self.r, u, self.group, allow_degenerate)

    def with_group(self, group: Union[Group, str]) -> 'RootSpec':
        return RootSpec(self.r, self.u, Group(group), self.allow_degenerate)

    @classmethod
    def valid(cls, r: int, group: Union[Group, str] = Group.SU2) -> List['RootSpec']:
        """Every admissible choice of u for this r and group."""
        specs = []
        for u in range(conductor(r)):
            try:
                specs.append(cls(r, u, Group(group)))
            except RootSpecError:
                continue
        return specs

    def to_json(self) -> dict:
        return {"r": self.r, "u": self.u, "group": self.group.value}

    @classmethod
    def from_json(cls, data: Mapping) -> 'RootSpec':
        return cls(int(data['r']), data.get('u'), Group(data.get('group', 'su2')))

    def __str__(self) -> str:
        return f"{self.group.value}:r={self.r},u={self.u}"


def ev_xi(f: QLaurent, spec: RootSpec) -> CycElt:
    """Substitute q^(1/4) -> xi^(1/4) = zeta_t^u."""
    acc = GroupRingAccumulator(spec.t)
    acc.add_qlaurent(f, spec)
    return acc.result()


def O_xi(spec: RootSpec) -> CycElt:
    """(xi; xi)_floor((r-1)/2)."""
    return ev_xi(q_pochhammer(1, (spec.r - 1) // 2), spec)


def x_k(k: int, spec: RootSpec) -> CycElt:
    return ev_xi(X_poly(k), spec)


# -- complex embedding ------------------------------------------------------

@dataclass(frozen=True)
class ComplexInterval:
    real: object
    imag: object

    def real_sign(self) -> int:
        """1 or -1 when the real interval excludes zero, else 0."""
        if self.real.a > 0:
            return 1
        if self.real.b < 0:
            return -1
        return 0


def complex_embed(x: CycElt, precision: int = 53) -> ComplexInterval:
    """Interval image of x under zeta_t -> exp(2 pi i / t)."""
    saved = iv.prec
    try:
        iv.prec = precision
        re = iv.mpf(0)
        im = iv.mpf(0)
        for j, c in enumerate(x.coeffs):
            if not c:
                continue
            c = Fraction(c)
            value = iv.mpf(c.numerator) / c.denominator
            angle = 2 * iv.pi * j / x.t
            re += value * iv.cos(angle)
            im += value * iv.sin(angle)
        return ComplexInterval(re, im)
    finally:
        iv.prec = saved


def real_sign(x: CycElt, max_precision: int = 4096) -> int:
    """Sign of the real part of the embedding, raising precision as needed."""
    precision = 53
    while precision <= max_precision:
        sign = complex_embed(x, precision).real_sign()
        if sign:
            return sign
        logger.debug("real part of %s undecided at %d bits", x, precision)
        precision *= 2
    return 0


def positive_representative(x: CycElt) -> CycElt:
    """Whichever of x, -x has positive real embedding."""
    sign = real_sign(x)
    if sign == 0:
        raise ValueError(f"{x} has vanishing real part")
    return x if sign > 0 else -x


def sqrt_in_ring(n: int, spec: RootSpec) -> CycElt:
    """Integral square root of 2 or r with positive embedding."""
    if n == 2:
        e8 = spec.e8()
        root = e8 + e8.conjugate()
    elif n == spec.r:
        i = spec.imag_unit()
        root = spec.one()
        for j in range(1, (spec.r - 1) // 2 + 1):
            root = root * i * (spec.q_power(2 * j) - spec.q_power(-2 * j))
        if spec.r % 2 == 0:
            root = root * sqrt_in_ring(2, spec)
    else:
        raise ValueError(f"sqrt_in_ring supports 2 and r={spec.r}, got {n}")
    root = positive_representative(root)
    if root * root != spec.const(n):
        raise ArithmeticError(f"constructed square root of {n} squares to {root * root}")
    return root


def product(values: Iterable[CycElt], t: int) -> CycElt:
    result = CycElt.one(t)
    for v in values:
        result = result * v
    return result
