"""Divisibility engine for the ideal I_k and the evaluation maps lambda_Q.

Everything here either returns an exact quotient or raises
``FalsificationError``: a failed division is a counterexample, not a
routine error.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .cyclo import CycElt, GroupRingAccumulator, O_xi, RootSpec, divides, ev_xi, x_k
from .errors import FalsificationError
from .qlaurent import (ONE, ZERO, QLaurent, X_poly, ZQLaurent, divide_or_raise, exact_divide,
                       pochhammer, q_pochhammer, q_round_binom)

logger = logging.getLogger("wrtkernel.ideal_div")


@dataclass(frozen=True)
class QuadForm:
    a2: int
    a1: int = 0
    a0: int = 0

    def __call__(self, n: int) -> int:
        return self.a2 * n * n + self.a1 * n + self.a0

    def __str__(self) -> str:
        return f"Q(n)={self.a2}n^2+{self.a1}n+{self.a0}"


@dataclass(frozen=True)
class IkElement:
    """sum of coeff * z^d * (q^a z; q)_k over ``combination``."""

    k: int
    combination: Tuple[Tuple[QLaurent, int, int], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"I_k needs k >= 0, got {self.k}")
        for coeff, _, _ in self.combination:
            if not coeff.in_z_q() or not coeff.is_integral():
                raise ValueError(f"generator coefficient {coeff} is not in Z[q^(+-1)]")

    @classmethod
    def generator(cls, k: int, d: int = 0, a: int = 0) -> 'IkElement':
        return cls(k, ((ONE, d, a),))

    def __add__(self, other: 'IkElement') -> 'IkElement':
        if other.k != self.k:
            raise ValueError("adding elements of different ideals")
        return IkElement(self.k, self.combination + other.combination)

    def materialize(self) -> ZQLaurent:
        result = ZQLaurent()
        for coeff, d, a in self.combination:
            result = result + pochhammer(a, self.k) * ZQLaurent.z_power(d, coeff)
        return result

    def __str__(self) -> str:
        parts = [f"({c})*z^{d}*(q^{a}z;q)_{self.k}" for c, d, a in self.combination]
        return " + ".join(parts) or "0"


def lambda_Q(f: ZQLaurent, Q: QuadForm) -> QLaurent:
    """The Z[q^(+-1)]-linear map z^j -> q^Q(j)."""
    result = ZERO
    for j, coeff in f.items():
        result = result + coeff.shift(4 * Q(j))
    return result


def lambda_Q_reduced(f: ZQLaurent, Q: QuadForm) -> QLaurent:
    """lambda_Q through the substitution z -> q^a1 z, which removes the linear term."""
    return lambda_Q(f.shift_z(Q.a1), QuadForm(Q.a2, 0, 0)).shift(4 * Q.a0)


def check_thm1(e: IkElement, Q: QuadForm) -> QLaurent:
    """lambda_Q(e) / X_k, certified exact in Z[q^(+-1)]."""
    f = e.materialize()
    value = lambda_Q(f, Q)
    reduced = lambda_Q_reduced(f, Q)
    if value != reduced:
        raise FalsificationError(f"lambda_Q and its a1-reduction disagree on {e}, {Q}", instance=str(e))
    quotient = exact_divide(value, X_poly(e.k))
    if quotient is None:
        raise FalsificationError(f"lambda_Q({e}) is not divisible by X_{e.k} for {Q}", instance=str(e))
    return quotient


def andrews_sum(k: int, Q: QuadForm) -> QLaurent:
    """X_k-quotient of sum_j (-1)^j binom(k, j) q^(Q(j) + j(j-1)/2)."""
    total = ZERO
    for j in range(k + 1):
        term = q_round_binom(k, j).shift(4 * (Q(j) + j * (j - 1) // 2))
        total = total + (term if j % 2 == 0 else -term)
    quotient = exact_divide(total, X_poly(k))
    if quotient is None:
        raise FalsificationError(f"alternating sum for k={k}, {Q} is not divisible by X_{k}")
    return quotient


def y_poly(l: int) -> ZQLaurent:
    """y_l = z^(-l) (1 - z^(-1)) (q^(-l) z; q)_(2l+1)."""
    return ZQLaurent({-l: 1, -l - 1: -1}) * pochhammer(-l, 2 * l + 1)


def check_symmetric_divisibility(m: int, l: int, Q: QuadForm) -> QLaurent:
    """lambda_Q((z + 1/z)^m y_l) / (2 (q^(l+1); q)_(l+1)) for Q without linear term."""
    if Q.a1:
        raise ValueError("the symmetric divisibility needs a1 = 0")
    f = ZQLaurent({1: 1, -1: 1}) ** m * y_poly(l)
    value = lambda_Q(f, Q)
    quotient = exact_divide(value, q_pochhammer(l + 1, l + 1) * 2)
    if quotient is None:
        raise FalsificationError(f"lambda_Q((z+1/z)^{m} y_{l}) not divisible by 2(q^{l + 1};q)_{l + 1}, {Q}")
    return quotient


def check_pochhammer_divisibility(m: int, l: int, Q: QuadForm) -> QLaurent:
    """lambda_Q(z^m (q^(-l) z; q)_(2l+1)) / (q^(l+1); q)_(l+1) for Q without linear term."""
    if Q.a1:
        raise ValueError("the Pochhammer divisibility needs a1 = 0")
    value = lambda_Q(pochhammer(-l, 2 * l + 1) * ZQLaurent.z_power(m), Q)
    quotient = exact_divide(value, q_pochhammer(l + 1, l + 1))
    if quotient is None:
        raise FalsificationError(f"lambda_Q(z^{m}(q^-{l}z;q)_{2 * l + 1}) not divisible, {Q}")
    return quotient


def evaluation_criterion(e: IkElement, window: Iterable[int] = range(-6, 7)) -> bool:
    """Necessary condition for I_k membership: f(q^b, q) divisible by (q; q)_k on a window."""
    f = e.materialize()
    modulus = q_pochhammer(1, e.k)
    for b in window:
        if exact_divide(f.evaluate_z(4 * b), modulus) is None:
            logger.debug("f(q^%d, q) is not divisible by (q;q)_%d", b, e.k)
            return False
    return True


# -- polynomials in several z variables ---------------------------------------

Exponents = Tuple[int, ...]


class ZnPoly:
    """Polynomial in z_1..z_n with QLaurent coefficients over a QLaurent denominator."""

    __slots__ = ('nvars', 'terms', 'denominator')

    def __init__(self, nvars: int, terms: Mapping[Exponents, QLaurent] = None,
                 denominator: QLaurent = ONE) -> None:
        self.nvars = nvars
        self.terms: Dict[Exponents, QLaurent] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"monomial {exps} has the wrong number of variables")
            if any(e < 0 for e in exps):
                raise ValueError("ZnPoly holds polynomials, not Laurent polynomials, in z")
            if c:
                self.terms[tuple(exps)] = c
        self.denominator = denominator

    @classmethod
    def from_univariate(cls, f: ZQLaurent, var: int, nvars: int) -> 'ZnPoly':
        terms = {}
        for j, c in f.items():
            exps = [0] * nvars
            exps[var] = j
            terms[tuple(exps)] = c
        return cls(nvars, terms)

    def __mul__(self, other: 'ZnPoly') -> 'ZnPoly':
        terms: Dict[Exponents, QLaurent] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, ZERO) + c1 * c2
        return ZnPoly(self.nvars, terms, self.denominator * other.denominator)

    def degrees(self) -> Exponents:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def numerator_at(self, quarters: Sequence[int]) -> QLaurent:
        """Numerator at z_i = q^(quarters_i / 4)."""
        result = ZERO
        for exps, c in self.terms.items():
            result = result + c.shift(sum(e * s for e, s in zip(exps, quarters)))
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZnPoly):
            return NotImplemented
        left = {e: c * other.denominator for e, c in self.terms.items()}
        right = {e: c * self.denominator for e, c in other.terms.items()}
        return {e: c for e, c in left.items() if c} == {e: c for e, c in right.items() if c}

    __hash__ = None


def _basis_at(k: int, a: int) -> QLaurent:
    """(q^(-k); q)_a / (q; q)_a."""
    if a > k:
        return ZERO
    value = q_round_binom(k, a).shift(4 * (a * (a - 1) // 2 - k * a))
    return -value if a % 2 else value


def _index_box(bound: Exponents) -> List[Exponents]:
    boxes: List[Exponents] = [()]
    for b in bound:
        boxes = [prefix + (i,) for prefix in boxes for i in range(b + 1)]
    return sorted(boxes, key=lambda ks: (sum(ks), ks))


def expand_pochhammer_basis(f: ZnPoly) -> Dict[Exponents, QLaurent]:
    """Coefficients of f in the basis prod_i (z_i; q)_(k_i) / (q; q)_(k_i).

    Solved by evaluating at z_i = q^(-k_i) in order of |k|; every coefficient
    must land in Z[q^(+-1)].
    """
    table: Dict[Exponents, QLaurent] = {}
    box = _index_box(f.degrees())
    for ks in box:
        value = f.numerator_at([-4 * k for k in ks])
        value = divide_or_raise(value, f.denominator, rational=True) if value else value
        for lower, c in table.items():
            if all(a <= k for a, k in zip(lower, ks)):
                weight = ONE
                for k, a in zip(ks, lower):
                    weight = weight * _basis_at(k, a)
                value = value - c * weight
        # the diagonal entry prod (q^-k; q)_k / (q; q)_k is +-q^e
        diagonal = ONE
        for k in ks:
            diagonal = diagonal * _basis_at(k, k)
        (e, sign), = diagonal.terms.items()
        coeff = value.shift(-e) * sign
        if coeff:
            if not (coeff.is_integral() and coeff.in_z_q()):
                raise FalsificationError(f"coefficient at {ks} is not in Z[q^(+-1)]: {coeff}")
            table[ks] = coeff.to_integral()
    logger.debug("expanded a polynomial of degrees %s into %d basis terms", f.degrees(), len(table))
    return table


def materialize_basis(table: Mapping[Exponents, QLaurent], nvars: int) -> ZnPoly:
    """Re-expand a coefficient table as a ZnPoly over the common denominator."""
    if not table:
        return ZnPoly(nvars)
    top = [max(ks[i] for ks in table) for i in range(nvars)]
    denominator = ONE
    for d in top:
        denominator = denominator * q_pochhammer(1, d)
    total: Dict[Exponents, QLaurent] = {}
    for ks, c in table.items():
        term = ZnPoly(nvars, {(0,) * nvars: c})
        for i, k in enumerate(ks):
            term = term * ZnPoly.from_univariate(pochhammer(0, k), i, nvars)
            term = term * ZnPoly(nvars, {(0,) * nvars: divide_or_raise(q_pochhammer(1, top[i]),
                                                                          q_pochhammer(1, k))})
        for exps, coeff in term.terms.items():
            total[exps] = total.get(exps, ZERO) + coeff
    return ZnPoly(nvars, total, denominator)


def product_pochhammer(a: int, k: int) -> ZnPoly:
    """(q^a z_1 z_2; q)_k in two variables."""
    terms = {}
    for j, c in pochhammer(a, k).items():
        terms[(j, j)] = c
    return ZnPoly(2, terms)


def check_two_variable_expansion(a: int, k: int) -> Dict[Exponents, QLaurent]:
    """Expand (q^a z_1 z_2; q)_k / (q; q)_k and check its support and integrality."""
    f = product_pochhammer(a, k)
    f = ZnPoly(2, f.terms, q_pochhammer(1, k))
    table = expand_pochhammer_basis(f)
    for k1, k2 in table:
        if k1 > k or k2 > k:
            raise FalsificationError(f"basis term ({k1}, {k2}) exceeds k={k}")
    if materialize_basis(table, 2) != f:
        raise FalsificationError(f"expansion of (q^{a} z1 z2;q)_{k} does not reproduce its input")
    return table


# -- at a root of unity ------------------------------------------------------

def _root_sum(e: IkElement, Q: QuadForm, spec: RootSpec) -> CycElt:
    """sum_{n=0}^{r-1} xi^Q(n) f(xi^n, xi)."""
    acc = GroupRingAccumulator(spec.t)
    f = e.materialize()
    for n in range(spec.r):
        for j, coeff in f.items():
            acc.add_qlaurent(coeff, spec, quarters=4 * (Q(n) + n * j))
    return acc.result()


def check_div1(e: IkElement, Q: QuadForm, spec: RootSpec) -> CycElt:
    """The root-of-unity sum of e divided by x_k O_xi, certified integral."""
    if not 0 <= e.k < spec.r:
        raise ValueError(f"need 0 <= k < r, got k={e.k}, r={spec.r}")
    total = _root_sum(e, Q, spec)
    quotient = divides(x_k(e.k, spec) * O_xi(spec), total)
    if quotient is None:
        raise FalsificationError(f"sum for {e}, {Q} at {spec} is not divisible by x_{e.k} O_xi")
    return quotient


def check_lemma_xbar(a: int, k: int, Q: QuadForm, spec: RootSpec) -> CycElt:
    """sum_n xi^Q(n) binom(n+a, k)|_xi divided by x_(r-1-k)."""
    r = spec.r
    if not 0 <= k < r:
        raise ValueError(f"need 0 <= k < r, got k={k}, r={r}")
    acc = GroupRingAccumulator(spec.t)
    for n in range(r):
        acc.add_qlaurent(q_round_binom(n + a, k), spec, quarters=4 * Q(n))
    y = acc.result()
    quotient = divides(x_k(r - 1 - k, spec), y)
    if quotient is None:
        raise FalsificationError(f"binomial sum a={a}, k={k}, {Q} at {spec} is not divisible by x_{r - 1 - k}")
    return quotient


def check_xbar_divisibility(k: int, spec: RootSpec) -> CycElt:
    """O_xi divides (xi; xi)_(k//2) x_(r-1-k)."""
    target = ev_xi(q_pochhammer(1, k // 2), spec) * x_k(spec.r - 1 - k, spec)
    quotient = divides(O_xi(spec), target)
    if quotient is None:
        raise FalsificationError(f"O_xi does not divide (xi;xi)_{k // 2} x_{spec.r - 1 - k} at {spec}")
    return quotient
