"""WRT invariants of surgery presentations at a root of unity.

The group travels with the ``RootSpec``: SO(3) sums run over odd colors
only, SU(2) sums over all colors in [0, 4r).
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclo import (CycElt, Group, GroupRingAccumulator, RootSpec, divides, ev_xi,
                    is_associate, positive_representative, sqrt_in_ring, x_k)
from .errors import DegenerateRootError, FalsificationError, RootSpecError
from .gausssum import RootOfUnity, gauss_reduce
from .jones import (FreeComponent, SurgeryBlock, SurgeryPresentation, block_value, free_value, habiro_basis,
                    hopf_pair, jones_value, presentation_blocks, unknot)
from .qlaurent import QLaurent, pochhammer, q_braces, q_bracket

logger = logging.getLogger("wrtkernel.wrt")


def _colors(spec: RootSpec) -> range:
    if spec.group is Group.SO3:
        return range(1, 4 * spec.r, 2)
    return range(4 * spec.r)


def _quarter(x: CycElt) -> CycElt:
    return x / 4


def _certify(x: CycElt, what: str) -> CycElt:
    if not x.is_integral():
        raise FalsificationError(f"{what} is not in Z[zeta_t]: {x}")
    return x


@lru_cache(maxsize=None)
def _basis_column(k: int, eps: int, spec: RootSpec) -> Tuple[CycElt, ...]:
    """ev_xi(basis(n, k, eps) {n}) for every color n in [0, 4r)."""
    return tuple(ev_xi(habiro_basis(n, k, eps) * q_braces(n), spec) for n in range(4 * spec.r))


@lru_cache(maxsize=None)
def H(spec: RootSpec, k: int, b: int, eps: int) -> CycElt:
    """H^G(k, b, eps), the Laplace sum of one block."""
    if eps not in (0, 1) or k < 0:
        raise ValueError(f"H needs k >= 0 and eps in {{0, 1}}, got k={k}, eps={eps}")
    column = _basis_column(k, eps, spec)
    acc = GroupRingAccumulator(spec.t)
    for n in _colors(spec):
        if column[n]:
            acc.add(column[n], spec.u * b * (n * n - 1))
    return _certify(_quarter(acc.result()), f"H({k}, {b}, {eps}) at {spec}")


def H_reduced(spec: RootSpec, k: int, b: int, eps: int) -> CycElt:
    """2 / x_(2k+1+eps) times the sum of q^(b(n^2-1)/4 - 3 eps n/2) z^-k (q^-k z; q)_(2k+1+eps)."""
    x = x_k(2 * k + 1 + eps, spec)
    if not x:
        raise RootSpecError(f"x_{2 * k + 1 + eps} vanishes at {spec}; the reduced form is undefined")
    f = pochhammer(-k, 2 * k + 1 + eps)
    acc = GroupRingAccumulator(spec.t)
    for n in _colors(spec):
        base = b * (n * n - 1) - 6 * eps * n
        for j, coeff in f.items():
            acc.add_qlaurent(coeff, spec, quarters=base + 4 * n * (j - k))
    value = _quarter(acc.result()) * 2 / x
    full = H(spec, k, b, eps)
    if bool(value) != bool(full) or (value and not is_associate(value, full)):
        raise FalsificationError(f"reduced H({k}, {b}, {eps}) is not associate to H at {spec}")
    return value


# -- F, D and tau -------------------------------------------------------------

def mu_quarters(pres: SurgeryPresentation, r: int) -> int:
    """Quarter-exponent of xi^mu, mu = -r(r-2)/4 sum p_ij s^_i s^_j."""
    hats = [s - 1 for s in pres.colors]
    p = pres.colored_linking
    total = sum(p[i][j] * hats[i] * hats[j] for i in range(len(hats)) for j in range(len(hats)))
    return -r * (r - 2) * total


@lru_cache(maxsize=None)
def _block_sum(block: SurgeryBlock, spec: RootSpec) -> CycElt:
    acc = GroupRingAccumulator(spec.t)
    for n in _colors(spec):
        acc.add_qlaurent(block_value(block, n) * q_bracket(n), spec)
    return _quarter(acc.result())


def _table_sum(pres: SurgeryPresentation, spec: RootSpec) -> CycElt:
    """Literal multi-sum over a Jones table, colors folded into [1, 2r) by 2r-periodicity."""
    period = 2 * spec.r
    cache: Dict[Tuple[int, ...], CycElt] = {}
    acc = GroupRingAccumulator(spec.t)
    for n in itertools.product(_colors(spec), repeat=pres.m):
        if any(c % period == 0 for c in n):
            continue
        folded = tuple(c % period for c in n)
        if folded not in cache:
            weight = QLaurent.constant(1)
            for c in folded:
                weight = weight * q_bracket(c)
            cache[folded] = ev_xi(jones_value(pres, folded) * weight, spec)
        acc.add(cache[folded])
    return acc.result() / (4 ** pres.m)


def F(spec: RootSpec, pres: SurgeryPresentation) -> CycElt:
    """F^G of L u L'; SO(3) carries the factor xi^mu."""
    if pres.table is not None:
        value = _table_sum(pres, spec)
    else:
        value = ev_xi(free_value(pres.free), spec)
        for block in pres.blocks:
            value = value * _block_sum(block, spec)
    if spec.group is Group.SO3:
        value = value * spec.q_power(mu_quarters(pres, spec.r))
    return value


def F_unknot(spec: RootSpec, sign: int) -> CycElt:
    return F(spec, unknot(sign))


def _nu(spec: RootSpec) -> CycElt:
    """i (xi^(1/2) - xi^(-1/2)), a real element of absolute value |1 - xi|."""
    return spec.imag_unit() * (spec.q_power(2) - spec.q_power(-2))


@lru_cache(maxsize=None)
def rank_D(spec: RootSpec) -> CycElt:
    """D^G = |F_(U+)| as an element of Z[zeta_t] with positive embedding."""
    if spec.is_degenerate:
        raise DegenerateRootError(f"D is undefined at {spec}: F at U^+ vanishes")
    norm = F_unknot(spec, 1) * F_unknot(spec, -1)
    nu = _nu(spec)
    m = (norm * nu * nu).rational_value()
    if m is None or m.denominator != 1 or m.numerator % spec.r or m.numerator // spec.r not in (1, 2, 4):
        raise FalsificationError(f"|(1 - xi) D|^2 = {m} is not r, 2r or 4r at {spec}")
    ratio = m.numerator // spec.r
    root_r = sqrt_in_ring(spec.r, spec)
    kappa = {1: root_r, 2: root_r * sqrt_in_ring(2, spec), 4: root_r * 2}[ratio]
    D = positive_representative(kappa / nu)
    _certify(D, f"D at {spec}")
    if D * D != norm:
        raise FalsificationError(f"D^2 != F_(U+) F_(U-) at {spec}")
    one_minus_xi = spec.one() - spec.xi()
    for sign in (1, -1):
        if not is_associate(one_minus_xi * D, H(spec, 0, sign, 0)):
            raise FalsificationError(f"(1 - xi) D is not associate to H(0, {sign}, 0) at {spec}")
    return D


@dataclass
class InvariantResult:
    value: CycElt
    group: Group
    spec: RootSpec
    integral: bool
    beta: Tuple[int, int, int]
    certificates: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "group": self.group.value,
            "spec": self.spec.to_json(),
            "integral": self.integral,
            "beta": list(self.beta),
            "certificates": list(self.certificates),
            "digest": self.value.digest(),
        }


def _check_spec(spec: RootSpec) -> None:
    if spec.is_degenerate:
        raise DegenerateRootError(f"tau is undefined at {spec}")


def tau_direct(spec: RootSpec, pres: SurgeryPresentation) -> CycElt:
    """F / (F_(U+)^beta_+ F_(U-)^beta_- D^beta_0)."""
    _check_spec(spec)
    plus, minus, zero = pres.beta
    denominator = F_unknot(spec, 1) ** plus * F_unknot(spec, -1) ** minus
    if zero:
        denominator = denominator * rank_D(spec) ** zero
    return F(spec, pres) / denominator


def tau_diagonal(spec: RootSpec, pres: SurgeryPresentation) -> CycElt:
    """The block formula: sum over k of ev(c(k)) times normalized H factors."""
    _check_spec(spec)
    depth = (spec.r - 2) // 2
    blocks = presentation_blocks(pres, depth)
    eps = blocks.eps
    factors: Dict[Tuple[int, int, int], CycElt] = {}

    def factor(k: int, b: int, e: int) -> CycElt:
        if (k, b, e) not in factors:
            if b:
                factors[k, b, e] = H(spec, k, b, e) / H(spec, 0, 1 if b > 0 else -1, 0)
            else:
                factors[k, b, e] = H(spec, k, 0, e) / (ev_xi(q_braces(1), spec) * rank_D(spec))
        return factors[k, b, e]

    total = CycElt.zero(spec.t)
    for ks, c in blocks.items():
        term = ev_xi(c, spec)
        if not term:
            continue
        for k, b, e in zip(ks, pres.framings, eps):
            term = term * factor(k, b, e)
        total = total + term
    if spec.group is Group.SO3:
        total = total * spec.q_power(mu_quarters(pres, spec.r))
    return total


def tau(spec: RootSpec, pres: SurgeryPresentation) -> InvariantResult:
    """tau^G of the pair (M, L'), computed by both routes and cross-checked."""
    direct = tau_direct(spec, pres)
    diagonal = tau_diagonal(spec, pres)
    if direct != diagonal:
        raise FalsificationError(f"direct and block formulas disagree at {spec}: {direct} vs {diagonal}")
    _certify(direct, f"tau at {spec}")
    logger.debug("tau at %s = %s", spec, direct)
    return InvariantResult(direct, spec.group, spec, True, pres.beta, ["routes-agree", "integral"])


# -- Z/2 invariant and splitting ----------------------------------------------

def _check_z2_spec(spec: RootSpec) -> None:
    if spec.r % 2 == 0:
        raise RootSpecError(f"the Z/2 invariant needs an odd r, got {spec.r}")
    if spec.ord4 == 2 * spec.r:
        raise RootSpecError(f"the Z/2 invariant needs ord(xi^(1/4)) in {{r, 4r}}, got {spec.ord4}")


def F_Z2(spec: RootSpec, pres: SurgeryPresentation) -> CycElt:
    r = spec.r
    eps = [sum(x * (c - 1) for x, c in zip(row, pres.colors)) for row in pres.cross_linking]
    acc = GroupRingAccumulator(spec.t)
    for alpha in itertools.product((0, 1), repeat=pres.m):
        quadratic = sum(b * a for b, a in zip(pres.framings, alpha))
        linear = sum(e * a for e, a in zip(eps, alpha))
        acc.add_power(spec.u * (r * (r - 2) * quadratic + 2 * r * linear))
    return acc.result() * spec.q_power(-mu_quarters(pres, r))


def tau_Z2(spec: RootSpec, pres: SurgeryPresentation) -> InvariantResult:
    _check_z2_spec(spec)
    r = spec.r
    plus = spec.one() + spec.q_power(r * (r - 2))
    minus = spec.one() + spec.q_power(-r * (r - 2))
    norm = (plus * minus).rational_value()
    if norm == 4:
        absolute = spec.const(2)
    elif norm == 2:
        absolute = sqrt_in_ring(2, spec)
    else:
        raise FalsificationError(f"|F_(U+)|^2 = {norm} for the Z/2 invariant at {spec}")
    b_plus, b_minus, b_zero = pres.beta
    value = F_Z2(spec, pres) / (plus ** b_plus * minus ** b_minus * absolute ** b_zero)
    _certify(value, f"tau^(Z/2) at {spec}")
    return InvariantResult(value, spec.group, spec, True, pres.beta, ["integral"])


def check_splitting(spec: RootSpec, pres: SurgeryPresentation) -> bool:
    """tau^SU(2) = tau^(Z/2) tau^SO(3)."""
    _check_z2_spec(spec)
    su2 = tau(spec.with_group(Group.SU2), pres).value
    so3 = tau(spec.with_group(Group.SO3), pres).value
    z2 = tau_Z2(spec, pres).value
    if su2 != z2 * so3:
        raise FalsificationError(f"splitting fails at {spec}")
    if spec.ord4 == spec.r and z2 != spec.one():
        raise FalsificationError(f"tau^(Z/2) != 1 although ord(xi^(1/4)) = r at {spec}")
    return True


# -- lens spaces and moves ----------------------------------------------------

def lens_closed_form(b: int, spec: RootSpec) -> CycElt:
    """tau^SO(3) of L(b, 1) from quadratic Gauss sums; gcd(b, r) must be 1."""
    r = spec.r
    if spec.group is not Group.SO3:
        raise RootSpecError("the closed lens formula is the SO(3) one")
    if b == 0 or math.gcd(b, r) != 1:
        raise ValueError(f"need b coprime to r={r}, got {b}")
    if b < 0:
        return lens_closed_form(-b, spec).conjugate()
    four_star = pow(4, -1, r)
    b_star = pow(b, -1, r)
    xi = RootOfUnity.xi(spec)
    prefactor = spec.xi(four_star * (1 - b))
    ratio = (spec.one() - spec.xi(-b_star)) / (spec.one() - spec.xi(-1))
    return prefactor * ratio * gauss_reduce(b, 0, xi) / gauss_reduce(1, 0, xi)


def lens_nonvanishing_color(k: int, spec: RootSpec, max_color: Optional[int] = None) -> Tuple[int, InvariantResult]:
    """An odd color a with tau^SU(2) of (L(2^k, -1), K_a) nonzero."""
    if spec.r % 2 or spec.group is not Group.SU2:
        raise RootSpecError("the lens color search runs for SU(2) at even r")
    bound = max_color or 4 * spec.r
    for a in range(1, bound + 1, 2):
        result = tau(spec, hopf_pair(-(2 ** k), a))
        if result.value:
            return a, result
    raise FalsificationError(f"no odd color up to {bound} gives a nonzero invariant of L({2 ** k}, -1)")


def handle_slide_pair(b: int, s: int, spec: RootSpec) -> Tuple[CycElt, CycElt]:
    """F of a Hopf pair with framing b = +-1 against its slid, split form."""
    if b not in (1, -1):
        raise ValueError("the slide unlinks the companion only for framing +-1")
    linked = F(spec, hopf_pair(b, s))
    split = F(spec, SurgeryPresentation((SurgeryBlock(b),), (FreeComponent(s, -b),)))
    if linked != split:
        raise FalsificationError(f"handle slide changes F for b={b}, s={s} at {spec}")
    return linked, split


def unknot_vanishing_dichotomy(r: int) -> Dict[str, bool]:
    """F_(U+-) vanishes exactly for SU(2) with ord(xi^(1/4)) = 2r, over every fourth root."""
    results = {}
    groups = [Group.SU2] + ([Group.SO3] if r % 2 and r >= 3 else [])
    for group in groups:
        base = RootSpec(r, group=group, allow_degenerate=True)
        for u in base.fourth_roots():
            spec = RootSpec(r, u, group, allow_degenerate=True)
            for sign in (1, -1):
                vanishes = not F_unknot(spec, sign)
                expected = group is Group.SU2 and spec.ord4 == 2 * r
                if vanishes != expected:
                    raise FalsificationError(f"F_U at {spec} (sign {sign}) breaks the vanishing criterion")
                results[f"{spec},sign={sign}"] = vanishes
    return results


# -- integrality oracles ------------------------------------------------------

def integrality_oracles(spec: RootSpec, framings: Sequence[int]) -> Dict[str, CycElt]:
    """Quotients H(k, b, eps)/H(0, sn b, 0) and H(k, 0, eps)/((1 - xi) D), all certified integral."""
    _check_spec(spec)
    out: Dict[str, CycElt] = {}
    one_minus_xi_D = (spec.one() - spec.xi()) * rank_D(spec)
    for k in range((spec.r - 2) // 2 + 1):
        for eps in (0, 1):
            for b in framings:
                value = H(spec, k, b, eps)
                divisor = H(spec, 0, 1 if b > 0 else -1, 0) if b else one_minus_xi_D
                quotient = divides(divisor, value)
                if quotient is None:
                    raise FalsificationError(f"H({k}, {b}, {eps}) quotient is not integral at {spec}")
                out[f"k={k},b={b},eps={eps}"] = quotient
    if spec.group is Group.SU2 and spec.r % 2 == 0:
        two_root_r = sqrt_in_ring(spec.r, spec) * 2
        for k in range(spec.r // 2):
            for b in (2, -2):
                cleared = H(spec, k, b, 0)
                for i in range(k + 1):
                    cleared = cleared * (spec.one() + spec.q_power(2 * (2 * i + 1)))
                if not is_associate(cleared, two_root_r):
                    raise FalsificationError(f"H({k}, {b}, 0) does not match the product form at {spec}")
                out[f"product,k={k},b={b}"] = cleared
    return out
