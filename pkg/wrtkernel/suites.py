"""Verification suites: parameter grids of checks run through ``batchrun``.

Every instance function is module level so the process pool can pickle
it, returns a JSON-ready payload, and raises ``FalsificationError`` when
the checked identity or divisibility fails.
"""
import itertools
import logging
import math
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from .batchrun import Task
from .cyclo import Group, RootSpec, ev_xi, is_associate, O_xi, x_k
from .errors import FalsificationError
from .gausssum import RootOfUnity, gauss_brute, gauss_reduce
from .ideal_div import (IkElement, QuadForm, andrews_sum, check_two_variable_expansion, check_div1, check_pochhammer_divisibility,
                        check_symmetric_divisibility, check_lemma_xbar, check_thm1, check_xbar_divisibility)
from .iterext import instance_key, product
from .jones import (SurgeryPresentation, connected_sum, hopf_pair, lens, mirror, presentation_blocks,
                    symmetry_check)
from .linkpair import (block_sum, cyclic, diagonal_pairing, e0_trading_pairs, hyperbolic, is_isomorphic,
                       stabilized_diagonal)
from .misc import get_hash
from .qlaurent import QLaurent, q_pochhammer
from .rep import B_trace, V_n, change_of_basis, expand_Vn, rosso_pairing, verify_orthogonality
from .wrt import (H_reduced, check_splitting, handle_slide_pair, integrality_oracles, unknot_vanishing_dichotomy,
                  lens_closed_form, lens_nonvanishing_color, tau)

logger = logging.getLogger("wrtkernel.suites")

Payload = Dict[str, Any]


@dataclass(frozen=True)
class Suite:
    name: str
    build: Callable[..., List[Task]]
    default_rmax: int
    doc: str
    aliases: Tuple[str, ...] = ()


SUITES: Dict[str, Suite] = {}
ALIASES: Dict[str, str] = {}


def suite(name: str, default_rmax: int, aliases: Tuple[str, ...] = ()):
    def register(build):
        SUITES[name] = Suite(name, build, default_rmax, (build.__doc__ or "").strip(), aliases)
        for alias in aliases:
            ALIASES[alias] = name
        return build
    return register


def _groups(group: Optional[str]) -> List[Group]:
    return [Group(group)] if group else [Group.SO3, Group.SU2]


def _r_values(group: Group, rmax: int) -> List[int]:
    if group is Group.SO3:
        return list(range(3, rmax + 1, 2))
    return list(range(2, rmax + 1))


def _fail(message: str):
    raise FalsificationError(message)


# -- instances ---------------------------------------------------------------

def s3_instance(group: str, r: int, u: int) -> Payload:
    spec = RootSpec(r, u, Group(group))
    result = tau(spec, SurgeryPresentation())
    if result.value != spec.one():
        _fail(f"tau of S^3 at {spec} is {result.value}")
    return result.to_json()


def root_pochhammer_instance(r: int) -> Payload:
    spec = RootSpec(r)
    full = ev_xi(q_pochhammer(1, r - 1), spec)
    if full != spec.const(r):
        _fail(f"(xi;xi)_(r-1) = {full} at r={r}")
    return {"r": r, "value": r}


def root_identities_instance(r: int) -> Payload:
    spec = RootSpec(r)
    o = O_xi(spec)
    target = spec.const(r if r % 2 else r // 2)
    if not is_associate(o * o, target):
        _fail(f"O_xi^2 is not associate to {target} at r={r}")
    quotients = [check_xbar_divisibility(k, spec).digest() for k in range(r)]
    return {"r": r, "O_xi": o.to_json(), "xbar": get_hash(quotients)}


def gauss_instance(n: int) -> Payload:
    root = RootOfUnity(n, 1)
    for b, d in itertools.product(range(n), repeat=2):
        if gauss_reduce(b, d, root) != gauss_brute(b, d, root):
            _fail(f"reduced and brute Gauss sums differ at b={b}, d={d}, n={n}")
    squares = {}
    if n >= 2:
        spec = RootSpec(n)
        xi = RootOfUnity.xi(spec)
        for b in range(1, n):
            if math.gcd(b, n) != 1:
                continue
            g = gauss_reduce(b, 0, xi)
            if n % 4 == 2:
                if g:
                    _fail(f"G({b}, 0) != 0 at r={n}")
                gb = gauss_reduce(b, b, xi)
                if not is_associate(gb * gb, spec.const(2 * n)):
                    _fail(f"G({b}, {b})^2 is not associate to {2 * n}")
            else:
                expected = spec.const(n if n % 2 else 2 * n)
                if not is_associate(g * g, expected):
                    _fail(f"G({b}, 0)^2 is not associate to {expected} at r={n}")
            squares[b] = g.digest()
    return {"n": n, "squares": squares}


def thm1_instance(k: int, a2: int, box: int) -> Payload:
    span = range(-box, box + 1)
    digests = []
    for d, a, a1, a0 in itertools.product(span, repeat=4):
        digests.append(str(check_thm1(IkElement.generator(k, d, a), QuadForm(a2, a1, a0))))
    return {"k": k, "a2": a2, "count": len(digests), "digest": get_hash(digests)}


def thm1_random_instance(seed: int, count: int, kmax: int) -> Payload:
    rng = random.Random(seed)
    digests = []
    for _ in range(count):
        k = rng.randint(0, kmax)
        terms = tuple((QLaurent.q_power(rng.randint(-3, 3), rng.choice([-2, -1, 1, 2])),
                       rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(1, 3)))
        q = QuadForm(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
        digests.append(str(check_thm1(IkElement(k, terms), q)))
    return {"seed": seed, "count": count, "digest": get_hash(digests)}


def ideal_instance(k: int) -> Payload:
    digests = []
    for a2, a1, a0 in itertools.product(range(-2, 3), repeat=3):
        if k:
            digests.append(str(andrews_sum(k, QuadForm(a2, a1, a0))))
    for a2, m in itertools.product((-2, -1, 1, 2), range(0, 4)):
        digests.append(str(check_symmetric_divisibility(m, k, QuadForm(a2))))
    for a2, m in itertools.product((-2, -1, 0, 1, 2), range(-3, 4)):
        digests.append(str(check_pochhammer_divisibility(m, k, QuadForm(a2))))
    for a in range(-2, 3):
        digests.append(get_hash(sorted((key, str(v)) for key, v in check_two_variable_expansion(a, k).items())))
    return {"k": k, "digest": get_hash(digests)}


def root_divisibility_instance(r: int, k: int) -> Payload:
    spec = RootSpec(r)
    digests = []
    for a2, a1, a0 in itertools.product(range(-2, 3), repeat=3):
        q = QuadForm(a2, a1, a0)
        for d, a in itertools.product(range(-1, 2), repeat=2):
            digests.append(check_div1(IkElement.generator(k, d, a), q, spec).digest())
            digests.append(check_lemma_xbar(a, k, q, spec).digest())
    return {"r": r, "k": k, "digest": get_hash(digests)}


def blocks_instance(pres_json: Payload, depth: int) -> Payload:
    pres = SurgeryPresentation.from_json(pres_json)
    blocks = presentation_blocks(pres, depth)
    return {"eps": list(blocks.eps),
            "coefficients": {",".join(map(str, k)): str(c) for k, c in blocks.items()}}


def lens_instance(r: int) -> Payload:
    values = {}
    for spec in RootSpec.valid(r, Group.SO3):
        for b in range(-r, r + 1):
            if b == 0 or math.gcd(b, r) != 1:
                continue
            value = tau(spec, lens(b)).value
            if value != lens_closed_form(b, spec):
                _fail(f"tau of L({b}, 1) differs from its Gauss-sum form at {spec}")
            if not value.is_unit():
                _fail(f"tau of L({b}, 1) is not a unit at {spec}")
            values[f"{spec},b={b}"] = value.digest()
    return {"r": r, "digest": get_hash(sorted(values.items()))}


def lens_color_instance(r: int, k: int) -> Payload:
    a, result = lens_nonvanishing_color(k, RootSpec(r))
    return {"r": r, "k": k, "color": a, "value": result.value.to_json()}


def vanishing_instance(r: int) -> Payload:
    return {"r": r, "vanishing": unknot_vanishing_dichotomy(r)}


SPLITTING_FAMILY = [lens(b) for b in (1, 2, 3, -2)] + [hopf_pair(b, s) for b in (1, 2, -1) for s in (1, 2, 3)]


def splitting_instance(r: int, u: int) -> Payload:
    spec = RootSpec(r, u)
    for pres in SPLITTING_FAMILY:
        check_splitting(spec, pres)
    return {"r": r, "u": u, "count": len(SPLITTING_FAMILY)}


def symmetry_instance(r: int) -> Payload:
    checked = 0
    for spec in RootSpec.valid(r, Group.SU2)[:2]:
        for b, s in itertools.product((-2, -1, 1, 2), range(1, 4)):
            pres = hopf_pair(b, s)
            for n in range(1, r):
                for alpha in ((0,), (1,)):
                    if not symmetry_check(pres, spec, alpha, (n,)):
                        _fail(f"color symmetry fails for hopf_pair({b}, {s}) at n={n}, {spec}")
                    checked += 1
    if r % 2:
        spec = RootSpec(r, group=Group.SO3)
        factor = -spec.q_power(2 * r)
        for b, s in itertools.product((-2, -1, 1, 2), range(1, r)):
            flipped = tau(spec, hopf_pair(b, r - s)).value
            if flipped != factor * tau(spec, hopf_pair(b, s)).value:
                _fail(f"extended SO(3) symmetry fails for b={b}, s={s} at {spec}")
            checked += 1
    return {"r": r, "checked": checked}


def oracles_instance(group: str, r: int) -> Payload:
    spec = RootSpec(r, group=Group(group))
    if spec.group is Group.SO3:
        framings = range(-6, 7)
    else:
        framings = (0, 1, -1, 2, -2, 3, -3, 4, -4, 8, -8, 9, -9)
    quotients = integrality_oracles(spec, framings)
    for k in range((r - 2) // 2 + 1):
        for b, eps in ((1, 0), (3, 1)):
            if x_k(2 * k + 1 + eps, spec):
                H_reduced(spec, k, b, eps)
    return {"group": group, "r": r, "digest": get_hash(sorted((k, v.digest()) for k, v in quotients.items()))}


def integrality_instance(group: str, r: int) -> Payload:
    spec = RootSpec(r, group=Group(group))
    family = [lens(b) for b in (-3, -1, 0, 2, 4)] + [hopf_pair(b, s) for b in (-2, 0, 1, 3) for s in (1, 2)]
    values = {}
    for pres in family:
        value = tau(spec, pres).value
        if tau(spec, mirror(pres)).value != value.conjugate():
            _fail(f"mirror does not conjugate tau at {spec}")
        values[get_hash(pres.to_json())] = value.digest()
    p1, p2 = family[0], family[-1]
    if tau(spec, connected_sum(p1, p2)).value != tau(spec, p1).value * tau(spec, p2).value:
        _fail(f"tau is not multiplicative under connected sum at {spec}")
    for b, s in itertools.product((1, -1), (1, 2, 3)):
        handle_slide_pair(b, s, spec)
    return {"group": group, "r": r, "digest": get_hash(sorted(values.items()))}


def pairing_instance(k: int) -> Payload:
    lhs, rhs = e0_trading_pairs(k)
    if not is_isomorphic(lhs, rhs):
        _fail(f"E_0^{k} + phi(-2^{k}) is not isomorphic to phi(-2^{k}) + phi(2^{k}) + phi(-2^{k})")
    result = stabilized_diagonal([3], [k], s=1)
    if result.verified is False:
        _fail(f"stabilized diagonal for k={k} does not match its block sum")
    return {"k": k, "entries": list(result.entries), "verified": result.verified}


def pairing_pool_instance() -> Payload:
    pool = [cyclic(2), cyclic(-2), cyclic(3), cyclic(-3), cyclic(4), cyclic(-4), cyclic(8),
            diagonal_pairing([2, 2]), diagonal_pairing([2, -2]), hyperbolic(1), hyperbolic(2),
            diagonal_pairing([4, 4]), diagonal_pairing([4, -4]), block_sum(cyclic(2), cyclic(3))]
    n = len(pool)
    iso = [[is_isomorphic(pool[i], pool[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if not iso[i][i]:
            _fail(f"{pool[i]} is not isomorphic to itself")
        for j in range(n):
            if iso[i][j] != iso[j][i]:
                _fail(f"isomorphism is not symmetric on {pool[i]}, {pool[j]}")
            for k in range(n):
                if iso[i][j] and iso[j][k] and not iso[i][k]:
                    _fail(f"isomorphism is not transitive on {pool[i]}, {pool[j]}, {pool[k]}")
    return {"classes": get_hash(iso)}


def appendix_instance(n: int) -> Payload:
    digests = []
    if 1 <= n <= 8:
        for m in range(1, 9):
            if rosso_pairing(V_n(m), V_n(n)) != rosso_pairing(V_n(n), V_n(m)):
                _fail(f"<V_{m}, V_{n}> differs from <V_{n}, V_{m}>")
    for eps in (0, 1):
        if n >= 1:
            digests.append(get_hash([str(c) for c in expand_Vn(n, eps)]))
        change_of_basis(n, eps)
        for k in range(min(n, 6) + 1):
            if n <= 6:
                verify_orthogonality(k, n, eps)
    if n <= 8:
        for l, j in itertools.product(range(n + 1), range(-8, 9)):
            digests.append(str(B_trace(n, l, j)))
    return {"n": n, "digest": get_hash(digests)}


# -- suites ------------------------------------------------------------------

def _tasks(fn, grid, *fields) -> List[Task]:
    return [Task(f"{fn.__name__.replace('_instance', '')}:{instance_key(row, *fields)}", fn,
                 tuple(getattr(row, f) for f in fields)) for row in grid]


@suite("s3", 13)
def build_s3(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """tau of S^3 is 1 for every admissible root."""
    tasks = []
    for g in _groups(group):
        for r in _r_values(g, rmax if g is Group.SO3 else min(rmax, 10)):
            for spec in RootSpec.valid(r, g):
                tasks.append(Task(f"s3:{spec}", s3_instance, (g.value, r, spec.u)))
    return tasks


@suite("pochhammer", 50)
def build_pochhammer(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """(xi;xi)_(r-1) = r."""
    return _tasks(root_pochhammer_instance, product(r=range(2, rmax + 1)), 'r')


@suite("roots", 13)
def build_roots(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """O_xi^2 ~ r or r/2, and O_xi | (xi;xi)_(k//2) x_(r-1-k)."""
    return _tasks(root_identities_instance, product(r=range(2, rmax + 1)), 'r')


@suite("gauss", 24)
def build_gauss(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """Gauss-sum reductions against brute force, and their squares."""
    return _tasks(gauss_instance, product(n=range(1, rmax + 1)), 'n')


THM1_BOX = 3


@suite("thm1", 6, aliases=("thm2",))
def build_thm1(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """X_k divides lambda_Q(z^d (q^a z; q)_k) on a box, plus random combinations."""
    tasks = [Task(f"thm1:k={row.k},a2={row.a2}", thm1_instance, (row.k, row.a2, THM1_BOX))
             for row in product(k=range(rmax + 1), a2=range(-3, 4))]
    tasks += [Task(f"thm1-random:seed={seed + i}", thm1_random_instance, (seed + i, 20, 10)) for i in range(10)]
    return tasks


@suite("ideal", 6)
def build_ideal(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """Alternating sums, symmetric and Pochhammer divisibility, and two-variable expansions."""
    return _tasks(ideal_instance, product(k=range(rmax + 1)), 'k')


@suite("rootdiv", 13, aliases=("prop32",))
def build_rootdiv(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """Root-of-unity sums of I_k divided by x_k O_xi, and binomial sums by x_(r-1-k)."""
    return [Task(f"rootdiv:r={r},k={k}", root_divisibility_instance, (r, k))
            for r in range(2, rmax + 1) for k in range(r)]


BLOCK_FAMILY = [lens(b, s, p) for b in (0, 1, -2) for s in (1, 2, 3, 4) for p in (0, 1)]


@suite("blocks", 6)
def build_blocks(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """Block expansions of Hopf-pair presentations, odd and even companion colors."""
    return [Task(f"blocks:{get_hash(pres.to_json())[:8]},K={rmax}", blocks_instance, (pres.to_json(), rmax))
            for pres in BLOCK_FAMILY]


@suite("lens", 13)
def build_lens(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """SO(3) lens-space values against Gauss sums; nonvanishing colors for even r."""
    tasks = _tasks(lens_instance, product(r=range(3, rmax + 1, 2)), 'r')
    tasks += _tasks(lens_color_instance, product(r=[r for r in (4, 6, 8) if r <= rmax], k=(1, 2, 3)), 'r', 'k')
    return tasks


@suite("vanishing", 20, aliases=("lemma12",))
def build_vanishing(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """F at U^+- vanishes exactly for SU(2) with ord(xi^(1/4)) = 2r."""
    return _tasks(vanishing_instance, product(r=range(2, rmax + 1)), 'r')


@suite("splitting", 9)
def build_splitting(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """tau^SU(2) = tau^(Z/2) tau^SO(3) for odd r."""
    return [Task(f"splitting:{spec}", splitting_instance, (spec.r, spec.u))
            for r in range(3, rmax + 1, 2) for spec in RootSpec.valid(r, Group.SU2)]


@suite("symmetry", 9)
def build_symmetry(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """Color-flip symmetry of J and of the extended SO(3) invariant."""
    return _tasks(symmetry_instance, product(r=range(3, rmax + 1)), 'r')


@suite("oracles", 11)
def build_oracles(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """H-quotient integrality for SO(3) at odd r and SU(2) at even r."""
    tasks = []
    for g in _groups(group):
        if g is Group.SO3:
            rs = range(3, rmax + 1, 2)
        else:
            rs = range(2, min(rmax, 8) + 1, 2)
        tasks += [Task(f"oracles:{g.value}:r={r}", oracles_instance, (g.value, r)) for r in rs]
    return tasks


@suite("integrality", 9)
def build_integrality(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """Integral tau on the supported family, mirror, connected sum and handle slides."""
    return [Task(f"integrality:{g.value}:r={r}", integrality_instance, (g.value, r))
            for g in _groups(group) for r in _r_values(g, rmax)]


@suite("pairing", 2)
def build_pairing(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """E_0^k trading identity, stabilized diagonals and the isomorphism relation."""
    tasks = _tasks(pairing_instance, product(k=range(1, rmax + 1)), 'k')
    tasks.append(Task("pairing:pool", pairing_pool_instance))
    return tasks


@suite("appendix", 10)
def build_appendix(rmax: int, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    """V_n expansions, orthogonality of S_p against P_k, and the quantum trace B(n, l, j)."""
    return _tasks(appendix_instance, product(n=range(0, rmax + 1)), 'n')


def build_tasks(name: str, rmax: Optional[int] = None, group: Optional[str] = None, seed: int = 42) -> List[Task]:
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    entry = SUITES[name]
    tasks = entry.build(rmax or entry.default_rmax, group, seed)
    logger.info("suite %s: %d instances", name, len(tasks))
    return tasks
