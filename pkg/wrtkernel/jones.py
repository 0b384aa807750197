"""Surgery presentations, colored Jones values and Habiro blocks.

Colored Jones values are produced for the split-diagonal family: every
surgery component is an unknot, optionally Hopf-linked with one colored
companion, distinct blocks are split, and free colored unknots may sit
beside them. Anything else enters through a ``JonesTable``.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .cyclo import CycElt, RootSpec, ev_xi
from .errors import FalsificationError, PresentationError, SchemaError
from .qlaurent import (ONE, ZERO, QLaurent, divide_or_raise, exact_divide, q_bracket, q_bracket_binom,
                       q_factorial_braces, q_lambda, q_pochhammer)

logger = logging.getLogger("wrtkernel.jones")

Colors = Tuple[int, ...]
SPLIT_DIAGONAL = "split-diagonal"
TABLE_BACKED = "table-backed"


def framing_factor(b: int, n: int) -> QLaurent:
    """q^(b (n^2 - 1) / 4)."""
    return QLaurent.monomial(b * (n * n - 1))


@dataclass(frozen=True)
class Companion:
    color: int
    framing: int = 0


@dataclass(frozen=True)
class SurgeryBlock:
    framing: int
    companion: Optional[Companion] = None


@dataclass(frozen=True)
class FreeComponent:
    color: int
    framing: int = 0


def _key(n: Sequence[int]) -> str:
    return ",".join(str(c) for c in n)


@dataclass(frozen=True)
class JonesTable:
    """Colored Jones values J(n) of an m-component link with a fixed colored sublink."""

    arity: int
    values: Mapping[Colors, QLaurent]
    colors: Colors = ()
    cross_linking: Tuple[Tuple[int, ...], ...] = ()
    colored_linking: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        for n in self.values:
            if len(n) != self.arity:
                raise PresentationError(f"color tuple {n} does not have arity {self.arity}")
        if not self.cross_linking:
            object.__setattr__(self, 'cross_linking', tuple((0,) * len(self.colors) for _ in range(self.arity)))
        if not self.colored_linking:
            object.__setattr__(self, 'colored_linking', tuple((0,) * len(self.colors) for _ in self.colors))

    def __getitem__(self, n: Sequence[int]) -> QLaurent:
        try:
            return self.values[tuple(n)]
        except KeyError:
            raise PresentationError(f"the Jones table has no value at colors {tuple(n)}") from None

    def __contains__(self, n) -> bool:
        return tuple(n) in self.values

    def reframed(self, framings: Sequence[int]) -> 'JonesTable':
        """Add ``framings[i]`` to the framing of component i."""
        values = {}
        for n, v in self.values.items():
            for b, c in zip(framings, n):
                v = v * framing_factor(b, c)
            values[n] = v
        return replace(self, values=values)

    def conjugate(self) -> 'JonesTable':
        return replace(self, values={n: v.conjugate() for n, v in self.values.items()},
                       cross_linking=tuple(tuple(-x for x in row) for row in self.cross_linking),
                       colored_linking=tuple(tuple(-x for x in row) for row in self.colored_linking))

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "colors": list(self.colors),
            "cross_linking": [list(row) for row in self.cross_linking],
            "colored_linking": [list(row) for row in self.colored_linking],
            "values": {_key(n): str(v) for n, v in sorted(self.values.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> 'JonesTable':
        try:
            values = {tuple(int(c) for c in k.split(',')): QLaurent.from_text(v)
                      for k, v in data['values'].items()}
            return cls(int(data['arity']), values, tuple(data.get('colors', ())),
                       tuple(tuple(row) for row in data.get('cross_linking', ())),
                       tuple(tuple(row) for row in data.get('colored_linking', ())))
        except (KeyError, TypeError, ValueError) as err:
            raise SchemaError(f"malformed Jones table: {err}") from err

    @classmethod
    def from_presentation(cls, pres: 'SurgeryPresentation', max_color: int) -> 'JonesTable':
        """Tabulate a split-diagonal presentation on colors 1..max_color."""
        values = {n: jones_value(pres, n)
                  for n in itertools.product(range(1, max_color + 1), repeat=pres.m)}
        return cls(pres.m, values, pres.colors, pres.cross_linking, pres.colored_linking)


@dataclass(frozen=True)
class SurgeryPresentation:
    """Surgery link with diagonal linking matrix plus a colored link L'."""

    blocks: Tuple[SurgeryBlock, ...] = ()
    free: Tuple[FreeComponent, ...] = ()
    table: Optional[JonesTable] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'blocks', tuple(self.blocks))
        object.__setattr__(self, 'free', tuple(self.free))
        if self.table is not None:
            if self.table.arity != len(self.blocks):
                raise PresentationError(f"table arity {self.table.arity} != {len(self.blocks)} surgery components")
            if any(b.companion is not None for b in self.blocks) or self.free:
                raise PresentationError("a table-backed presentation carries its colored link in the table")
        for c in self._colored():
            if c.color < 1:
                raise PresentationError(f"colors must be positive, got {c.color}")

    @property
    def family(self) -> str:
        return TABLE_BACKED if self.table is not None else SPLIT_DIAGONAL

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def framings(self) -> Tuple[int, ...]:
        return tuple(b.framing for b in self.blocks)

    def _colored(self) -> List:
        return [b.companion for b in self.blocks if b.companion is not None] + list(self.free)

    @property
    def colors(self) -> Colors:
        if self.table is not None:
            return tuple(self.table.colors)
        return tuple(c.color for c in self._colored())

    @property
    def cross_linking(self) -> Tuple[Tuple[int, ...], ...]:
        """Linking numbers between surgery component i and colored component j."""
        if self.table is not None:
            return self.table.cross_linking
        rows = []
        j = 0
        width = len(self._colored())
        for block in self.blocks:
            row = [0] * width
            if block.companion is not None:
                row[j] = 1
                j += 1
            rows.append(tuple(row))
        return tuple(rows)

    @property
    def colored_linking(self) -> Tuple[Tuple[int, ...], ...]:
        if self.table is not None:
            return self.table.colored_linking
        colored = self._colored()
        return tuple(tuple(c.framing if i == j else 0 for j in range(len(colored)))
                     for i, c in enumerate(colored))

    def linking_matrix(self) -> List[List[int]]:
        """Full linking matrix of L and L', surgery components first."""
        m, l = self.m, len(self.colors)
        full = [[0] * (m + l) for _ in range(m + l)]
        for i, b in enumerate(self.framings):
            full[i][i] = b
        for i, row in enumerate(self.cross_linking):
            for j, x in enumerate(row):
                full[i][m + j] = full[m + j][i] = x
        for i, row in enumerate(self.colored_linking):
            for j, x in enumerate(row):
                full[m + i][m + j] = x
        return full

    @property
    def beta(self) -> Tuple[int, int, int]:
        """(beta_+, beta_-, beta_0) of the diagonal linking matrix."""
        b = self.framings
        return sum(x > 0 for x in b), sum(x < 0 for x in b), sum(x == 0 for x in b)

    def epsilon_vector(self) -> Tuple[int, ...]:
        return epsilon_vector(self)

    def zero_framed(self) -> 'SurgeryPresentation':
        """L^0 with L' unchanged."""
        blocks = tuple(replace(b, framing=0) for b in self.blocks)
        table = None if self.table is None else self.table.reframed([-b for b in self.framings])
        return SurgeryPresentation(blocks, self.free, table)

    def with_colors(self, colors: Sequence[int]) -> 'SurgeryPresentation':
        """Same link with the colored components recolored (split family)."""
        if self.table is not None:
            raise PresentationError("recoloring needs a split-diagonal presentation")
        colors = list(colors)
        if len(colors) != len(self._colored()):
            raise PresentationError(f"expected {len(self._colored())} colors, got {len(colors)}")
        blocks = []
        for b in self.blocks:
            if b.companion is not None:
                b = replace(b, companion=replace(b.companion, color=colors.pop(0)))
            blocks.append(b)
        free = tuple(replace(f, color=c) for f, c in zip(self.free, colors))
        return SurgeryPresentation(tuple(blocks), free)

    def to_json(self) -> dict:
        data = {
            "surgery": [{"framing": b.framing,
                         "companion": None if b.companion is None
                         else {"color": b.companion.color, "framing": b.companion.framing}}
                        for b in self.blocks],
            "free": [{"color": f.color, "framing": f.framing} for f in self.free],
        }
        if self.table is not None:
            data["table"] = self.table.to_json()
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> 'SurgeryPresentation':
        try:
            blocks = []
            for item in data.get('surgery', []):
                comp = item.get('companion')
                companion = None if comp is None else Companion(int(comp['color']), int(comp.get('framing', 0)))
                blocks.append(SurgeryBlock(int(item['framing']), companion))
            free = tuple(FreeComponent(int(f['color']), int(f.get('framing', 0))) for f in data.get('free', []))
            table = JonesTable.from_json(data['table']) if data.get('table') else None
        except (PresentationError, SchemaError):
            raise
        except (AttributeError, KeyError, TypeError, ValueError) as err:
            raise SchemaError(f"malformed presentation: {err}") from err
        return cls(tuple(blocks), free, table)


# -- builders ----------------------------------------------------------------

def unknot(b: int) -> SurgeryPresentation:
    return SurgeryPresentation((SurgeryBlock(b),))


def lens(b: int, color: Optional[int] = None, companion_framing: int = 0) -> SurgeryPresentation:
    """L(b, 1), optionally with its core colored by ``color``."""
    companion = None if color is None else Companion(color, companion_framing)
    return SurgeryPresentation((SurgeryBlock(b, companion),))


def hopf_pair(b: int, s: int, companion_framing: int = 0) -> SurgeryPresentation:
    return lens(b, s, companion_framing)


def mirror(pres: SurgeryPresentation) -> SurgeryPresentation:
    """-M: every framing negated."""
    if pres.table is not None:
        blocks = tuple(replace(b, framing=-b.framing) for b in pres.blocks)
        return SurgeryPresentation(blocks, (), pres.table.conjugate())
    blocks = tuple(SurgeryBlock(-b.framing, None if b.companion is None
                                else replace(b.companion, framing=-b.companion.framing))
                   for b in pres.blocks)
    free = tuple(replace(f, framing=-f.framing) for f in pres.free)
    return SurgeryPresentation(blocks, free)


def connected_sum(p1: SurgeryPresentation, p2: SurgeryPresentation) -> SurgeryPresentation:
    if p1.table is not None or p2.table is not None:
        raise PresentationError("connected sums are built for split-diagonal presentations")
    return SurgeryPresentation(p1.blocks + p2.blocks, p1.free + p2.free)


# -- values --------------------------------------------------------------------

def epsilon_vector(pres: SurgeryPresentation) -> Tuple[int, ...]:
    """eps_i = sum_j l~_ij (s_j - 1) mod 2."""
    s = pres.colors
    return tuple(sum(x * (c - 1) for x, c in zip(row, s)) % 2 for row in pres.cross_linking)


def block_value(block: SurgeryBlock, n: int) -> QLaurent:
    value = framing_factor(block.framing, n)
    if block.companion is None:
        return value * q_bracket(n)
    a = block.companion.color
    return value * framing_factor(block.companion.framing, a) * q_bracket(n * a)


def free_value(free: Sequence[FreeComponent]) -> QLaurent:
    value = ONE
    for f in free:
        value = value * framing_factor(f.framing, f.color) * q_bracket(f.color)
    return value


def jones_value(pres: SurgeryPresentation, n: Sequence[int]) -> QLaurent:
    """J_(L u L')(n) with the colors of L' fixed."""
    n = tuple(n)
    if len(n) != pres.m:
        raise PresentationError(f"expected {pres.m} colors, got {len(n)}")
    if pres.table is not None:
        return pres.table[n]
    value = free_value(pres.free)
    for block, c in zip(pres.blocks, n):
        value = value * block_value(block, c)
    return value


@lru_cache(maxsize=None)
def habiro_basis(n: int, k: int, eps: int) -> QLaurent:
    """qbinom(n+k, 2k+1) {k}! (lambda_n / lambda_(k+1))^eps."""
    if n <= k:
        return ZERO
    value = q_bracket_binom(n + k, 2 * k + 1)
    if eps:
        value = divide_or_raise(value * q_lambda(n), q_lambda(k + 1))
    return value * q_factorial_braces(k)


def block_modulus(k: int) -> QLaurent:
    """(q^(k+1); q)_(k+1) / (1 - q)."""
    return divide_or_raise(q_pochhammer(k + 1, k + 1), ONE - QLaurent.q_power(1))


@dataclass
class HabiroBlocks:
    coefficients: Dict[Colors, QLaurent]
    eps: Tuple[int, ...]
    depth: int
    quotients: Dict[Colors, QLaurent] = field(default_factory=dict)

    def __getitem__(self, k: Sequence[int]) -> QLaurent:
        return self.coefficients.get(tuple(k), ZERO)

    def items(self) -> Iterator[Tuple[Colors, QLaurent]]:
        return iter(sorted(self.coefficients.items()))

    def reconstruct(self, n: Sequence[int]) -> QLaurent:
        total = ZERO
        for ks, c in self.coefficients.items():
            term = c
            for ni, ki, ei in zip(n, ks, self.eps):
                term = term * habiro_basis(ni, ki, ei)
            total = total + term
        return total


def _index_tuples(m: int, depth: int) -> List[Colors]:
    return sorted(itertools.product(range(depth + 1), repeat=m), key=lambda ks: (sum(ks), ks))


def habiro_blocks(table: JonesTable, eps: Optional[Sequence[int]] = None, depth: int = 0) -> HabiroBlocks:
    """Solve J(n) = sum_k c(k) prod_i basis(n_i, k_i, eps_i) for k in [0..depth]^m.

    The system is triangular: basis(n, k) vanishes for n <= k and equals
    {k}! at n = k + 1. Every solved c(k) is checked for divisibility by
    (q^(k+1); q)_(k+1) / (1 - q), k = max k_i.
    """
    m = table.arity
    if eps is None:
        eps = tuple(sum(x * (c - 1) for x, c in zip(row, table.colors)) % 2 for row in table.cross_linking)
    eps = tuple(eps)
    if len(eps) != m:
        raise PresentationError(f"eps has length {len(eps)}, the table arity is {m}")
    coefficients: Dict[Colors, QLaurent] = {}
    quotients: Dict[Colors, QLaurent] = {}
    for ks in _index_tuples(m, depth):
        n = tuple(k + 1 for k in ks)
        residual = table[n]
        for lower, c in coefficients.items():
            if all(a <= k for a, k in zip(lower, ks)):
                term = c
                for ni, ai, ei in zip(n, lower, eps):
                    term = term * habiro_basis(ni, ai, ei)
                residual = residual - term
        if not residual:
            continue
        diagonal = ONE
        for k in ks:
            diagonal = diagonal * q_factorial_braces(k)
        c = exact_divide(residual, diagonal, rational=True)
        if c is None or not c.is_integral():
            raise FalsificationError(f"block coefficient at k={ks} is not a Laurent polynomial over Z")
        c = c.to_integral()
        top = max(ks, default=0)
        quotient = exact_divide(c, block_modulus(top))
        if quotient is None:
            raise FalsificationError(f"block coefficient at k={ks} is not divisible by "
                                     f"(q^{top + 1};q)_{top + 1}/(1-q)")
        coefficients[ks] = c
        quotients[ks] = quotient
    blocks = HabiroBlocks(coefficients, eps, depth, quotients)
    for ks in _index_tuples(m, depth):
        n = tuple(k + 1 for k in ks)
        if blocks.reconstruct(n) != table[n]:
            raise FalsificationError(f"block expansion does not reproduce J at n={n}")
    logger.debug("solved %d nonzero block coefficients up to depth %d", len(coefficients), depth)
    return blocks


def presentation_blocks(pres: SurgeryPresentation, depth: int) -> HabiroBlocks:
    """Blocks of the 0-framed presentation L^0 u L'."""
    zero = pres.zero_framed()
    if zero.table is not None:
        table = zero.table
    else:
        table = JonesTable.from_presentation(zero, depth + 1)
    return habiro_blocks(table, pres.epsilon_vector(), depth)


# -- symmetry ------------------------------------------------------------------

def _flip(n: Colors, alpha: Sequence[int], r: int) -> Colors:
    return tuple(r - c if a else c for c, a in zip(n, alpha))


def symmetry_exponent(pres: SurgeryPresentation, alpha: Sequence[int], n: Sequence[int], r: int) -> int:
    """Quarter-exponent of xi^t for the color flip alpha at colors n."""
    full = pres.linking_matrix()
    m = pres.m
    hats = [c - 1 for c in n] + [s - 1 for s in pres.colors]
    quadratic = sum(full[i][j] * alpha[i] * alpha[j] for i in range(m) for j in range(m))
    linear = sum(full[i][j] * alpha[i] * hats[j] for i in range(m) for j in range(len(hats)))
    return r * (r - 2) * quadratic + 2 * r * linear


def symmetry_check(pres: SurgeryPresentation, spec: RootSpec, alpha: Sequence[int], n: Sequence[int]) -> bool:
    """Color-flip symmetry, 2r-periodicity and reflection antisymmetry of J at xi."""
    r = spec.r
    n = tuple(n)

    def ev(colors: Colors) -> CycElt:
        return ev_xi(jones_value(pres, colors), spec)

    sign = -spec.q_power(2 * r)
    lhs = ev(_flip(n, alpha, r))
    rhs = (sign ** sum(alpha)) * spec.q_power(symmetry_exponent(pres, alpha, n, r)) * ev(n)
    if lhs != rhs:
        logger.debug("flip %s fails at n=%s for %s", alpha, n, spec)
        return False
    base = ev(n)
    for i in range(len(n)):
        up = n[:i] + (n[i] + 2 * r,) + n[i + 1:]
        if pres.table is None or up in pres.table:
            if ev(up) != base:
                logger.debug("periodicity fails in slot %d at n=%s", i, n)
                return False
        if 0 < n[i] < r:
            plus = n[:i] + (r + n[i],) + n[i + 1:]
            minus = n[:i] + (r - n[i],) + n[i + 1:]
            if pres.table is None or (plus in pres.table and minus in pres.table):
                if ev(plus) != -ev(minus):
                    logger.debug("reflection fails in slot %d at n=%s", i, n)
                    return False
    return True


def odd_colors_in_z_q(pres: SurgeryPresentation, n: Sequence[int]) -> bool:
    """With every color odd, J lies in Z[q^(+-1)]."""
    if any(c % 2 == 0 for c in tuple(n) + pres.colors):
        raise ValueError("all colors must be odd")
    return jones_value(pres, n).in_z_q()
