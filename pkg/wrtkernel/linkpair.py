"""Linking pairings on finite abelian groups.

A pairing is stored on a product of cyclic groups Z/d_1 + ... + Z/d_n as
its Gram matrix on the standard generators, entries read modulo 1.
"""
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy

from .errors import SchemaError, SizeBoundError
from .jones import SurgeryBlock, SurgeryPresentation

logger = logging.getLogger("wrtkernel.linkpair")

SEARCH_BOUND = 512
Witness = Tuple[Tuple[int, ...], ...]


def _lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


@dataclass(frozen=True)
class LinkingPairing:
    orders: Tuple[int, ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    check_bound: int = field(default=SEARCH_BOUND, compare=False)

    def __post_init__(self) -> None:
        orders = tuple(int(d) for d in self.orders)
        n = len(orders)
        if any(d < 2 for d in orders):
            raise ValueError(f"cyclic orders must be >= 2, got {orders}")
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ValueError(f"gram must be {n}x{n}")
        gram = tuple(tuple(Fraction(x) % 1 for x in row) for row in self.gram)
        for i, j in itertools.product(range(n), repeat=2):
            if gram[i][j] != gram[j][i]:
                raise ValueError(f"gram is not symmetric at ({i}, {j})")
            if (orders[i] * gram[i][j]).denominator != 1:
                raise ValueError(f"gram[{i}][{j}] = {gram[i][j]} is not killed by d_{i} = {orders[i]}")
        object.__setattr__(self, 'orders', orders)
        object.__setattr__(self, 'gram', gram)
        if self.size <= self.check_bound and not self._nonsingular():
            raise ValueError(f"pairing on {orders} is singular")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return _lcm(self.orders)

    def scaled_gram(self, modulus: int) -> np.ndarray:
        """Integer matrix A with gram = A / modulus; modulus must clear every denominator."""
        a = np.zeros((self.rank, self.rank), dtype=np.int64)
        for i, j in itertools.product(range(self.rank), repeat=2):
            value = self.gram[i][j] * modulus
            if value.denominator != 1:
                raise ValueError(f"modulus {modulus} does not clear {self.gram[i][j]}")
            a[i, j] = value.numerator % modulus
        return a

    def elements(self) -> np.ndarray:
        """All group elements as rows of coordinates."""
        if not self.orders:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(itertools.product(*(range(d) for d in self.orders))), dtype=np.int64)

    def element_orders(self, elements: np.ndarray) -> np.ndarray:
        if not self.orders:
            return np.ones(len(elements), dtype=np.int64)
        d = np.array(self.orders, dtype=np.int64)
        return np.lcm.reduce(d // np.gcd(elements, d), axis=1)

    def self_linking(self, elements: np.ndarray, modulus: int) -> np.ndarray:
        a = self.scaled_gram(modulus)
        return np.einsum('ij,jk,ik->i', elements, a, elements) % modulus

    def _nonsingular(self) -> bool:
        if not self.orders:
            return True
        modulus = self.exponent
        x = self.elements()
        images = (x @ self.scaled_gram(modulus)) % modulus
        return int(np.count_nonzero(~images.any(axis=1))) == 1

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        value = sum(self.gram[i][j] * x[i] * y[j] for i in range(self.rank) for j in range(self.rank))
        return Fraction(value) % 1

    def to_json(self) -> dict:
        return {"orders": list(self.orders),
                "gram": [[[x.numerator, x.denominator] for x in row] for row in self.gram]}

    @classmethod
    def from_json(cls, data: Mapping) -> 'LinkingPairing':
        try:
            gram = tuple(tuple(Fraction(int(num), int(den)) for num, den in row) for row in data['gram'])
            return cls(tuple(data['orders']), gram)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
            raise SchemaError(f"malformed pairing: {err}") from err

    def __str__(self) -> str:
        return f"pairing{self.orders}"


TRIVIAL = LinkingPairing((), ())


# -- construction ------------------------------------------------------------

def smith_normal_form(matrix) -> Tuple[List[int], sympy.Matrix, sympy.Matrix]:
    """Diagonal d and unimodular L, R with L * B * R = diag(d), d_i | d_(i+1), d_i >= 0."""
    m = sympy.Matrix(matrix).copy()
    rows, cols = m.shape
    left, right = sympy.eye(rows), sympy.eye(cols)
    for s in range(min(rows, cols)):
        while True:
            nonzero = [(abs(m[i, j]), i, j) for i in range(s, rows) for j in range(s, cols) if m[i, j] != 0]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            m.row_swap(s, i)
            left.row_swap(s, i)
            m.col_swap(s, j)
            right.col_swap(s, j)
            pivot = m[s, s]
            for i in range(s + 1, rows):
                q = m[i, s] // pivot
                if q:
                    m[i, :] = m[i, :] - q * m[s, :]
                    left[i, :] = left[i, :] - q * left[s, :]
            for j in range(s + 1, cols):
                q = m[s, j] // pivot
                if q:
                    m[:, j] = m[:, j] - q * m[:, s]
                    right[:, j] = right[:, j] - q * right[:, s]
            if any(m[i, s] for i in range(s + 1, rows)) or any(m[s, j] for j in range(s + 1, cols)):
                continue
            bad = [i for i in range(s + 1, rows) for j in range(s + 1, cols) if m[i, j] % pivot]
            if bad:
                m[s, :] = m[s, :] + m[bad[0], :]
                left[s, :] = left[s, :] + left[bad[0], :]
                continue
            break
        if m[s, s] < 0:
            m[s, :] = -m[s, :]
            left[s, :] = -left[s, :]
    diagonal = [int(m[i, i]) for i in range(min(rows, cols))]
    return diagonal, left, right


def phi_B(matrix) -> LinkingPairing:
    """x^t B^-1 x' on Z^n / B Z^n, in Smith-normal cyclic coordinates."""
    b = sympy.Matrix(matrix)
    if b.shape[0] != b.shape[1] or b != b.T:
        raise ValueError("phi_B needs a square symmetric integer matrix")
    if b.det() == 0:
        raise ValueError("phi_B needs a nonsingular matrix")
    diagonal, left, _ = smith_normal_form(b)
    inverse = b.inv()
    generators = left.inv()
    keep = [i for i, d in enumerate(diagonal) if d > 1]
    orders = tuple(diagonal[i] for i in keep)
    gram = tuple(tuple(Fraction(str((generators[:, i].T * inverse * generators[:, j])[0, 0])) for j in keep)
                 for i in keep)
    return LinkingPairing(orders, gram)


def cyclic(b: int) -> LinkingPairing:
    """phi_(b), the pairing of the lens space L(b, 1)."""
    return phi_B([[b]])


def diagonal_pairing(entries: Sequence[int]) -> LinkingPairing:
    return phi_B(sympy.diag(*entries)) if entries else TRIVIAL


def hyperbolic(k: int) -> LinkingPairing:
    """E_0^k on (Z/2^k)^2 with Gram (1/2^k)[[0, 1], [1, 0]]."""
    if k < 1:
        raise ValueError("E_0^k needs k >= 1")
    d = 2 ** k
    return LinkingPairing((d, d), ((Fraction(0), Fraction(1, d)), (Fraction(1, d), Fraction(0))))


def block_sum(*pairings: LinkingPairing) -> LinkingPairing:
    orders = sum((p.orders for p in pairings), ())
    n = len(orders)
    gram = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for p in pairings:
        for i, j in itertools.product(range(p.rank), repeat=2):
            gram[offset + i][offset + j] = p.gram[i][j]
        offset += p.rank
    return LinkingPairing(orders, tuple(tuple(row) for row in gram), check_bound=0)


# -- isomorphism -----------------------------------------------------------------

def _profile(p: LinkingPairing, modulus: int) -> Counter:
    x = p.elements()
    return Counter(zip(p.element_orders(x).tolist(), p.self_linking(x, modulus).tolist()))


def find_isomorphism(nu: LinkingPairing, mu: LinkingPairing, bound: int = SEARCH_BOUND) -> Optional[Witness]:
    """Images of the generators of ``nu`` under an isomorphism onto ``mu``, or None."""
    if nu.size != mu.size:
        return None
    if nu.size > bound:
        raise SizeBoundError(f"isomorphism search on groups of order {nu.size} exceeds the bound {bound}")
    modulus = _lcm([nu.exponent, mu.exponent])
    if _profile(nu, modulus) != _profile(mu, modulus):
        return None
    target = mu.elements()
    target_orders = mu.element_orders(target)
    target_self = mu.self_linking(target, modulus)
    a_mu = mu.scaled_gram(modulus)
    a_nu = nu.scaled_gram(modulus)
    pairs_with = (target @ a_mu) % modulus

    def extend(images: List[int]) -> Optional[List[int]]:
        i = len(images)
        if i == nu.rank:
            return images
        mask = (target_orders == nu.orders[i]) & (target_self == a_nu[i, i])
        for j, h in enumerate(images):
            mask &= (pairs_with @ target[h]) % modulus == a_nu[i, j]
        for h in np.flatnonzero(mask).tolist():
            found = extend(images + [h])
            if found is not None:
                return found
        return None

    found = extend([])
    if found is None:
        return None
    witness = tuple(tuple(int(c) for c in target[h]) for h in found)
    logger.debug("isomorphism %s -> %s: %s", nu, mu, witness)
    return witness


def is_isomorphic(nu: LinkingPairing, mu: LinkingPairing, bound: int = SEARCH_BOUND) -> bool:
    return find_isomorphism(nu, mu, bound) is not None


# -- stabilization -----------------------------------------------------------------

def is_prime_type(entries: Sequence[int]) -> bool:
    """Every entry is 0, +-1 or +- a prime power."""
    return all(b in (0, 1, -1) or len(sympy.factorint(abs(b))) == 1 for b in entries)


def e0_trading_pairs(k: int) -> Tuple[LinkingPairing, LinkingPairing]:
    """E_0^k + phi_(-2^k) against phi_(-2^k) + phi_(2^k) + phi_(-2^k)."""
    d = 2 ** k
    return block_sum(hyperbolic(k), cyclic(-d)), diagonal_pairing([-d, d, -d])


@dataclass
class StabilizedDiagonal:
    entries: Tuple[int, ...]
    enhancement: Tuple[int, ...] = ()
    verified: Optional[bool] = None

    @property
    def framings(self) -> Tuple[int, ...]:
        """Diagonal linking matrix B' + D of the enhanced surgery presentation."""
        return self.entries + self.enhancement

    def presentation(self) -> SurgeryPresentation:
        return SurgeryPresentation(tuple(SurgeryBlock(b) for b in self.framings))


def stabilized_diagonal(entries: Sequence[int], e0_ks: Sequence[int], s: int = 1,
                        enhancement: Sequence[int] = (), bound: int = SEARCH_BOUND) -> StabilizedDiagonal:
    """Diagonalize s (phi_B + E_0^k_1 + ...) + phi_(-2^k_1) + ... by trading each E_0 block.

    Each E_0^k block, paired with one phi_(-2^k), becomes phi_(2^k) + phi_(-2^k);
    the result keeps one phi_(-2^k) and s copies each of phi_(2^k) and phi_(-2^k).
    When the group has order at most ``bound`` the result is checked against
    the block sum by brute force.
    """
    if s < 1:
        raise ValueError("s must be positive")
    if any(abs(b) < 2 for b in entries):
        raise ValueError("phi_B entries must have absolute value >= 2")
    if any(d not in (0, 1, -1) for d in enhancement):
        raise ValueError("an enhancement only adds diagonal entries 0, +-1")
    diagonal = list(entries) * s
    for k in e0_ks:
        d = 2 ** k
        diagonal += [-d] + [d] * s + [-d] * s
    result = StabilizedDiagonal(tuple(diagonal), tuple(enhancement))
    size = math.prod(abs(b) for b in diagonal)
    if size <= bound:
        blocks = [cyclic(b) for b in entries] * s
        for k in e0_ks:
            blocks += [hyperbolic(k)] * s + [cyclic(-2 ** k)]
        result.verified = is_isomorphic(block_sum(*blocks), diagonal_pairing(diagonal), bound)
    return result
