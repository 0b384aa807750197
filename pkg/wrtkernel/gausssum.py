"""Quadratic Gauss sums G(b, d, w) = sum_{n=0}^{ord(w)-1} w^(b n^2 + d n)."""
import logging
import math
from dataclasses import dataclass
from typing import Union

import sympy

from .cyclo import CycElt, GroupRingAccumulator, RootSpec

logger = logging.getLogger("wrtkernel.gausssum")


@dataclass(frozen=True)
class RootOfUnity:
    """The element zeta_t^exponent, carried with its conductor."""

    t: int
    exponent: int

    @property
    def order(self) -> int:
        return self.t // math.gcd(self.exponent, self.t)

    def power(self, k: int) -> 'RootOfUnity':
        return RootOfUnity(self.t, (self.exponent * k) % self.t)

    @classmethod
    def xi(cls, spec: RootSpec) -> 'RootOfUnity':
        return cls(spec.t, (4 * spec.u) % spec.t)

    @classmethod
    def xi_quarter(cls, spec: RootSpec) -> 'RootOfUnity':
        return cls(spec.t, spec.u)


RootLike = Union[RootOfUnity, RootSpec]


def _as_root(root: RootLike) -> RootOfUnity:
    if isinstance(root, RootSpec):
        return RootOfUnity.xi(root)
    return root


def gauss_brute(b: int, d: int, root: RootLike, order: int = None) -> CycElt:
    """Termwise evaluation; ``order`` is checked against the root when given."""
    root = _as_root(root)
    n = root.order
    if order is not None and order != n:
        raise ValueError(f"root zeta_{root.t}^{root.exponent} has order {n}, not {order}")
    acc = GroupRingAccumulator(root.t)
    for k in range(n):
        acc.add_power(root.exponent * (b * k * k + d * k))
    return acc.result()


def _split_coprime(n: int):
    """n = n1 * n2 with n1 the full power of the smallest prime of n."""
    p = min(sympy.factorint(n))
    n1 = 1
    while n % (n1 * p) == 0:
        n1 *= p
    return n1, n // n1


def gauss_reduce(b: int, d: int, root: RootLike) -> CycElt:
    """G(b, d, root) through the gcd, parity and coprime-splitting reductions.

    Prime-power cores with b coprime to the order are summed directly.
    """
    root = _as_root(root)
    n = root.order
    if n == 1:
        return CycElt.one(root.t)
    c = math.gcd(b % n, n)
    if c > 1:
        if d % c:
            return CycElt.zero(root.t)
        return gauss_reduce(b // c, d // c, root.power(c)) * c
    if n % 4 == 0 and d % 2:
        return CycElt.zero(root.t)
    n1, n2 = _split_coprime(n)
    if n2 > 1:
        logger.debug("splitting G(%d, %d) of order %d as %d * %d", b, d, n, n1, n2)
        return gauss_reduce(b * n2, d, root.power(n2)) * gauss_reduce(b * n1, d, root.power(n1))
    return gauss_brute(b, d, root)
