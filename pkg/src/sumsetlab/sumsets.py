"""Exact Minkowski-sum arithmetic and additive energy.

Representation counts are built by iterated map convolution (k-1
convolutions of integer count maps), never by enumerating k-tuples, so
k-additive energies stay feasible at d = 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .lattice import COORD_BAND, InstanceTooLargeError, LatticeSet, Point

# Cap on elementary additions while convolving count maps.
DEFAULT_WORK_CAP = 10**8

_INT64_MAX = 2**63 - 1


def _add(a: Point, b: Point) -> Point:
    z = tuple(x + y for x, y in zip(a, b))
    for c in z:
        if abs(c) > COORD_BAND:
            raise OverflowError(f"coordinate {c} outside safe band +-2^40")
    return z


def minkowski_sum(a: LatticeSet, b: LatticeSet) -> LatticeSet:
    """{x + y : x in a, y in b}; empty if either operand is empty."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    return LatticeSet(a.dim, {_add(x, y) for x in a for y in b})


def iterated_sum(a: LatticeSet, k: int) -> LatticeSet:
    """The k-fold sum kA = A + ... + A; iterated_sum(a, 1) is a itself."""
    if k < 1:
        raise ValueError("k must be >= 1")
    acc = a
    for _ in range(k - 1):
        acc = minkowski_sum(acc, a)
    return acc


def dilated_sum(a: LatticeSet, lam: int, b: LatticeSet) -> LatticeSet:
    """{x + lam*y : x in a, y in b} for a positive integer dilation lam."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    if lam < 1:
        raise ValueError("lambda must be a positive integer")
    scaled = LatticeSet(b.dim, (tuple(lam * c for c in p) for p in b))
    return minkowski_sum(a, scaled)


@dataclass(frozen=True)
class RepresentationCounts:
    """counts[z] = number of ordered k-tuples from A summing to z."""

    dim: int
    k: int
    counts: Mapping[Point, int] = field(hash=False)

    def support(self) -> LatticeSet:
        return LatticeSet(self.dim, self.counts.keys())

    def total(self) -> int:
        return sum(self.counts.values())


def representation_counts(
    a: LatticeSet, k: int, work_cap: int = DEFAULT_WORK_CAP
) -> RepresentationCounts:
    if k < 1:
        raise ValueError("k must be >= 1")
    base = {p: 1 for p in a}
    acc = dict(base)
    work = 0
    for _ in range(k - 1):
        work += len(acc) * len(base)
        if work > work_cap:
            raise InstanceTooLargeError(
                f"representation counts need > {work_cap} elementary additions"
            )
        nxt: dict[Point, int] = {}
        for z, c in acc.items():
            for p in base:
                s = _add(z, p)
                nc = nxt.get(s, 0) + c
                if nc > _INT64_MAX:
                    raise OverflowError("representation count exceeds 64-bit range")
                nxt[s] = nc
        acc = nxt
    return RepresentationCounts(a.dim, k, dict(sorted(acc.items())))


def additive_energy(a: LatticeSet, k: int = 2, work_cap: int = DEFAULT_WORK_CAP) -> int:
    """E_k(A) = sum_z r_k(z)^2; k = 2 gives the classical additive energy."""
    if a.is_empty():
        return 0
    rc = representation_counts(a, k, work_cap=work_cap)
    total = 0
    for c in rc.counts.values():
        total += c * c
        if total > _INT64_MAX:
            raise OverflowError("additive energy exceeds 64-bit range")
    return total
