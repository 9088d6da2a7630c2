"""Exact integer-lattice set and function primitives.

Sets are finite subsets of Z^d with the counting measure; functions are
finitely supported maps Z^d -> [0, inf).  Everything is immutable after
construction and iterates in lexicographic point order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

Point = tuple[int, ...]

# Sumset arithmetic refuses coordinates outside this band; counting
# arguments need exact integers, so overflow is never silent.
COORD_BAND = 2**40

# enumerate_nonempty_subsets refuses bases larger than this.
SUBSET_ENUMERATION_CAP = 24


class InstanceTooLargeError(ValueError):
    """An enumeration or work cap was exceeded."""


def _check_point(p: Point, dim: int) -> Point:
    p = tuple(int(c) for c in p)
    if len(p) != dim:
        raise ValueError(f"point {p} has length {len(p)}, expected {dim}")
    for c in p:
        if abs(c) > COORD_BAND:
            raise OverflowError(f"coordinate {c} outside safe band +-2^40")
    return p


@dataclass(frozen=True)
class LatticeSet:
    """A finite deduplicated subset of Z^dim."""

    dim: int
    points: tuple[Point, ...]

    def __init__(self, dim: int, points: Iterable[Point]):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        pts = {_check_point(p, dim) for p in points}
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", tuple(sorted(pts)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.points)

    def is_empty(self) -> bool:
        return not self.points


def cardinality(s: LatticeSet) -> int:
    return len(s)


def cube(m: int, d: int) -> LatticeSet:
    """The full grid {0, ..., m}^d."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    pts: list[Point] = [()]
    for _ in range(d):
        pts = [p + (c,) for p in pts for c in range(m + 1)]
    return LatticeSet(d, pts)


def enumerate_nonempty_subsets(base: LatticeSet) -> Iterator[LatticeSet]:
    """Yield the 2^|base| - 1 nonempty subsets in bitmask order.

    Bit i of the mask selects the i-th point of `base` in lexicographic
    order, so the stream is deterministic and splittable by mask range.
    """
    n = len(base)
    if n > SUBSET_ENUMERATION_CAP:
        raise InstanceTooLargeError(
            f"instance too large: |base| = {n} exceeds cap {SUBSET_ENUMERATION_CAP}"
        )
    pts = base.points
    for mask in range(1, 1 << n):
        yield LatticeSet(base.dim, (pts[i] for i in range(n) if mask >> i & 1))


@dataclass(frozen=True)
class FiniteFunction:
    """A finitely supported function Z^dim -> [0, inf).

    Zero values are dropped on construction; the support is exactly the
    key set of `values`.
    """

    dim: int
    values: Mapping[Point, float] = field(hash=False)

    def __init__(self, dim: int, values: Mapping[Point, float]):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        clean: dict[Point, float] = {}
        for p, v in values.items():
            v = float(v)
            if v < 0:
                raise ValueError(f"negative value {v} at {p}")
            if v > 0:
                clean[_check_point(p, dim)] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    def support(self) -> LatticeSet:
        return LatticeSet(self.dim, self.values.keys())

    def __call__(self, p: Point) -> float:
        return self.values.get(tuple(p), 0.0)

    def items(self):
        return self.values.items()

    @staticmethod
    def indicator(s: LatticeSet) -> "FiniteFunction":
        return FiniteFunction(s.dim, {p: 1.0 for p in s})


def lp_norm(f: FiniteFunction, p: float) -> float:
    """The l^p norm of f; p = inf gives the max value, p = 1 the plain sum."""
    if math.isinf(p):
        return max(f.values.values(), default=0.0)
    if p < 1 - 1e-12:
        raise ValueError(f"p = {p} < 1 is not a norm exponent here")
    p = max(p, 1.0)  # absorb rounding in derived exponents like c_of_p(2)
    if p == 1:
        return sum(f.values.values())
    return sum(v**p for v in f.values.values()) ** (1.0 / p)


# ---------------------------------------------------------------------------
# File formats


def set_to_json(s: LatticeSet) -> dict:
    return {"dim": s.dim, "points": [list(p) for p in s]}


def set_from_json(obj: dict) -> LatticeSet:
    dim = int(obj["dim"])
    raw = [tuple(int(c) for c in p) for p in obj["points"]]
    if len(set(raw)) != len(raw):
        raise ValueError("duplicate points in input")
    return LatticeSet(dim, raw)


def save_set(s: LatticeSet, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(set_to_json(s), fh)


def load_set(path: str) -> LatticeSet:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return set_from_json(json.loads(text))
    return set_from_text(text)


def set_from_text(text: str) -> LatticeSet:
    """One point per line, space-separated integers; dim from the first line."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty set file")
    dim = len(rows[0])
    raw = [tuple(int(c) for c in row) for row in rows]
    if any(len(p) != dim for p in raw):
        raise ValueError("inconsistent dimensions across lines")
    if len(set(raw)) != len(raw):
        raise ValueError("duplicate points in input")
    return LatticeSet(dim, raw)


def set_to_text(s: LatticeSet) -> str:
    return "\n".join(" ".join(str(c) for c in p) for p in s) + "\n"


def function_to_json(f: FiniteFunction) -> dict:
    return {
        "dim": f.dim,
        "values": [{"point": list(p), "value": v} for p, v in f.items()],
    }


def function_from_json(obj: dict) -> FiniteFunction:
    dim = int(obj["dim"])
    vals: dict[Point, float] = {}
    for entry in obj["values"]:
        p = tuple(int(c) for c in entry["point"])
        v = float(entry["value"])
        if v <= 0:
            raise ValueError(f"non-positive value {v} at {p}")
        if p in vals:
            raise ValueError(f"duplicate point {p}")
        vals[p] = v
    return FiniteFunction(dim, vals)
