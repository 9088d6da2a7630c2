"""Sup-convolution machinery and the two structural reductions:
marginalizing a coordinate (dimension compression) and sorting each
factor to nonincreasing order (rearrangement).

The max over representations x1 + ... + xn = z is computed by folding
pairwise sup-convolutions of the weighted factors; sup-convolution is
associative, so this realizes the inner max without touching the
exponential tuple space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .lattice import FiniteFunction, LatticeSet, Point, lp_norm


def sup_convolution(f: FiniteFunction, g: FiniteFunction) -> FiniteFunction:
    """(f *sup g)(z) = max over x of f(x) g(z - x)."""
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} != {g.dim}")
    if not f.values or not g.values:
        raise ValueError("sup-convolution needs nonempty supports")
    out: dict[Point, float] = {}
    for x, fx in f.items():
        for y, gy in g.items():
            z = tuple(a + b for a, b in zip(x, y))
            v = fx * gy
            if v > out.get(z, 0.0):
                out[z] = v
    return FiniteFunction(f.dim, out)


def power(f: FiniteFunction, p: float) -> FiniteFunction:
    return FiniteFunction(f.dim, {x: v**p for x, v in f.items()})


def weighted_max_sum_lhs(
    fs: Sequence[FiniteFunction], ps: Sequence[float]
) -> float:
    """sum_z max_{x1+...+xn=z} prod_j f_j(x_j)^{p_j}."""
    if not fs:
        raise ValueError("empty factor list")
    if len(fs) != len(ps):
        raise ValueError("factor and weight lists must have equal length")
    acc = power(fs[0], ps[0])
    for f, p in zip(fs[1:], ps[1:]):
        acc = sup_convolution(acc, power(f, p))
    return sum(acc.values.values())


def weighted_rhs(fs: Sequence[FiniteFunction], ps: Sequence[float]) -> float:
    """prod_j (sum_x f_j(x))^{p_j}."""
    if not fs:
        raise ValueError("empty factor list")
    if len(fs) != len(ps):
        raise ValueError("factor and weight lists must have equal length")
    return math.prod(lp_norm(f, 1.0) ** p for f, p in zip(fs, ps))


def compress_to_1d(fs: Sequence[FiniteFunction]) -> list[FiniteFunction]:
    """Marginalize the last coordinate of each factor (one compression
    step, d -> d-1); total masses are preserved exactly by Fubini."""
    if any(f.dim < 2 for f in fs):
        raise ValueError("nothing to compress at dim 1")
    out = []
    for f in fs:
        marg: dict[Point, float] = {}
        for x, v in f.items():
            head = x[:-1]
            marg[head] = marg.get(head, 0.0) + v
        out.append(FiniteFunction(f.dim - 1, marg))
    return out


# ---------------------------------------------------------------------------
# The one-dimensional reduced form


@dataclass(frozen=True)
class SequenceFamily:
    """n rows of m+1 nonnegative reals with positive weights, the reduced
    1-D instance of the product-form inequality."""

    rows: tuple[tuple[float, ...], ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("need at least one row")
        if len(self.rows) != len(self.weights):
            raise ValueError("rows and weights must have equal length")
        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise ValueError("rows must all have equal length")
            if any(v < 0 for v in row):
                raise ValueError("row entries must be nonnegative")
            if not any(v > 0 for v in row):
                raise ValueError("every row needs at least one positive entry")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0]) - 1


def rearrange_decreasing(family: SequenceFamily) -> SequenceFamily:
    """Sort every row to nonincreasing order; never increases the LHS."""
    return SequenceFamily(
        tuple(tuple(sorted(row, reverse=True)) for row in family.rows),
        family.weights,
    )


def _fold_rows(rows, weights) -> list[float]:
    """1-D sup-convolution fold of the weighted rows."""
    acc = [v ** weights[0] for v in rows[0]]
    for row, w in zip(rows[1:], weights[1:]):
        powered = [v**w for v in row]
        out = [0.0] * (len(acc) + len(row) - 1)
        for i, a in enumerate(acc):
            if a == 0.0:
                continue
            for j, b in enumerate(powered):
                v = a * b
                if v > out[i + j]:
                    out[i + j] = v
        acc = out
    return acc


def general_lhs(family: SequenceFamily) -> float:
    """sum_k max_{i1+...+in=k} prod_j (y^{(j)}_{i_j})^{p_j}."""
    return sum(_fold_rows(family.rows, family.weights))


def general_rhs(family: SequenceFamily) -> float:
    """prod_j (sum_i y^{(j)}_i)^{p_j}."""
    return math.prod(sum(row) ** w for row, w in zip(family.rows, family.weights))


def general_lhs_unweighted(family: SequenceFamily) -> float:
    """sum_k max of plain products, the change-of-variables form."""
    return sum(_fold_rows(family.rows, (1.0,) * family.n))


def general_rhs_powered(family: SequenceFamily) -> float:
    """prod_j (sum_i (y^{(j)}_i)^{1/p_j})^{p_j}, the partner normalization;
    equal to general_rhs after substituting y -> y^{p_j} per row."""
    return math.prod(
        sum(v ** (1.0 / w) for v in row) ** w
        for row, w in zip(family.rows, family.weights)
    )


def six_point_gap(
    x: Sequence[float], y: Sequence[float], p: float
) -> float:
    """LHS - RHS of the six-point inequality
    sum_{k=0}^4 max_{i+j=k} x_i^p y_j^p >= (x0+x1+x2)^p (y0+y1+y2)^p."""
    if len(x) != 3 or len(y) != 3:
        raise ValueError("x and y must be triples")
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    xp = [v**p for v in x]
    yp = [v**p for v in y]
    lhs = 0.0
    for k in range(5):
        lhs += max(
            xp[i] * yp[k - i] for i in range(max(0, k - 2), min(2, k) + 1)
        )
    return lhs - (sum(x) ** p) * (sum(y) ** p)


# ---------------------------------------------------------------------------
# Discretized Prekopa--Leindler weights


def prekopa_weights(k: int, lam: float) -> list[float]:
    """Weights e^{j lam} (e^lam - 1)/(e^{k lam} - 1), j = 0..k-1; the
    lam = 0 case is the uniform limit 1/k.  Always sums to 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    if lam == 0.0:
        return [1.0 / k] * k
    scale = math.expm1(lam) / math.expm1(k * lam)
    return [math.exp(j * lam) * scale for j in range(k)]


def prop01_check(funcs: Sequence[FiniteFunction], lam: float) -> float:
    """Signed margin of the discretized Prekopa--Leindler inequality
    sum_n max_j p_j (a_1 *sup ... *sup a_k)(n - j) >= prod_i ||a_i||_k."""
    k = len(funcs)
    if k < 2:
        raise ValueError("need at least two functions")
    if any(f.dim != 1 for f in funcs):
        raise ValueError("prop01_check expects 1-D functions")
    weights = prekopa_weights(k, lam)
    conv = funcs[0]
    for f in funcs[1:]:
        conv = sup_convolution(conv, f)
    support = [x[0] for x in conv.values]
    lhs = 0.0
    for n in range(min(support), max(support) + k):
        lhs += max(weights[j] * conv((n - j,)) for j in range(k))
    rhs = math.prod(lp_norm(f, float(k)) for f in funcs)
    return lhs - rhs
