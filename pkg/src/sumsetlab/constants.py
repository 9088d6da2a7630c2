"""Sharp exponent constants, with bisection where a constant is implicit.

Every constant is returned together with its defining residual so reports
can print verification evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

BISECTION_MAX_ITER = 200


@dataclass(frozen=True)
class Constant:
    value: float
    definition: str
    residual: float


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-14,
    max_iter: int = BISECTION_MAX_ITER,
) -> float:
    """Bisection on a bracketing interval; unconditional and reproducible."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or hi - lo < tol:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def cube_upper_exponent(n: int, m: int) -> float:
    """log(nm+1) / (n log(m+1)), the full-cube upper bound for p_{n,m}."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return math.log(n * m + 1) / (n * math.log(m + 1))


def tau_residual(m: int, t: float) -> float:
    return (m + 1) ** (2 * t) - (m * (m + 1)) ** t - 1


def tau(m: int) -> Constant:
    """The root t in (0,1) of 1 + (m(m+1))^t = (m+1)^{2t}, for m >= 3."""
    if m < 3:
        raise ValueError("tau is defined for m >= 3")
    f = lambda t: tau_residual(m, t)
    lo, hi = 0.5, 1.0
    if f(lo) * f(hi) > 0:
        lo = 0.01
    root = bisect_root(f, lo, hi)
    return Constant(root, f"tau({m})", tau_residual(m, root))


def q_hypercube(n: int) -> float:
    """n / log2(n+1), the norm exponent of the n-fold hypercube inequality."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n / math.log2(n + 1)


def conjugate(p: float) -> float:
    """q with 1/p + 1/q = 1."""
    if p <= 1:
        raise ValueError("p must be > 1")
    return p / (p - 1)


def c_of_p(p: float) -> float:
    """The c >= 1 with 2^{1/c} = p^{1/p} q^{1/q}, q conjugate to p."""
    if p <= 1:
        raise ValueError("p must be > 1")
    q = conjugate(p)
    return 1.0 / math.log2(p ** (1 / p) * q ** (1 / q))


def compute_constant(which: str, n: int | None = None, m: int | None = None,
                     p: float | None = None) -> Constant:
    """Uniform entry point used by the service layer."""
    if which == "cube-upper":
        if n is None or m is None:
            raise ValueError("cube-upper needs --n and --m")
        v = cube_upper_exponent(n, m)
        residual = math.exp(n * v * math.log(m + 1)) - (n * m + 1)
        return Constant(v, f"cube_upper_exponent({n},{m})", residual)
    if which == "tau":
        if m is None:
            raise ValueError("tau needs --m")
        return tau(m)
    if which == "q-hypercube":
        if n is None:
            raise ValueError("q-hypercube needs --n")
        v = q_hypercube(n)
        return Constant(v, f"q_hypercube({n})", 2 ** (n / v) - (n + 1))
    if which == "conjugate":
        if p is None:
            raise ValueError("conjugate needs --p")
        v = conjugate(p)
        return Constant(v, f"conjugate({p})", 1.0 / p + 1.0 / v - 1.0)
    if which == "c-of-p":
        if p is None:
            raise ValueError("c-of-p needs --p")
        v = c_of_p(p)
        q = conjugate(p)
        return Constant(
            v, f"c_of_p({p})", 2 ** (1.0 / v) - p ** (1 / p) * q ** (1 / q)
        )
    raise ValueError(f"unknown constant {which!r}")
