"""Pseudo-polynomials sum(c_i * x^{a_i}) with real exponents a_i >= 0.

Descartes' rule of signs bounds the number of positive roots by the
number of sign alternations in the coefficient sequence ordered by
exponent; sign crossings along a grid give the matching lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Coefficients that cancel below this during construction are dropped so
# floating-point dust cannot corrupt sign-change counts.
CANCEL_EPS = 1e-14


@dataclass(frozen=True)
class PseudoPolynomial:
    """Terms (coefficient, exponent) with strictly increasing exponents."""

    terms: tuple[tuple[float, float], ...]
    dropped: tuple[float, ...] = ()

    @staticmethod
    def from_terms(
        raw: list[tuple[float, float]], merge_eps: float = 1e-12
    ) -> "PseudoPolynomial":
        """Build from unordered terms, merging equal exponents and
        dropping coefficients that cancel to below CANCEL_EPS."""
        merged: list[list[float]] = []
        for coef, expo in sorted(raw, key=lambda t: t[1]):
            if expo < 0:
                raise ValueError(f"negative exponent {expo}")
            if merged and abs(expo - merged[-1][1]) <= merge_eps:
                merged[-1][0] += coef
            else:
                merged.append([coef, expo])
        kept, dropped = [], []
        for coef, expo in merged:
            if abs(coef) <= CANCEL_EPS:
                dropped.append(expo)
            else:
                kept.append((coef, expo))
        return PseudoPolynomial(tuple(kept), tuple(dropped))

    def eval(self, x: float) -> float:
        if x < 0:
            raise ValueError("pseudo-polynomials are evaluated on x >= 0")
        if x == 0.0:
            return sum(c for c, a in self.terms if a == 0.0)
        return sum(c * x**a for c, a in self.terms)

    def __call__(self, x: float) -> float:
        return self.eval(x)


def sign_changes(poly: PseudoPolynomial) -> int:
    """Sign alternations of the coefficient sequence in exponent order."""
    count = 0
    prev = 0.0
    for coef, _ in poly.terms:
        if prev != 0.0 and coef * prev < 0:
            count += 1
        prev = coef
    return count


def sign_sequence(poly: PseudoPolynomial) -> str:
    return "".join("+" if c > 0 else "-" for c, _ in poly.terms)


def count_sign_crossings(
    poly: PseudoPolynomial, a: float, b: float, grid: int = 10_000
) -> int:
    """Strict sign changes of eval along a geometric grid on [a, b].

    A lower bound for the number of roots in [a, b]; multiplicities and
    roots between grid points are invisible.
    """
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if grid < 2:
        raise ValueError("grid must have >= 2 points")
    ratio = (b / a) ** (1.0 / (grid - 1))
    crossings = 0
    prev = 0.0
    for i in range(grid):
        v = poly.eval(a * ratio**i)
        if prev != 0.0 and v * prev < 0:
            crossings += 1
        if v != 0.0:
            prev = v
    return crossings


# ---------------------------------------------------------------------------
# The concrete pseudo-polynomials driving the one-variable root accounting.


def alpha(n: int) -> float:
    return (n + 1) * math.log(n + 1) / n


def beta(n: int) -> float:
    return math.log(n + 1) / n


def build_H(n: int, m: int) -> PseudoPolynomial:
    """The 14-term pseudo-polynomial comparing the log-derivatives of the
    normalized geometric-series powers of orders n and m.

    The listed exponent order is guaranteed strictly increasing only for
    n = m + 1; for other pairs a violated comparison raises instead of
    silently sorting.
    """
    if not n > m >= 1:
        raise ValueError("need n > m >= 1")
    an, bn, am, bm = alpha(n), beta(n), alpha(m), beta(m)
    cn, cm = (n + 1) / n, (m + 1) / m
    terms = [
        (1 / n, bn),
        (-1 / m, bm),
        (cm - cn, bm + bn),
        (cm, am),
        (-cn, an),
        (-(cn + 1 / m), bn + am),
        (-1.0, am + bm),
        (1.0, an + bn),
        (1 / n + cm, bm + an),
        (cn, am + bm + bn),
        (-cm, an + bn + bm),
        (-(1 / m - 1 / n), am + an),
        (1 / m, an + bn + am),
        (-1 / n, am + bm + an),
    ]
    for i in range(len(terms) - 1):
        if not terms[i][1] < terms[i + 1][1]:
            raise ValueError(
                f"exponent ordering violated for (n,m)=({n},{m}): "
                f"position {i}: {terms[i][1]} !< {terms[i + 1][1]}"
            )
    return PseudoPolynomial(tuple(terms))


def h_symmetry_exponent(n: int, m: int) -> float:
    """All exponents of build_H(n, m) pair up to this sum; under x -> 1/x
    the polynomial is antisymmetric: H(1/x) * x^s = -H(x)."""
    return alpha(n) + beta(n) + alpha(m) + beta(m)


def build_P(p: float) -> PseudoPolynomial:
    """The sign polynomial of the logarithmic derivative comparing
    (1 + x^{3p/2})^2 against (1+x)^p (1+x+x^2)^p."""
    e = 1.5 * p
    return PseudoPolynomial.from_terms(
        [(-2.0, 0.0), (3.0, e - 1), (-4.0, 1.0), (4.0, e), (-3.0, 2.0), (2.0, e + 1)]
    )


def build_subtle_H(p: float) -> PseudoPolynomial:
    """The 10-term expansion of x * d/dx log of the three-factor ratio
    (1-x^p)^{1/p} (1-x^q)^{1/q} / ((1-x)(1+x^c)^{1/c}), times the product
    of its denominators.  Satisfies H(1/x) = H(x) x^{-1-c-p-q}."""
    from .constants import c_of_p, conjugate

    q = conjugate(p)
    c = c_of_p(p)
    return PseudoPolynomial.from_terms(
        [
            (1.0, 1.0),
            (-1.0, c),
            (2.0, 1 + c),
            (-1.0, p),
            (-1.0, q),
            (-1.0, 1 + c + p),
            (-1.0, 1 + c + q),
            (2.0, p + q),
            (-1.0, p + q + 1),
            (1.0, p + q + c),
        ]
    )


def geometric_series_power(n: int, x: float) -> float:
    """F_n(x) = (1 + y + ... + y^n)^{1/log(n+1)} at y = x^{log(n+1)/n};
    normalized so F_n(0) = 1 and F_n(1) = e for every n."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if x == 0.0:
        return 1.0
    y = x ** beta(n)
    s = sum(y**i for i in range(n + 1))
    return s ** (1.0 / math.log(n + 1))
