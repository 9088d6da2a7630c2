"""Property-based checks over randomly generated instances."""

import math

from hypothesis import given, settings
from hypothesis import strategies as st

from sumsetlab.lattice import FiniteFunction, LatticeSet, lp_norm
from sumsetlab.sumsets import additive_energy, iterated_sum, minkowski_sum
from sumsetlab.supconv import (
    SequenceFamily,
    general_lhs,
    general_rhs,
    prekopa_weights,
    rearrange_decreasing,
    sup_convolution,
    weighted_max_sum_lhs,
)

points_1d = st.lists(
    st.tuples(st.integers(-6, 6)), min_size=1, max_size=6, unique=True
)


@given(points_1d, points_1d)
def test_minkowski_commutes_and_bounds(pa, pb):
    a, b = LatticeSet(1, pa), LatticeSet(1, pb)
    ab = minkowski_sum(a, b)
    assert ab.points == minkowski_sum(b, a).points
    assert max(len(a), len(b)) <= len(ab) <= len(a) * len(b)


@given(points_1d, st.integers(1, 4))
def test_iterated_sum_cardinality_monotone(pa, k):
    a = LatticeSet(1, pa)
    cards = [len(iterated_sum(a, j)) for j in range(1, k + 1)]
    assert cards == sorted(cards)


@given(points_1d, st.integers(2, 3))
def test_energy_trivial_bounds(pa, k):
    a = LatticeSet(1, pa)
    e = additive_energy(a, k)
    assert len(a) ** k <= e <= len(a) ** (2 * k - 1)


values = st.dictionaries(
    st.tuples(st.integers(-4, 4)),
    st.floats(0.01, 4.0, allow_nan=False),
    min_size=1,
    max_size=5,
)


@given(values, values)
def test_sup_convolution_support_is_sumset(va, vb):
    f, g = FiniteFunction(1, va), FiniteFunction(1, vb)
    conv = sup_convolution(f, g)
    want = minkowski_sum(f.support(), g.support())
    assert conv.support().points == want.points


@given(values, st.floats(0.3, 1.0))
def test_weighted_lhs_scaling(va, p):
    # scaling a factor by t scales the LHS by t^p
    f = FiniteFunction(1, va)
    t = 3.0
    scaled = FiniteFunction(1, {x: t * v for x, v in f.items()})
    base = weighted_max_sum_lhs([f, f], [p, p])
    got = weighted_max_sum_lhs([scaled, f], [p, p])
    assert math.isclose(got, t**p * base, rel_tol=1e-10)


@given(values, st.floats(1.0, 8.0))
def test_lp_norm_dominated_by_l1(va, p):
    f = FiniteFunction(1, va)
    assert lp_norm(f, p) <= lp_norm(f, 1.0) + 1e-12


rows = st.lists(
    st.lists(st.floats(0.0, 3.0), min_size=3, max_size=3).filter(
        lambda r: any(v > 0 for v in r)
    ),
    min_size=1,
    max_size=3,
)


@given(rows, st.floats(0.2, 1.2))
@settings(max_examples=200)
def test_rearrangement_never_increases_lhs(rws, w):
    fam = SequenceFamily(tuple(tuple(r) for r in rws), (w,) * len(rws))
    sorted_fam = rearrange_decreasing(fam)
    assert general_lhs(sorted_fam) <= general_lhs(fam) + 1e-9
    assert math.isclose(general_rhs(sorted_fam), general_rhs(fam), rel_tol=1e-12)


@given(st.integers(1, 6), st.floats(0.0, 10.0))
def test_prekopa_weights_normalized_and_increasing(k, lam):
    w = prekopa_weights(k, lam)
    assert len(w) == k
    assert math.isclose(sum(w), 1.0, abs_tol=1e-12)
    assert all(b >= a for a, b in zip(w, w[1:]))
