import math
import random

import pytest

from sumsetlab.constants import cube_upper_exponent
from sumsetlab.lattice import InstanceTooLargeError, LatticeSet, cube
from sumsetlab.sumsets import minkowski_sum
from sumsetlab.verify import (
    MARGIN_TOL,
    SCHEMA_VERSION,
    STATEMENTS,
    GridPacker,
    search_min_ratio,
    verify_cube_containing,
    verify_dilate_bound,
    verify_energy_bounds,
    verify_klein_sum_with_cube,
    verify_n_fold_hypercube,
    verify_three_sets,
    verify_two_sets,
)


def test_packer_roundtrip_and_sumset_oracle():
    rng = random.Random(0)
    for _ in range(30):
        d = rng.choice([1, 2, 3])
        box = cube(3, d)
        packer = GridPacker(d, 8)
        a = [p for p in box.points if rng.random() < 0.5] or [box.points[0]]
        b = [p for p in box.points if rng.random() < 0.5] or [box.points[-1]]
        mask = packer.sumset([packer.index(p) for p in a], packer.mask_of(b))
        got = sorted(packer.unpack(mask))
        want = minkowski_sum(LatticeSet(d, a), LatticeSet(d, b)).points
        assert got == list(want)


def test_packer_rejects_out_of_range():
    packer = GridPacker(2, 4)
    with pytest.raises(ValueError):
        packer.index((4, 0))


def test_two_sets_tiny_exhaustive():
    report = verify_two_sets(1, 1)
    assert report.instances == 9
    assert report.violations == 0
    assert report.min_log_margin >= -MARGIN_TOL
    assert report.version == SCHEMA_VERSION
    # equality instances are surfaced as near-equalities
    assert any(abs(e["log_margin"]) <= 1e-12 for e in report.near_equalities)


def test_two_sets_sharp_equality_witness():
    report = verify_two_sets(2, 1)
    assert report.instances == 49
    assert report.violations == 0
    assert abs(report.min_log_margin) <= 1e-9
    full = [[0], [1], [2]]
    assert any(
        e["A"] == full and e["B"] == full for e in report.near_equalities
    )


def test_two_sets_sharpness_probe():
    p = cube_upper_exponent(2, 2) + 0.01
    report = verify_two_sets(2, 1, p=p)
    assert report.violations >= 1
    assert report.argmin["A"] == [[0], [1], [2]]


def test_two_sets_random_mode_needs_seed():
    with pytest.raises(ValueError):
        verify_two_sets(2, 1, mode="random", count=10)
    with pytest.raises(ValueError):
        verify_two_sets(2, 1, mode="nonsense")


def test_two_sets_base_cap():
    with pytest.raises(InstanceTooLargeError):
        verify_two_sets(3, 2)


def test_two_sets_conjectured_flag():
    assert verify_two_sets(1, 1).details["conjectured_exponent"] is False
    small = verify_two_sets(3, 1, mode="random", count=5, seed=0)
    assert small.details["conjectured_exponent"] is True


def test_n_fold_tiny_exhaustive():
    report = verify_n_fold_hypercube(2, 1)
    assert report.instances == 9
    assert report.violations == 0
    report2 = verify_n_fold_hypercube(3, 1)
    assert report2.violations == 0
    assert abs(report2.min_log_margin) <= 1e-9


def test_n_fold_exhaustive_cap():
    with pytest.raises(InstanceTooLargeError):
        verify_n_fold_hypercube(4, 4)


def test_three_sets_small():
    report = verify_three_sets(1, p=2.0, count=200, seed=5, box=4)
    assert report.instances == 200
    assert report.violations == 0
    assert report.details["implication_violations"] == 0
    assert report.details["brunn_minkowski_violations"] == 0
    with pytest.raises(ValueError):
        verify_three_sets(1, count=10)  # no seed
    with pytest.raises(ValueError):
        verify_three_sets(1, mode="exhaustive")


def test_cube_containing_small():
    report = verify_cube_containing(2, 1, count=100, seed=3, box=5)
    assert report.violations == 0
    assert report.details["cube_witness_exact"] is True
    assert report.details["samples_below_cube_ratio"] == 0


def test_klein_sum_small():
    report = verify_klein_sum_with_cube(2, 1, count=50, seed=4, box=5)
    assert report.violations == 0
    assert report.details["equality_witness_all_cubes"] is True


@pytest.mark.parametrize("d", [1, 2, 3])
def test_energy_bounds_exhaustive(d):
    report = verify_energy_bounds(k=2, d=d)
    assert report.instances == 2 ** (2**d) - 1
    assert report.violations == 0


def test_energy_bounds_cap():
    with pytest.raises(InstanceTooLargeError):
        verify_energy_bounds(d=4)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dilate_bound_exhaustive(d):
    report = verify_dilate_bound(d=d)
    assert report.violations == 0
    assert report.min_log_margin >= -MARGIN_TOL


def test_reports_deterministic_per_seed():
    a = verify_three_sets(1, count=50, seed=9, box=3)
    b = verify_three_sets(1, count=50, seed=9, box=3)
    assert a.to_dict(include_wall_time=False) == b.to_dict(include_wall_time=False)


def test_search_finds_sharp_witness():
    report = search_min_ratio(2, 2, 1, budget=3, seed=0)
    assert report.min_log_margin >= -MARGIN_TOL
    assert abs(report.min_log_margin) <= 1e-9
    assert report.details["evaluations"] > 0
    with pytest.raises(ValueError):
        search_min_ratio(2, 2, 1, budget=0)


def test_statement_registry():
    assert set(STATEMENTS) == {
        "two-sets", "n-fold", "three-sets", "cube-containing",
        "k-sum-cube", "energy", "dilate",
    }
