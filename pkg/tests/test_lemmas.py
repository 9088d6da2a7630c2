import pytest

from sumsetlab.lemmas import (
    LEMMA_IDS,
    MARGIN_TOL,
    check_1var,
    check_2var,
    check_increasing_ratio,
    check_key_lemma_1,
    check_key_lemma_2,
    check_key_thm1,
    check_lemma,
    check_main_F,
    check_six_point,
    check_subtle,
)
from sumsetlab.supconv import six_point_gap


def _assert_clean(report):
    assert report.passed
    assert report.min_margin >= -MARGIN_TOL
    d = report.to_dict()
    assert set(d) == {
        "lemma", "grid", "min_margin", "argmin", "passed", "seed", "details"
    }


def test_key_lemma_1_small():
    report = check_key_lemma_1(n=3, draws=2_000, seed=1)
    _assert_clean(report)
    # the sampled witness tuple is nonincreasing
    w = report.argmin["w"]
    assert w == sorted(w, reverse=True)


def test_key_lemma_2_small():
    _assert_clean(check_key_lemma_2(n=5, points=2_000))


def test_increasing_ratio_small():
    report = check_increasing_ratio(n=4, points=2_000)
    _assert_clean(report)
    assert report.details["symmetry_residual"] < 1e-9


def test_main_F_small():
    _assert_clean(check_main_F(n=4, points=2_000))


def test_1var_small():
    _assert_clean(check_1var(points=2_000))


def test_2var_small():
    _assert_clean(check_2var(points=200))


def test_key_thm1_small():
    _assert_clean(check_key_thm1(n=3, draws=2_000, seed=1))


@pytest.mark.parametrize("p", [1.3, 2.0, 4.0])
def test_subtle_small(p):
    _assert_clean(check_subtle(p=p, points=2_000))


def test_six_point_small():
    report = check_six_point(step=0.05)
    _assert_clean(report)
    # the argmin must agree with the scalar evaluation
    x, y = report.argmin["x"], report.argmin["y"]
    p = report.grid["p"]
    assert six_point_gap(x, y, p) == pytest.approx(report.min_margin, abs=1e-12)


def test_dispatch_matches_direct_call():
    direct = check_key_lemma_2(n=3, points=500)
    via = check_lemma("key-lemma-2", n=3, points=500)
    assert via.to_dict() == direct.to_dict()


def test_dispatch_covers_all_ids():
    assert len(LEMMA_IDS) == 9
    with pytest.raises(ValueError, match="unknown lemma id"):
        check_lemma("no-such-lemma")


def test_random_checks_deterministic_per_seed():
    a = check_key_thm1(n=3, draws=1_000, seed=42)
    b = check_key_thm1(n=3, draws=1_000, seed=42)
    assert a.to_dict() == b.to_dict()
    c = check_key_thm1(n=3, draws=1_000, seed=43)
    assert c.min_margin != a.min_margin
