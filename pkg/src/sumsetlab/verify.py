"""Campaign runner: exhaustive and randomized verification of the sumset
theorems, plus extremizer search.

Cardinalities stay exact integers throughout; inequality margins are
log(LHS) - log(RHS) with exponents applied in log domain, compared at
absolute tolerance 1e-9.  Instances with |margin| <= 1e-6 are listed as
near-equalities so sharpness witnesses stay visible in reports.

Subsets of small boxes are packed into integer bitmasks keyed by the
mixed-radix index sum(x_i * w^i); adding points is then a plain shift,
which is what makes the exhaustive campaigns fast.  The generic tuple
arithmetic in sumsets.py is the oracle the packed path is tested against.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .constants import c_of_p, conjugate, cube_upper_exponent
from .lattice import InstanceTooLargeError, LatticeSet, Point, cube
from .sumsets import additive_energy, dilated_sum, iterated_sum, minkowski_sum

SCHEMA_VERSION = "sumsetlab/1"
MARGIN_TOL = 1e-9
NEAR_EQUALITY_TOL = 1e-6
NEAR_EQUALITY_CAP = 64
EXHAUSTIVE_BASE_CAP = 12
DEFAULT_BOX = 8

# Sparse and dense regimes both produce extremizers; each random set
# draws its density from this menu.
DENSITY_MENU = (0.1, 0.3, 0.5, 0.8)


@dataclass
class CampaignReport:
    statement: str
    params: dict
    instances: int
    violations: int
    min_log_margin: float
    argmin: dict | None
    near_equalities: list
    seed: int | None
    wall_time: float
    version: str = SCHEMA_VERSION
    details: dict = field(default_factory=dict)

    def to_dict(self, include_wall_time: bool = True) -> dict:
        d = {
            "statement": self.statement,
            "params": self.params,
            "instances": self.instances,
            "violations": self.violations,
            "min_log_margin": self.min_log_margin,
            "argmin": self.argmin,
            "near_equalities": self.near_equalities,
            "seed": self.seed,
            "version": self.version,
            "details": self.details,
        }
        if include_wall_time:
            d["wall_time"] = self.wall_time
        return d


class _Acc:
    """Associative margin accumulator; merging is order-independent up to
    the deterministic chunk order used everywhere."""

    def __init__(self):
        self.instances = 0
        self.violations = 0
        self.min_margin = math.inf
        self.argmin: dict | None = None
        self.near: list = []

    def add(self, margin: float, witness_fn):
        self.instances += 1
        if margin < -MARGIN_TOL:
            self.violations += 1
        if margin < self.min_margin:
            self.min_margin = margin
            self.argmin = witness_fn()
        if abs(margin) <= NEAR_EQUALITY_TOL and len(self.near) < NEAR_EQUALITY_CAP:
            entry = witness_fn()
            entry["log_margin"] = margin
            self.near.append(entry)

    def merge(self, other: "_Acc"):
        self.instances += other.instances
        self.violations += other.violations
        if other.min_margin < self.min_margin:
            self.min_margin = other.min_margin
            self.argmin = other.argmin
        self.near = (self.near + other.near)[:NEAR_EQUALITY_CAP]

    def report(self, statement, params, seed, t0, details=None) -> CampaignReport:
        return CampaignReport(
            statement=statement,
            params=params,
            instances=self.instances,
            violations=self.violations,
            min_log_margin=self.min_margin,
            argmin=self.argmin,
            near_equalities=self.near,
            seed=seed,
            wall_time=time.monotonic() - t0,
            details=details or {},
        )


# ---------------------------------------------------------------------------
# Packed grid arithmetic


class GridPacker:
    """Mixed-radix packing of points with coordinates in [0, width) into
    bit positions; valid for sumsets as long as coordinate sums stay
    below `width` (no carry between axes)."""

    def __init__(self, dim: int, width: int):
        self.dim = dim
        self.width = width

    def index(self, p: Point) -> int:
        idx = 0
        for c in reversed(p):
            if not 0 <= c < self.width:
                raise ValueError(f"coordinate {c} outside [0, {self.width})")
            idx = idx * self.width + c
        return idx

    def mask_of(self, points) -> int:
        mask = 0
        for p in points:
            mask |= 1 << self.index(p)
        return mask

    def sumset(self, shifts: list[int], mask: int) -> int:
        out = 0
        for s in shifts:
            out |= mask << s
        return out

    def unpack(self, mask: int) -> list[Point]:
        pts = []
        idx = 0
        while mask:
            if mask & 1:
                q, p = idx, []
                for _ in range(self.dim):
                    q, c = divmod(q, self.width)
                    p.append(c)
                pts.append(tuple(p))
            mask >>= 1
            idx += 1
        return pts


def _subset_points(base_points: tuple[Point, ...], mask: int) -> list[list[int]]:
    return [list(base_points[i]) for i in range(len(base_points)) if mask >> i & 1]


def _sample_subset(rng: random.Random, points, density: float) -> list[Point]:
    """Nonempty random subset, each point kept with the given density."""
    while True:
        picked = [p for p in points if rng.random() < density]
        if picked:
            return picked


# ---------------------------------------------------------------------------
# Campaigns


def verify_two_sets(
    m: int,
    d: int,
    p: float | None = None,
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
) -> CampaignReport:
    """|A+B| >= |A|^p |B|^p over nonempty A, B subsets of {0..m}^d."""
    t0 = time.monotonic()
    defaulted = p is None
    if defaulted:
        p = cube_upper_exponent(2, m)
    base = cube(m, d)
    n = len(base)
    if n > EXHAUSTIVE_BASE_CAP:
        raise InstanceTooLargeError(
            f"instance too large: (m+1)^d = {n} exceeds {EXHAUSTIVE_BASE_CAP}"
        )
    packer = GridPacker(d, 2 * m + 1)
    shifts = [packer.index(pt) for pt in base.points]
    grid_masks = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        grid_masks[s] = grid_masks[s ^ low] | (1 << shifts[low.bit_length() - 1])
    logs = [0.0] * (n + 1)
    for i in range(1, n + 1):
        logs[i] = math.log(i)

    if mode == "exhaustive":
        pairs = ((a, b) for a in range(1, 1 << n) for b in range(1, 1 << n))
        total_expected = (2**n - 1) ** 2
    elif mode == "random":
        if count is None or seed is None:
            raise ValueError("random mode needs count and seed")
        rng = random.Random(seed)
        pairs = (
            (rng.randrange(1, 1 << n), rng.randrange(1, 1 << n))
            for _ in range(count)
        )
        total_expected = count
    else:
        raise ValueError(f"unknown mode {mode!r}")

    acc = _Acc()
    bpts = base.points
    for sa, sb in pairs:
        shift_list = [shifts[i] for i in range(n) if sa >> i & 1]
        card = packer.sumset(shift_list, grid_masks[sb]).bit_count()
        margin = math.log(card) - p * (logs[sa.bit_count()] + logs[sb.bit_count()])
        acc.add(
            margin,
            lambda sa=sa, sb=sb: {
                "A": _subset_points(bpts, sa),
                "B": _subset_points(bpts, sb),
            },
        )
    assert acc.instances == total_expected
    details = {"conjectured_exponent": bool(defaulted and m >= 3)}
    return acc.report(
        "two-sets", {"m": m, "d": d, "p": p, "mode": mode, "count": count},
        seed, t0, details,
    )


def verify_n_fold_hypercube(
    n: int,
    d: int,
    p: float | None = None,
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
) -> CampaignReport:
    """|A_1 + ... + A_n| >= (prod |A_j|)^p over nonempty subsets of {0,1}^d."""
    t0 = time.monotonic()
    if p is None:
        p = math.log2(n + 1) / n
    base = cube(1, d)
    nb = len(base)
    packer = GridPacker(d, n + 1)
    shifts = [packer.index(pt) for pt in base.points]
    grid_masks = {
        s: packer.mask_of(
            base.points[i] for i in range(nb) if s >> i & 1
        )
        for s in range(1, 1 << nb)
    }
    subsets = sorted(grid_masks)

    if mode == "exhaustive":
        if (2**nb - 1) ** n > 10**6:
            raise InstanceTooLargeError("instance too large for exhaustive mode")
        import itertools

        tuples = itertools.product(subsets, repeat=n)
    elif mode == "random":
        if count is None or seed is None:
            raise ValueError("random mode needs count and seed")
        rng = random.Random(seed)
        tuples = (
            tuple(rng.choice(subsets) for _ in range(n)) for _ in range(count)
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")

    acc = _Acc()
    bpts = base.points
    for tup in tuples:
        mask = grid_masks[tup[0]]
        for s in tup[1:]:
            shift_list = [shifts[i] for i in range(nb) if s >> i & 1]
            mask = packer.sumset(shift_list, mask)
        margin = math.log(mask.bit_count()) - p * sum(
            math.log(s.bit_count()) for s in tup
        )
        acc.add(
            margin,
            lambda tup=tup: {
                "sets": [_subset_points(bpts, s) for s in tup]
            },
        )
    return acc.report(
        "n-fold", {"n": n, "d": d, "p": p, "mode": mode, "count": count}, seed, t0
    )


def verify_three_sets(
    d: int,
    p: float = 2.0,
    mode: str = "random",
    count: int = 1000,
    seed: int | None = None,
    box: int = DEFAULT_BOX,
) -> CampaignReport:
    """|V+A+B| >= |V|^{1/c} |A|^{1/p} |B|^{1/q} for V inside {0,1}^d and
    A, B random in a box; also checks the weaker two-set bound it implies
    and the Brunn--Minkowski specialization with the full cube."""
    t0 = time.monotonic()
    if mode != "random":
        raise ValueError("three-sets campaign is randomized; use mode='random'")
    if seed is None:
        raise ValueError("random mode needs a seed")
    q = conjugate(p)
    c = c_of_p(p)
    rng = random.Random(seed)
    box_set = cube(box, d)
    vbase = cube(1, d)
    packer = GridPacker(d, 4 * (box + 1))
    weak_factor = d * math.log(p ** (1 / p) * q ** (1 / q) / 2.0)
    full_v_shifts = [packer.index(pt) for pt in vbase.points]

    acc = _Acc()
    implication_violations = 0
    diskbr_violations = 0
    for _ in range(count):
        a = _sample_subset(rng, box_set.points, rng.choice(DENSITY_MENU))
        b = _sample_subset(rng, box_set.points, rng.choice(DENSITY_MENU))
        v = _sample_subset(rng, vbase.points, 0.5)
        a_shifts = [packer.index(pt) for pt in a]
        v_shifts = [packer.index(pt) for pt in v]
        bmask = packer.mask_of(b)
        ab = packer.sumset(a_shifts, bmask)
        vab = packer.sumset(v_shifts, ab)
        log_lhs = math.log(vab.bit_count())
        la, lb, lv = math.log(len(a)), math.log(len(b)), math.log(len(v))
        margin_strong = log_lhs - (lv / c + la / p + lb / q)
        margin_weak = log_lhs - (weak_factor + lv + la / p + lb / q)
        # the strong bound implies the weak one: its margin is never larger
        if margin_strong > margin_weak + 1e-12:
            implication_violations += 1
        full = packer.sumset(full_v_shifts, ab)
        lhs_root = full.bit_count() ** (1.0 / d)
        rhs_root = len(a) ** (1.0 / d) + len(b) ** (1.0 / d)
        if lhs_root < rhs_root * (1.0 - 1e-12):
            diskbr_violations += 1
        acc.add(
            margin_strong,
            lambda a=a, b=b, v=v: {
                "V": [list(x) for x in v],
                "A": [list(x) for x in a],
                "B": [list(x) for x in b],
            },
        )
    details = {
        "implication_violations": implication_violations,
        "brunn_minkowski_violations": diskbr_violations,
        "c": c,
        "q": q,
    }
    return acc.report(
        "three-sets",
        {"d": d, "p": p, "mode": mode, "count": count, "box": box},
        seed, t0, details,
    )


def verify_cube_containing(
    k: int,
    d: int,
    mode: str = "random",
    count: int = 1000,
    seed: int | None = None,
    box: int = DEFAULT_BOX,
) -> CampaignReport:
    """|kA|/|A| >= k^{d(k-1)/k} for A containing the cube {0..k-1}^d;
    the cube itself attains the upper bound (k-1+1/k)^d."""
    t0 = time.monotonic()
    if k < 2:
        raise ValueError("k must be >= 2")
    if mode != "random":
        raise ValueError("cube-containing campaign is randomized")
    if seed is None:
        raise ValueError("random mode needs a seed")
    rng = random.Random(seed)
    base = cube(k - 1, d)
    box_set = cube(max(box, k - 1), d)
    packer = GridPacker(d, k * (max(box, k - 1) + 1))
    base_pts = set(base.points)
    lower = (d * (k - 1) / k) * math.log(k)

    # exact witness: the bare cube, integer arithmetic on both sides
    cube_card = k**d
    kcube_card = (k * k - k + 1) ** d
    witness_exact = (
        len(base) == cube_card
        and len(iterated_sum(base, k)) == kcube_card
    )

    acc = _Acc()
    beats_cube_ratio = 0
    cube_ratio = math.log(kcube_card) - math.log(cube_card)
    for _ in range(count):
        extras = [
            pt for pt in box_set.points
            if pt not in base_pts and rng.random() < rng.choice(DENSITY_MENU)
        ]
        a = list(base.points) + extras
        shifts = [packer.index(pt) for pt in a]
        mask = packer.mask_of(a)
        for _ in range(k - 1):
            mask = packer.sumset(shifts, mask)
        ratio = math.log(mask.bit_count()) - math.log(len(a))
        if ratio < cube_ratio - 1e-12:
            beats_cube_ratio += 1
        acc.add(
            ratio - lower,
            lambda a=a: {"A": [list(x) for x in a]},
        )
    details = {
        "cube_witness_exact": witness_exact,
        "cube_ratio_log": cube_ratio,
        "samples_below_cube_ratio": beats_cube_ratio,
    }
    return acc.report(
        "cube-containing",
        {"k": k, "d": d, "mode": mode, "count": count, "box": box},
        seed, t0, details,
    )


def verify_klein_sum_with_cube(
    k: int,
    d: int,
    mode: str = "random",
    count: int = 1000,
    seed: int | None = None,
    box: int = DEFAULT_BOX,
) -> CampaignReport:
    """|A_1 + ... + A_k + U| >= |U| prod |A_i|^{1/k} with U = {0..k-1}^d."""
    t0 = time.monotonic()
    if k < 2:
        raise ValueError("k must be >= 2")
    if mode != "random":
        raise ValueError("k-sum-cube campaign is randomized")
    if seed is None:
        raise ValueError("random mode needs a seed")
    rng = random.Random(seed)
    u = cube(k - 1, d)
    box_set = cube(box, d)
    packer = GridPacker(d, (k + 1) * (box + 1))
    u_shifts = [packer.index(pt) for pt in u.points]

    # equality witness: all A_i = U makes both sides k^{2d}
    all_u = iterated_sum(u, k)
    eq_lhs = len(minkowski_sum(all_u, u))
    witness_equal = eq_lhs == k ** (2 * d)

    acc = _Acc()
    for _ in range(count):
        sets = [
            _sample_subset(rng, box_set.points, rng.choice(DENSITY_MENU))
            for _ in range(k)
        ]
        mask = packer.mask_of(sets[0])
        for s in sets[1:]:
            mask = packer.sumset([packer.index(pt) for pt in s], mask)
        mask = packer.sumset(u_shifts, mask)
        margin = (
            math.log(mask.bit_count())
            - math.log(len(u))
            - sum(math.log(len(s)) for s in sets) / k
        )
        acc.add(
            margin,
            lambda sets=sets: {"sets": [[list(x) for x in s] for s in sets]},
        )
    return acc.report(
        "k-sum-cube",
        {"k": k, "d": d, "mode": mode, "count": count, "box": box},
        seed, t0, {"equality_witness_all_cubes": witness_equal},
    )


def verify_energy_bounds(k: int = 2, d: int = 1, mode: str = "exhaustive") -> CampaignReport:
    """E_k(A) <= |A|^{log2 C(2k,k)} and E_k(A) <= (|kA|/|A|)^p with
    p = log_{(k+1)/2} C(2k,k), exhaustively over nonempty A in {0,1}^d."""
    t0 = time.monotonic()
    if mode != "exhaustive":
        raise ValueError("energy campaign is exhaustive")
    if d > 3:
        raise InstanceTooLargeError("instance too large: d <= 3")
    central = math.comb(2 * k, k)
    p_doubling = math.log(central) / math.log((k + 1) / 2)
    base = cube(1, d)
    acc = _Acc()
    from .lattice import enumerate_nonempty_subsets

    for a in enumerate_nonempty_subsets(base):
        e = additive_energy(a, k)
        ka = iterated_sum(a, k)
        log_e = math.log(e)
        margin_card = math.log(len(a)) * math.log2(central) - log_e
        margin_doub = p_doubling * (math.log(len(ka)) - math.log(len(a))) - log_e
        acc.add(
            min(margin_card, margin_doub),
            lambda a=a, e=e: {"A": [list(x) for x in a], "E_k": e},
        )
    return acc.report(
        "energy",
        {"k": k, "d": d, "mode": mode, "p_doubling": p_doubling},
        None, t0,
    )


def verify_dilate_bound(d: int = 1, mode: str = "exhaustive") -> CampaignReport:
    """|A + 2A| <= (|A+A|/|A|)^{log_{3/2} 2} |A| over nonempty A in {0,1}^d."""
    t0 = time.monotonic()
    if mode != "exhaustive":
        raise ValueError("dilate campaign is exhaustive")
    if d > 3:
        raise InstanceTooLargeError("instance too large: d <= 3")
    p = math.log(2) / math.log(1.5)
    base = cube(1, d)
    acc = _Acc()
    from .lattice import enumerate_nonempty_subsets

    for a in enumerate_nonempty_subsets(base):
        doubling = math.log(len(minkowski_sum(a, a))) - math.log(len(a))
        lhs = math.log(len(dilated_sum(a, 2, a)))
        margin = p * doubling + math.log(len(a)) - lhs
        acc.add(margin, lambda a=a: {"A": [list(x) for x in a]})
    return acc.report("dilate", {"d": d, "mode": mode, "p": p}, None, t0)


# ---------------------------------------------------------------------------
# Extremizer search


def search_min_ratio(
    n: int,
    m: int,
    d: int,
    p: float | None = None,
    budget: int = 10,
    seed: int = 0,
) -> CampaignReport:
    """Steepest-descent local search over n-tuples of nonempty subsets of
    {0..m}^d for the smallest margin log|sum A_j| - p sum log|A_j|.

    The neighborhood toggles one point in one set; `budget` counts random
    restarts.  Never claims global optimality.
    """
    t0 = time.monotonic()
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if p is None:
        p = cube_upper_exponent(n, m)
    base = cube(m, d)
    nb = len(base)
    if nb > EXHAUSTIVE_BASE_CAP:
        raise InstanceTooLargeError("base cube too large for search")
    packer = GridPacker(d, n * m + 1)
    shifts = [packer.index(pt) for pt in base.points]
    grid_mask = [1 << s for s in shifts]
    rng = random.Random(seed)

    def margin_of(masks: tuple[int, ...]) -> float:
        first = masks[0]
        acc_mask = 0
        for i in range(nb):
            if first >> i & 1:
                acc_mask |= grid_mask[i]
        for s in masks[1:]:
            shift_list = [shifts[i] for i in range(nb) if s >> i & 1]
            acc_mask = packer.sumset(shift_list, acc_mask)
        return math.log(acc_mask.bit_count()) - p * sum(
            math.log(s.bit_count()) for s in masks
        )

    best_margin = math.inf
    best_state: tuple[int, ...] | None = None
    evaluations = 0
    for _ in range(budget):
        state = tuple(rng.randrange(1, 1 << nb) for _ in range(n))
        cur = margin_of(state)
        evaluations += 1
        improved = True
        while improved:
            improved = False
            best_step, best_step_margin = None, cur
            for j in range(n):
                for i in range(nb):
                    cand = state[j] ^ (1 << i)
                    if cand == 0:
                        continue
                    cand_state = state[:j] + (cand,) + state[j + 1 :]
                    v = margin_of(cand_state)
                    evaluations += 1
                    if v < best_step_margin - 1e-15:
                        best_step, best_step_margin = cand_state, v
            if best_step is not None:
                state, cur = best_step, best_step_margin
                improved = True
        if cur < best_margin:
            best_margin = cur
            best_state = state

    acc = _Acc()
    bpts = base.points
    acc.add(
        best_margin,
        lambda: {"sets": [_subset_points(bpts, s) for s in best_state]},
    )
    return acc.report(
        "search",
        {"n": n, "m": m, "d": d, "p": p, "budget": budget},
        seed, t0, {"evaluations": evaluations},
    )


STATEMENTS = {
    "two-sets": verify_two_sets,
    "n-fold": verify_n_fold_hypercube,
    "three-sets": verify_three_sets,
    "cube-containing": verify_cube_containing,
    "k-sum-cube": verify_klein_sum_with_cube,
    "energy": verify_energy_bounds,
    "dilate": verify_dilate_bound,
}
