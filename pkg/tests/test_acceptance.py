"""The acceptance gate: one test per promised bound, golden number, or oracle tie.

Run with -v to read the gate as a checklist; each test prints the measured
quantity it fences so failures carry the observed number.
"""

from fractions import Fraction
import math
import random
import time

import pytest

from conftest import rational_distribution
from quiztree import (
    ConeFamily,
    Distribution,
    brute_force_opt,
    certify_question,
    check_splitter_antichain,
    check_tail_atomic,
    comparison_equality_family,
    cone_optimal_tree,
    endgame_revenue,
    entropy,
    estimate_expected_cost,
    exponent_calculus,
    gt_bound,
    hard_distribution,
    huffman,
    is_dyadic_hitter,
    min_dyadic_hitter,
    mrd,
    prolixity_lb_check,
    rho,
    run_tr,
    smallest_base,
    splitters,
    tree_cost,
    vector_family_size,
)
from quiztree.bench import simplex_distribution, zipf_distribution
from quiztree.core import Internal
from quiztree.strategy_at import AtParams, build_at_tree
from quiztree.strategy_prolixity import ProlixityParams
from quiztree.strategy_vector import build_vector_tree

THRESHOLD_SIZES = (2, 3, 4, 8, 16, 64, 256)
THRESHOLD_SAMPLES = 1000

_sample_cache: dict[int, list[Distribution]] = {}


def threshold_samples(n: int) -> list[Distribution]:
    if n not in _sample_cache:
        rng = random.Random(1000 + n)
        _sample_cache[n] = [
            simplex_distribution(n, rng) for _ in range(THRESHOLD_SAMPLES)
        ]
    return _sample_cache[n]


def questions_of(tree):
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if isinstance(node, Internal):
            yield node.question
            stack.extend((node.yes, node.no))


def run_threshold_harness(t: Fraction) -> float:
    """Worst redundancy across the sampled grid; asserts family discipline."""
    worst = 0.0
    for n in THRESHOLD_SIZES:
        family = comparison_equality_family(n)
        assert len(family) == 2 * n - 3
        for dist in threshold_samples(n):
            tree = build_at_tree(dist, AtParams(t))
            worst = max(worst, float(tree_cost(tree, dist)) - entropy(dist))
            assert all(family.contains(q) for q in questions_of(tree))
    return worst


def test_c01_threshold_redundancy_at_most_one():
    start = time.monotonic()
    worst = run_threshold_harness(Fraction(3, 10))
    elapsed = time.monotonic() - start
    print(f"worst redundancy at t=3/10: {worst:.6f} (in {elapsed:.1f}s)")
    assert worst <= 1 + 1e-9
    assert elapsed <= 120


def test_c02_weight_balancing_redundancy_at_most_two():
    start = time.monotonic()
    worst = run_threshold_harness(Fraction(1))
    elapsed = time.monotonic() - start
    print(f"worst redundancy at t=1: {worst:.6f} (in {elapsed:.1f}s)")
    assert worst <= 2 + 1e-9
    assert elapsed <= 120


def test_c03_cone_cost_equals_huffman_exactly():
    start = time.monotonic()
    rng = random.Random(3)
    brute_checked = 0
    for _ in range(500):
        dist = rational_distribution(rng, rng.randint(2, 64))
        opt = huffman(dist).opt_cost
        assert tree_cost(cone_optimal_tree(dist), dist) == opt
        if dist.n <= 6:
            brute_checked += 1
            assert brute_force_opt(dist) == opt
    elapsed = time.monotonic() - start
    print(f"500 exact ties, {brute_checked} also against brute force ({elapsed:.1f}s)")
    assert elapsed <= 60


@pytest.mark.parametrize("r", [2, 3])
def test_c04_vector_budget_and_family_size(r):
    worst = 0.0
    for n in (5, 16, 100, 1000):
        size = vector_family_size(n, r)
        assert size == r * (2 * smallest_base(n, r) - 3)
        assert size <= 2 * r * n ** (1 / r)
        rng = random.Random(4000 + 10 * r + n)
        for _ in range(300):
            dist = simplex_distribution(n, rng)
            cost = tree_cost(build_vector_tree(dist, r), dist)
            worst = max(worst, float(cost) - entropy(dist))
    print(f"worst redundancy at r={r}: {worst:.6f}")
    assert worst <= r + 1e-9


def test_c05_revenue_bound_numerics():
    b3 = gt_bound(Fraction(3, 10))
    b294 = gt_bound(Fraction(294, 1000))
    print(f"gt_bound(0.3) = {b3:.6f}, gt_bound(0.294) = {b294:.6f}")
    assert b3 == pytest.approx(-0.0312, abs=5e-3)
    assert b294 == pytest.approx(-0.0899, abs=5e-3)
    worst = max(endgame_revenue(0.23 + i * 0.77 / 9999) for i in range(10000))
    print(f"max endgame revenue on [0.23, 1]: {worst:.3e}")
    assert worst <= 1e-12


def test_c06_exponent_constants():
    calc = exponent_calculus()
    print(
        f"eps* = {calc.eps_argmax!r} -> {calc.eps_value!r}; "
        f"beta0 = {calc.beta0!r} -> {calc.l_beta0!r}"
    )
    assert calc.eps_argmax == pytest.approx(0.2, abs=1e-9)
    assert calc.eps_value == pytest.approx(1.25, abs=1e-12)
    assert calc.beta0 == pytest.approx(0.27052059413118146, abs=1e-9)
    assert calc.l_beta0 == pytest.approx(1.23214280723432, abs=1e-9)


def test_c07_hard_distribution_splitters():
    mu = hard_distribution(Fraction(1, 5), 2)
    sizes = sorted(s.bit_count() for s in splitters(mu).sets)
    density = mrd(splitters(mu)).maximum
    print(f"splitter sizes: {sizes}, peak density: {density}")
    assert sizes == [2, 2, 2, 8, 8, 8]
    assert density == Fraction(1, 15)


def test_c08_hitter_suite():
    for n in range(3, 11):
        assert is_dyadic_hitter(ConeFamily(n), n).ok
    sizes = {n: min_dyadic_hitter(n).size for n in (2, 3, 4)}
    print(f"cone hits n=3..10; minimum hitter sizes: {sizes}")
    assert sizes[2] == 1 and sizes[3] == 3
    for n, size in sizes.items():
        assert size >= 1 / rho(n)


def test_c09_tail_and_antichain_exhaustive():
    checked = 0
    for n in range(2, 8):
        atomic = check_tail_atomic(n, up_to_permutation=False)
        antichain = check_splitter_antichain(n, up_to_permutation=False)
        assert atomic.ok, atomic.detail
        assert antichain.ok, antichain.detail
        checked += atomic.checked + antichain.checked
    print(f"{checked} labeled distributions swept, zero violations")


def test_c10_prolixity_bound_and_step_legality():
    start = time.monotonic()
    dist = zipf_distribution(64, 1)
    params = ProlixityParams(k=3, rng_seed=20260815)
    estimate = estimate_expected_cost(dist, params, trials=10_000)
    slack = float(params.r) + float(params.r) ** 2
    ceiling = float(estimate.opt_cost) + slack + 3 * estimate.stderr
    print(
        f"mean cost {estimate.mean:.4f} +- {estimate.stderr:.4f} vs "
        f"Opt + r + r^2 = {float(estimate.opt_cost) + slack:.4f}"
    )
    assert estimate.mean <= ceiling

    # an observed sweep of full games: legal measure updates, certified questions
    rng = random.Random(1010)
    for _ in range(150):
        secret = rng.choice(dist.support)
        events = []
        run_tr(dist, ProlixityParams(k=3, rng_seed=rng.getrandbits(32)), secret, events.append)
        for ev in events:
            for el, e in ev.after.items():
                assert e in (ev.before[el], ev.before[el] - 1)
            assert sum(Fraction(1, 2**e) for e in ev.after.values()) <= 1
            assert certify_question(ev.question, dist.n, 3)
    elapsed = time.monotonic() - start
    print(f"(in {elapsed:.1f}s)")
    assert elapsed <= 300


@pytest.mark.parametrize("n", [5, 6])
def test_c11_first_question_rigidity(n):
    report = prolixity_lb_check(2, n)
    assert report.delta == report.r**2 / 2
    admissible = [row for row in report.questions if row.admissible]
    print(f"n={n}: {len(admissible)} admissible first questions, all rigid")
    assert report.ok
    for row in admissible:
        assert row.heavy_split == (2, 1)
        assert row.lights_together


def test_c12_huffman_matches_brute_force():
    rng = random.Random(12)
    for trial in range(500):
        dist = rational_distribution(rng, rng.randint(2, 6), allow_zero=trial % 2 == 1)
        if len(dist.support) < 2:
            dist = rational_distribution(rng, 2)
        assert huffman(dist).opt_cost == brute_force_opt(dist)
    print("500 exact agreements")
