"""Named verification suites behind `quiztree verify`.

Each suite re-derives a cluster of the library's claims from scratch: seeded
random sweeps against independent oracles, plus frozen golden numbers.  A
suite returns a structured result that renders both as human-readable lines
and as JSON; any failed check makes the whole suite (and the CLI exit code)
red.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .analysis import (
    check_splitter_antichain,
    check_tail_atomic,
    exponent_calculus,
    endgame_revenue,
    gt_bound,
    hard_distribution,
    is_dyadic_hitter,
    min_dyadic_hitter,
    mrd,
    rho,
    sample_hitter,
    splitters,
    tail,
)
from .core import (
    Distribution,
    DyadicMeasure,
    ExplicitFamily,
    dyadic_prefix_split,
    dyadic_suffix_split,
    tree_cost,
    validate_tree,
)
from .errors import PreconditionViolated
from .huffman import BRUTE_FORCE_LIMIT, brute_force_opt, huffman
from .strategy_cone import cone_family, cone_optimal_tree
from .strategy_prolixity import prolixity_family_size_bound
from .analysis import prolixity_lb_check

__all__ = ["Check", "SuiteResult", "available_suites", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }

    def human(self) -> str:
        lines = [f"suite {self.suite}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.ok else 'XX'}] {c.name}: {c.detail}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Suite helpers
# ---------------------------------------------------------------------------


def _random_dyadic_list(rng: random.Random) -> list[Fraction]:
    """A non-increasing list of powers of two, not necessarily summing to 1."""
    m = rng.randint(1, 12)
    exponents = sorted(rng.randint(1, 10) for _ in range(m))
    return [Fraction(1, 1 << e) for e in exponents]


def _random_rational(rng: random.Random, n: int, with_zeros: bool = False) -> Distribution:
    counts = [rng.randint(1, 99) for _ in range(n)]
    if with_zeros and n > 2:
        for i in rng.sample(range(n), n // 3):
            counts[i] = 0
        if sum(1 for c in counts if c) < 2:
            counts[0] = counts[-1] = 1
    total = sum(counts)
    return Distribution(tuple(Fraction(c, total) for c in counts))


def _suite_neatsum() -> SuiteResult:
    rng = random.Random(20240901)
    trials = 400
    prefix_bad = suffix_bad = 0
    for _ in range(trials):
        weights = _random_dyadic_list(rng)
        total = sum(weights, Fraction(0))
        e0 = weights[0].denominator.bit_length() - 1  # weights[0] == 2^-e0
        # any a <= e0 keeps the target above the first weight; a = e0 always fits
        valid = [a for a in range(0, e0 + 1) if Fraction(2) ** (-a) <= total]
        a = rng.choice(valid)
        target = Fraction(2) ** (-a)
        m = dyadic_prefix_split(weights, a)
        acc = Fraction(0)
        hits = []
        for i, w in enumerate(weights):
            acc += w
            if acc == target:
                hits.append(i + 1)
        if hits != [m]:
            prefix_bad += 1
    for _ in range(trials):
        # Kraft-tight lists have total exactly 1, a multiple of any 2^-a
        exponents = [0]
        while len(exponents) < rng.randint(2, 12):
            e = exponents.pop(rng.randrange(len(exponents)))
            exponents.extend((e + 1, e + 1))
        exponents.sort()
        weights = [Fraction(1, 1 << e) for e in exponents]
        a = rng.randint(0, exponents[0])  # target at least the first weight
        target = Fraction(2) ** (-a)
        low = dyadic_suffix_split(weights, a)
        acc = Fraction(0)
        hits = []
        for i in range(len(weights) - 1, -1, -1):
            acc += weights[i]
            if acc == target:
                hits.append(i + 1)
        if hits != [low]:
            suffix_bad += 1
    return SuiteResult(
        "neatsum",
        (
            Check(
                "prefix-unique-and-exact",
                prefix_bad == 0,
                f"{trials} random lists, {prefix_bad} disagreements with the scan oracle",
            ),
            Check(
                "suffix-unique-and-exact",
                suffix_bad == 0,
                f"{trials} Kraft-tight lists, {suffix_bad} disagreements",
            ),
        ),
    )


def _suite_hitter() -> SuiteResult:
    checks = []
    for n in range(3, 9):
        report = is_dyadic_hitter(cone_family(n), n)
        checks.append(
            Check(
                f"cone-family-hits-n{n}",
                report.ok,
                f"{report.checked} cases"
                + ("" if report.ok else f"; missed {report.counterexample}"),
            )
        )
    for n in (3, 4, 5, 6):
        explicit = ExplicitFamily(n, list(cone_family(n)), description="cone, expanded")
        generic = is_dyadic_hitter(explicit, n)
        checks.append(
            Check(
                f"cone-generic-crosscheck-n{n}",
                generic.ok,
                f"full enumeration agrees over {generic.checked} distributions",
            )
        )
    for n, expected in ((2, 1), (3, 3), (4, 5)):
        found = min_dyadic_hitter(n)
        witness = is_dyadic_hitter(found.family, n)
        checks.append(
            Check(
                f"min-hitter-n{n}",
                found.size == expected and witness.ok,
                f"size {found.size} (expected {expected}), witness hits: {witness.ok}",
            )
        )
    sampled = sample_hitter(5, rng_seed=1)
    checks.append(
        Check(
            "sampled-hitter-n5",
            sampled.hitter.ok,
            f"{sampled.per_size} subsets per size at scale≈{float(sampled.scale):.3g}",
        )
    )
    return SuiteResult("hitter", tuple(checks))


def _suite_cone() -> SuiteResult:
    rng = random.Random(20240902)
    mismatches = 0
    invalid = 0
    trials = 100
    for _ in range(trials):
        n = rng.randint(2, 32)
        dist = _random_rational(rng, n, with_zeros=rng.random() < 0.3)
        tree = cone_optimal_tree(dist)
        report = validate_tree(tree, dist, family=cone_family(n))
        if not report.ok:
            invalid += 1
        if tree_cost(tree, dist) != huffman(dist).opt_cost:
            mismatches += 1
    brute_bad = 0
    brute_trials = 25
    for _ in range(brute_trials):
        n = rng.randint(2, BRUTE_FORCE_LIMIT - 1)
        dist = _random_rational(rng, n)
        if tree_cost(cone_optimal_tree(dist), dist) != brute_force_opt(dist):
            brute_bad += 1
    return SuiteResult(
        "cone",
        (
            Check(
                "trees-valid-in-family",
                invalid == 0,
                f"{trials} random distributions, {invalid} invalid trees",
            ),
            Check(
                "cost-equals-huffman",
                mismatches == 0,
                f"{trials} random distributions, {mismatches} cost mismatches",
            ),
            Check(
                "cost-equals-brute-force",
                brute_bad == 0,
                f"{brute_trials} small distributions against exhaustive search",
            ),
        ),
    )


def _suite_gt() -> SuiteResult:
    b3 = gt_bound(Fraction(3, 10))
    b294 = gt_bound(0.294)
    grid_bad = 0
    points = 2000
    for i in range(points + 1):
        p = 0.23 + (1 - 0.23) * i / points
        if endgame_revenue(min(p, 1.0)) > 1e-12:
            grid_bad += 1
    return SuiteResult(
        "gt",
        (
            Check(
                "bound-at-0.3",
                abs(b3 - (-0.0312)) <= 5e-3,
                f"gt_bound(3/10) = {b3:.6f}, expected -0.0312 ± 5e-3",
            ),
            Check(
                "bound-at-0.294",
                abs(b294 - (-0.0899)) <= 5e-3,
                f"gt_bound(0.294) = {b294:.6f}, expected -0.0899 ± 5e-3",
            ),
            Check(
                "revenue-nonpositive",
                grid_bad == 0,
                f"1-h(p)-p ≤ 1e-12 on a {points + 1}-point grid of [0.23, 1]",
            ),
        ),
    )


def _suite_mrd() -> SuiteResult:
    checks = []
    for n, expected in ((2, Fraction(1)), (3, Fraction(1, 3)), (4, Fraction(1, 4))):
        value = rho(n)
        checks.append(
            Check(
                f"rho-n{n}",
                value == expected,
                f"rho({n}) = {value} (expected {expected})",
            )
        )
    hard = hard_distribution(Fraction(1, 5), 2)
    report = mrd(splitters(hard))
    by_size = dict(report.by_size)
    counts_ok = (
        by_size.get(2) == Fraction(3, 45)
        and by_size.get(8) == Fraction(3, 45)
        and report.maximum == Fraction(1, 15)
        and report.argmax_sizes == (2, 8)
    )
    checks.append(
        Check(
            "hard-distribution-density",
            counts_ok,
            f"max density {report.maximum} at sizes {report.argmax_sizes}",
        )
    )
    return SuiteResult("mrd", tuple(checks))


def _suite_tail() -> SuiteResult:
    checks = []
    examples = (
        ("half-quarter-eighths", DyadicMeasure((1, 2, 3, 3)), frozenset({2, 3, 4})),
        ("uniform-4", DyadicMeasure((2, 2, 2, 2)), frozenset()),
        (
            "hard-1/5-a2",
            hard_distribution(Fraction(1, 5), 2),
            frozenset(range(4, 11)),
        ),
    )
    for name, mu, expected in examples:
        got = tail(mu)
        checks.append(
            Check(
                f"tail-{name}",
                got == expected,
                f"tail = {sorted(got)} (expected {sorted(expected)})",
            )
        )
    for n in (4, 5, 6):
        report = check_tail_atomic(n)
        checks.append(
            Check(
                f"tail-atomic-n{n}",
                report.ok,
                f"{report.checked} distributions with nonempty tails; {report.detail or 'no splitter cuts a tail'}",
            )
        )
        closure = check_splitter_antichain(n)
        checks.append(
            Check(
                f"antichain-n{n}",
                closure.ok,
                f"{closure.checked} full-support distributions; {closure.detail or 'maximal antichain, complement-closed'}",
            )
        )
    return SuiteResult("tail", tuple(checks))


def _suite_lbfamily() -> SuiteResult:
    checks = []
    for n in (5, 6):
        report = prolixity_lb_check(2, n)
        checks.append(
            Check(
                f"admissible-structure-k2-n{n}",
                report.ok and report.admissible_count >= 1,
                f"{report.admissible_count} admissible first questions, all split "
                f"heavies 2/1 and keep lights together"
                + (" (verified against brute force)" if report.brute_checked else ""),
            )
        )
    for n, k in ((20, 3), (40, 4)):
        count = prolixity_family_size_bound(n, k)
        checks.append(
            Check(
                f"family-count-n{n}-k{k}",
                count > 0,
                f"{count} questions, within the (3e/4 · r n)^(4/r) · n^2 envelope",
            )
        )
    return SuiteResult("lbfamily", tuple(checks))


def _suite_exponents() -> SuiteResult:
    calc = exponent_calculus()
    return SuiteResult(
        "exponents",
        (
            Check(
                "eps-argmax",
                abs(calc.eps_argmax - 0.2) <= 1e-9,
                f"argmax = {calc.eps_argmax!r} (expected 1/5)",
            ),
            Check(
                "eps-value",
                abs(calc.eps_value - 1.25) <= 1e-12,
                f"2^(h(1/5) - 2/5) = {calc.eps_value!r} (expected 5/4)",
            ),
            Check(
                "beta0",
                abs(calc.beta0 - 0.27052059413118146) <= 1e-9,
                f"beta0 = {calc.beta0!r}",
            ),
            Check(
                "growth-at-beta0",
                abs(calc.l_beta0 - 1.23214280723432) <= 1e-9,
                f"L(beta0) = {calc.l_beta0!r}",
            ),
        ),
    )


_SUITES: dict[str, Callable[[], SuiteResult]] = {
    "neatsum": _suite_neatsum,
    "hitter": _suite_hitter,
    "cone": _suite_cone,
    "gt": _suite_gt,
    "mrd": _suite_mrd,
    "tail": _suite_tail,
    "lbfamily": _suite_lbfamily,
    "exponents": _suite_exponents,
}


def available_suites() -> tuple[str, ...]:
    return tuple(_SUITES)


def run_suite(name: str) -> SuiteResult:
    if name not in _SUITES:
        raise PreconditionViolated(
            f"unknown suite {name!r}; choose from {', '.join(_SUITES)}"
        )
    return _SUITES[name]()
