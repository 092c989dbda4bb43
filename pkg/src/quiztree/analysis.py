"""Exhaustive and numeric verification tools for the question-family theory.

Everything here is desk-scale: full enumeration of dyadic distributions on
small domains, brute-force splitter sets, exact minimal-hitter search,
relative-density accounting, the hard distribution and its tail, the
truncated series bound for the equality-testing game, the two exponent
constants, and the exhaustive first-question sweep behind the prolixity
lower bound.  Fractions throughout; floats only where a quantity is
genuinely transcendental.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .core import (
    Distribution,
    DyadicMeasure,
    Explicit,
    ExplicitFamily,
    Question,
    QuestionFamily,
    binary_entropy,
)
from .errors import ConstantDistribution, PreconditionViolated, TooLarge
from .huffman import (
    BRUTE_FORCE_LIMIT,
    _kraft_exponent_profiles,
    brute_force_opt,
    huffman,
)
from .strategy_cone import ConeFamily, pivot_size

ENUMERATION_LIMIT = 10
SPLITTER_LIMIT = 20
MIN_HITTER_LIMIT = 4
_FULL_SUBSET_SCAN_LIMIT = 16


# ---------------------------------------------------------------------------
# Enumerating dyadic distributions
# ---------------------------------------------------------------------------


def _distinct_permutations(values: Sequence) -> Iterator[tuple]:
    """All distinct orderings of a multiset (None allowed as a value)."""
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts, key=lambda v: (v is None, 0 if v is None else v))
    slot: list = [None] * len(values)

    def fill(i: int) -> Iterator[tuple]:
        if i == len(slot):
            yield tuple(slot)
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                slot[i] = v
                yield from fill(i + 1)
                counts[v] += 1

    yield from fill(0)


def enumerate_dyadic(
    n: int, up_to_permutation: bool = False
) -> Iterator[DyadicMeasure]:
    """Every non-constant dyadic distribution on n elements, zero weights allowed.

    Generated as exponent multisets (one per support size, exponents at most
    n-1) fanned out over positions; with `up_to_permutation` only the sorted
    representative of each multiset is produced.
    """
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    if n < 1:
        raise PreconditionViolated("need n >= 1")
    for support_size in range(2, n + 1):
        for profile in _kraft_exponent_profiles(support_size):
            padded = tuple(profile) + (None,) * (n - support_size)
            if up_to_permutation:
                yield DyadicMeasure(padded)
            else:
                for arrangement in _distinct_permutations(padded):
                    yield DyadicMeasure(arrangement)


# ---------------------------------------------------------------------------
# Splitters and relative density
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitterSet:
    """All subsets of exactly half the mass of a dyadic distribution, as bitsets."""

    source: DyadicMeasure
    sets: frozenset[int]

    @property
    def n(self) -> int:
        return self.source.n

    def __len__(self) -> int:
        return len(self.sets)

    def element_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(i + 1 for i in range(self.n) if mask >> i & 1)
            for mask in sorted(self.sets)
        )


def _scaled_weights(mu: DyadicMeasure) -> tuple[list[int], int]:
    """Integer weights at the common denominator 2^E, plus the half target."""
    top = max(e for e in mu.exponents if e is not None)
    scaled = [0 if e is None else 1 << (top - e) for e in mu.exponents]
    return scaled, 1 << (top - 1)


def splitters(mu: DyadicMeasure) -> SplitterSet:
    """Brute-force enumeration of the half-mass subsets of a dyadic distribution."""
    if mu.n > SPLITTER_LIMIT:
        raise TooLarge(f"splitter enumeration is limited to n <= {SPLITTER_LIMIT}")
    if not mu.is_distribution or len(mu.support) < 2:
        raise ConstantDistribution("splitters need a non-constant dyadic distribution")
    scaled, target = _scaled_weights(mu)
    if mu.n <= _FULL_SUBSET_SCAN_LIMIT:
        masks = _half_masks_by_scan(scaled, target)
    else:
        masks = _half_masks_meet_in_middle(scaled, target)
    return SplitterSet(mu, frozenset(masks))


def _half_masks_by_scan(scaled: list[int], target: int) -> list[int]:
    n = len(scaled)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + scaled[low.bit_length() - 1]
    return [mask for mask in range(1 << n) if sums[mask] == target]


def _half_masks_meet_in_middle(scaled: list[int], target: int) -> list[int]:
    n = len(scaled)
    split = n // 2
    low_sums: dict[int, list[int]] = {}
    for mask in range(1 << split):
        s = sum(scaled[i] for i in range(split) if mask >> i & 1)
        low_sums.setdefault(s, []).append(mask)
    masks = []
    for high in range(1 << (n - split)):
        s = sum(scaled[split + i] for i in range(n - split) if high >> i & 1)
        for low in low_sums.get(target - s, ()):
            masks.append(high << split | low)
    return masks


@dataclass(frozen=True)
class MrdReport:
    """Relative densities of a set family by size, and where the maximum sits."""

    by_size: tuple[tuple[int, Fraction], ...]
    maximum: Fraction
    argmax_sizes: tuple[int, ...]

    def density(self, size: int) -> Fraction:
        for i, d in self.by_size:
            if i == size:
                return d
        raise PreconditionViolated(f"size {size} outside 1..n-1")


def mrd(sets: SplitterSet) -> MrdReport:
    """Maximum relative density: the most crowded size class of the family."""
    n = sets.n
    counts = {i: 0 for i in range(1, n)}
    for mask in sets.sets:
        counts[mask.bit_count()] += 1
    by_size = tuple(
        (i, Fraction(counts[i], math.comb(n, i))) for i in range(1, n)
    )
    maximum = max(d for _, d in by_size)
    argmax = tuple(i for i, d in by_size if d == maximum)
    return MrdReport(by_size, maximum, argmax)


def rho(n: int) -> Fraction:
    """The least possible maximum relative density over all dyadic distributions.

    Any dyadic hitter must have at least 1/rho(n) members.  Relabeling
    elements permutes splitter sets without changing their sizes, so one
    representative per exponent multiset suffices.
    """
    best: Optional[Fraction] = None
    for mu in enumerate_dyadic(n, up_to_permutation=True):
        value = mrd(splitters(mu)).maximum
        if best is None or value < best:
            best = value
    if best is None:
        raise PreconditionViolated(f"no non-constant dyadic distribution on n={n}")
    return best


# ---------------------------------------------------------------------------
# Dyadic hitters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HitterReport:
    """Outcome of a hitter check; `counterexample` is a missed distribution."""

    ok: bool
    counterexample: Optional[DyadicMeasure]
    checked: int


def is_dyadic_hitter(
    family: QuestionFamily, n: int, full_support_only: bool = False
) -> HitterReport:
    """Does the family contain a splitter of every non-constant dyadic distribution?

    This is exactly the test for supporting an optimal tree under every
    distribution.  Generic families are checked by full enumeration, which is
    practical up to n of about 8; cone families dispatch to a symmetry
    argument over exponent multisets and stay fast through n = 10, where
    `checked` counts (multiset, split) classes rather than distributions.
    """
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"hitter checking is limited to n <= {ENUMERATION_LIMIT}")
    if isinstance(family, ConeFamily) and family.n == n:
        return _cone_hitter_by_symmetry(n, full_support_only)
    question_masks = sorted({q.bits for q in family})
    checked = 0
    for mu in enumerate_dyadic(n):
        if full_support_only and len(mu.support) < n:
            continue
        checked += 1
        scaled, target = _scaled_weights(mu)
        if not any(_mask_weight(scaled, m) == target for m in question_masks):
            return HitterReport(False, mu, checked)
    return HitterReport(True, None, checked)


def _mask_weight(scaled: list[int], mask: int) -> int:
    total = 0
    while mask:
        low = mask & -mask
        total += scaled[low.bit_length() - 1]
        mask ^= low
    return total


def _sub_multiset_sums(values: Sequence[int]) -> frozenset[int]:
    sums = {0}
    for v in values:
        sums |= {s + v for s in sums}
    return frozenset(sums)


def _splits_of_multiset(
    tokens: Sequence[Union[int, None]], take: int
) -> Iterator[tuple[tuple, tuple]]:
    """All ways to deal `take` tokens to one side of a multiset, as (side, rest)."""
    distinct: list = []
    counts: list[int] = []
    for t in sorted(tokens, key=lambda v: (v is None, 0 if v is None else v)):
        if distinct and distinct[-1] == t:
            counts[-1] += 1
        else:
            distinct.append(t)
            counts.append(1)

    def deal(i: int, remaining: int, side: list) -> Iterator[tuple[tuple, tuple]]:
        if i == len(distinct):
            if remaining == 0:
                picked: list = []
                rest: list = []
                for j, t in enumerate(distinct):
                    picked.extend([t] * side[j])
                    rest.extend([t] * (counts[j] - side[j]))
                yield tuple(picked), tuple(rest)
            return
        most = min(counts[i], remaining)
        least = max(0, remaining - sum(counts[i + 1 :]))
        for c in range(least, most + 1):
            side.append(c)
            yield from deal(i + 1, remaining - c, side)
            side.pop()

    yield from deal(0, take, [])


def _cone_hitter_by_symmetry(n: int, full_support_only: bool) -> HitterReport:
    """Cone hitting depends only on how an exponent multiset splits at the pivot.

    A cone question inside the pivot block works iff some sub-multiset of the
    exponents assigned there reaches mass 1/2; a superset question works iff
    the block's mass plus some sub-multiset outside reaches 1/2.  Both tests
    ignore positions within the blocks, so (multiset, split) classes cover
    every assignment.
    """
    p = pivot_size(n)
    checked = 0
    for support_size in range(2, n + 1):
        if full_support_only and support_size < n:
            continue
        for profile in _kraft_exponent_profiles(support_size):
            tokens = tuple(profile) + (None,) * (n - support_size)
            top = max(profile)
            target = 1 << (top - 1)
            for inside, outside in _splits_of_multiset(tokens, p):
                checked += 1
                inside_w = [0 if t is None else 1 << (top - t) for t in inside]
                outside_w = [0 if t is None else 1 << (top - t) for t in outside]
                pivot_mass = sum(inside_w)
                hit = target in _sub_multiset_sums(inside_w) or (
                    target - pivot_mass in _sub_multiset_sums(outside_w)
                )
                if not hit:
                    return HitterReport(
                        False, DyadicMeasure(inside + outside), checked
                    )
    return HitterReport(True, None, checked)


@dataclass(frozen=True)
class MinHitter:
    """The smallest dyadic hitter found by exhaustive search, with a witness."""

    size: int
    family: ExplicitFamily


def min_dyadic_hitter(n: int) -> MinHitter:
    """Exact minimum size of a dyadic hitter, by branch and bound.

    Questions are deduplicated by complementation (a set splits in half iff
    its complement does), leaving 2^(n-1) - 1 classes; the bound is the size
    of a greedy packing of pairwise-disjoint splitter collections.
    """
    if n > MIN_HITTER_LIMIT:
        raise TooLarge(f"minimum-hitter search is limited to n <= {MIN_HITTER_LIMIT}")
    if n < 2:
        raise PreconditionViolated("need n >= 2")
    full = (1 << n) - 1

    def canon(mask: int) -> int:
        return min(mask, full ^ mask)

    collections: list[frozenset[int]] = []
    for mu in enumerate_dyadic(n):
        classes = frozenset(canon(m) for m in splitters(mu).sets)
        if classes not in collections:
            collections.append(classes)

    best_classes = sorted({c for d in collections for c in d})
    best = list(best_classes)  # hitting everything is always feasible

    def packing_bound(pending: list[frozenset[int]]) -> int:
        used: set[int] = set()
        count = 0
        for d in pending:
            if not (d & used):
                used |= d
                count += 1
        return count

    def search(pending: list[frozenset[int]], chosen: list[int]) -> None:
        nonlocal best
        if not pending:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + packing_bound(pending) >= len(best):
            return
        branch = min(pending, key=len)
        for cls in sorted(branch):
            chosen.append(cls)
            search([d for d in pending if cls not in d], chosen)
            chosen.pop()

    search(collections, [])
    questions = [
        Question(n, Explicit(frozenset(i + 1 for i in range(n) if mask >> i & 1)))
        for mask in best
    ]
    family = ExplicitFamily(n, questions, description="minimum dyadic hitter")
    return MinHitter(len(best), family)


@dataclass(frozen=True)
class SampledHitter:
    """A randomly sampled family sized by 1/rho(n), and whether it hits."""

    family: ExplicitFamily
    hitter: HitterReport
    per_size: int
    scale: Fraction


def sample_hitter(n: int, rng_seed: int) -> SampledHitter:
    """Draw ceil((1/rho(n))·n·log2 n) uniform subsets of each size and check them.

    Succeeding is only guaranteed with high probability; the report says
    whether this draw worked, and a failed seed can simply be replaced.
    """
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"sampled hitters are checkable only for n <= {ENUMERATION_LIMIT}")
    if n < 2:
        raise PreconditionViolated("need n >= 2")
    scale = 1 / rho(n)
    per_size = math.ceil(float(scale) * n * math.log2(n))
    rng = random.Random(rng_seed)
    questions = []
    for size in range(1, n):
        for _ in range(per_size):
            members = frozenset(rng.sample(range(1, n + 1), size))
            questions.append(Question(n, Explicit(members)))
    family = ExplicitFamily(
        n, questions, description=f"{per_size} random subsets per size"
    )
    return SampledHitter(family, is_dyadic_hitter(family, n), per_size, scale)


# ---------------------------------------------------------------------------
# The hard distribution and tails
# ---------------------------------------------------------------------------


def hard_distribution(eps: object, a: int) -> DyadicMeasure:
    """The distribution whose splitters are scarce in every size class.

    On n = 2^(a-1)/eps elements: 2t-1 heads of mass 2^-a (t = eps·n), then a
    halving run closed by a doubled last mass.  Its tail is exactly the run
    {x_2t..x_n} except in the degenerate eps = 1/2 case, where the
    construction collapses to the uniform distribution on 2t elements.
    """
    eps = Fraction(eps)
    if eps <= 0 or (1 / eps).denominator != 1:
        raise PreconditionViolated("eps must be a rational with integer 1/eps")
    if not isinstance(a, int) or a < 1:
        raise PreconditionViolated("a must be a positive integer")
    n = 2 ** (a - 1) * int(1 / eps)
    if n < 4:
        raise PreconditionViolated(f"construction needs n >= 4, got n={n}")
    t = 2 ** (a - 1)
    exponents = [a] * (2 * t - 1)
    exponents.extend(a + j for j in range(1, n - 2 * t + 1))
    exponents.append(a + (n - 2 * t))
    measure = DyadicMeasure(tuple(exponents))
    assert measure.total == 1
    if int(1 / eps) >= 3:
        assert tail(measure) == frozenset(range(2 * t, n + 1))
    return measure


def tail(mu: DyadicMeasure) -> frozenset[int]:
    """The largest halving run below everything else, treated atomically by splitters.

    The run's masses read 2^-a-1, 2^-a-2, ..., with the least mass doubled,
    for some a >= 1, and every element outside must weigh at least 2^-a.
    A missing element (weight zero) therefore forces an empty tail, as does
    a tie anywhere above the bottom pair.
    """
    if not mu.is_distribution:
        raise PreconditionViolated("the tail is defined for dyadic distributions")
    if any(e is None for e in mu.exponents):
        return frozenset()
    items = sorted(
        ((e, i + 1) for i, e in enumerate(mu.exponents)), key=lambda t: (-t[0], t[1])
    )
    if len(items) < 2:
        return frozenset()
    (e0, first), (e1, second) = items[0], items[1]
    if e0 != e1 or e0 < 2 or (len(items) > 2 and items[2][0] == e0):
        return frozenset()
    members = [first, second]
    top = e0
    index = 2
    while index < len(items):
        e, element = items[index]
        if e != top - 1 or e < 2:
            break
        if index + 1 < len(items) and items[index + 1][0] == e:
            break
        members.append(element)
        top = e
        index += 1
    assert all(e <= top - 1 for e, _ in items[index:]), "outside mass below 2^-a"
    return frozenset(members)


@dataclass(frozen=True)
class InvariantReport:
    """Result of sweeping an exact structural property over an enumeration."""

    ok: bool
    checked: int
    counterexample: Optional[DyadicMeasure]
    detail: str = ""


def check_tail_atomic(n: int, up_to_permutation: bool = True) -> InvariantReport:
    """Every splitter contains the whole tail or misses it, for all dyadic on n.

    Both sides transform covariantly under relabeling, so one representative
    per exponent multiset covers everything; pass up_to_permutation=False to
    sweep every labeled distribution anyway.
    """
    checked = 0
    for mu in enumerate_dyadic(n, up_to_permutation=up_to_permutation):
        run = tail(mu)
        if not run:
            continue
        checked += 1
        run_mask = sum(1 << (el - 1) for el in run)
        for mask in splitters(mu).sets:
            inside = mask & run_mask
            if inside != 0 and inside != run_mask:
                return InvariantReport(
                    False, checked, mu, f"splitter {mask:b} cuts the tail"
                )
    return InvariantReport(True, checked, None)


def check_splitter_antichain(n: int, up_to_permutation: bool = True) -> InvariantReport:
    """Splitters of a full-support dyadic distribution form a maximal antichain
    closed under complementation.

    Maximality is checked as: every set of mass above 1/2 contains a splitter.
    With complement closure that settles all sets: lighter-than-half sets sit
    inside the complement of whatever their complement contains.
    """
    checked = 0
    for mu in enumerate_dyadic(n, up_to_permutation=up_to_permutation):
        if len(mu.support) < n:
            continue
        checked += 1
        collection = splitters(mu).sets
        full = (1 << n) - 1
        for mask in collection:
            if full ^ mask not in collection:
                return InvariantReport(
                    False, checked, mu, f"complement of {mask:b} missing"
                )
        ordered = sorted(collection, key=int.bit_count)
        for i, small in enumerate(ordered):
            for big in ordered[i + 1 :]:
                if small != big and small & big == small:
                    return InvariantReport(
                        False, checked, mu, f"{small:b} nested in {big:b}"
                    )
        scaled, target = _scaled_weights(mu)
        for mask in range(1 << n):
            if _mask_weight(scaled, mask) > target and not any(
                s & mask == s for s in collection
            ):
                return InvariantReport(
                    False, checked, mu, f"heavy set {mask:b} avoids all splitters"
                )
    return InvariantReport(True, checked, None)


# ---------------------------------------------------------------------------
# The equality-testing game bound
# ---------------------------------------------------------------------------

_LOG2E = math.log2(math.e)


def endgame_revenue(p: float) -> float:
    """1 - h(p) - p: the surplus of stopping play at a favorite of mass p.

    Non-positive from roughly 0.23 on, which is what makes thresholds in
    (0, 1/3] safe.
    """
    return 1.0 - binary_entropy(p) - p


def _s_rate(x: float) -> float:
    """S(x) = (1 - h((1+x)/2))/x by power series; stable where the closed form cancels.

    Only meant for 0 < x <= 1/3, where forty terms land far below float
    precision.
    """
    total = 0.0
    power = x
    square = x * x
    for k in range(1, 41):
        total += _LOG2E / (2 * k * (2 * k - 1)) * power
        power *= square
    return total


def gt_bound(t: object, terms: int = 64) -> float:
    """Upper bound for the equality-testing game's normalized revenue at threshold t.

    Sums S over the first `terms` points of the halving sequence
    x_i = t/(2^i(1-t)+t), adds a rigorous remainder (S(x) <= x and the x_i at
    least halve, so the remainder is at most 2t/(2^terms·(1-t)), about 1e-19
    at 64 terms), and closes with the worst endgame ratio.  A negative value
    certifies redundancy below 1 + t for the threshold strategy.
    """
    t = float(Fraction(t) if not isinstance(t, float) else t)
    if not 0 < t <= 1 / 3:
        raise PreconditionViolated("the bound needs t in (0, 1/3]")
    if terms < 1:
        raise PreconditionViolated("need at least one series term")
    total = sum(_s_rate(t / (2**i * (1 - t) + t)) for i in range(terms))
    remainder = 2.0 * t / (2**terms * (1 - t))
    worst_end = max(
        endgame_revenue(t) / t,
        endgame_revenue(2 * t / (1 - t)) / (2 * t / (1 - t)),
    )
    return total + remainder + worst_end


# ---------------------------------------------------------------------------
# Exponent constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentCalculus:
    """The two base-of-exponent constants controlling minimal hitter growth."""

    eps_argmax: float
    eps_value: float
    beta0: float
    l_beta0: float


def _bisect_root(fn, lo: float, hi: float) -> float:
    f_lo = fn(lo)
    if f_lo == 0:
        return lo
    assert f_lo * fn(hi) < 0, "bisection needs a sign change"
    for _ in range(200):
        mid = (lo + hi) / 2
        value = fn(mid)
        if value == 0:
            return mid
        if (value > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def exponent_calculus() -> ExponentCalculus:
    """Locate the maximum of 2^(h(e)-2e) and the crossover constant for general n.

    The maximizer solves log2((1-e)/e) = 2, giving e = 1/5 and value 5/4.
    The crossover beta0 solves h(b) - h(b/2) - b = 0 on [1/4, 0.4]: below it
    the plain exponent h(b) - 2b wins, above it the halved one; the growth
    base at the crossover is 2^(h(beta0) - 2·beta0).
    """
    eps = _bisect_root(lambda e: math.log2((1 - e) / e) - 2.0, 1e-9, 0.5 - 1e-9)
    value = 2.0 ** (binary_entropy(eps) - 2 * eps)
    beta = _bisect_root(
        lambda b: binary_entropy(b) - binary_entropy(b / 2) - b, 0.25, 0.4
    )
    l_value = 2.0 ** (binary_entropy(beta) - 2 * beta)
    return ExponentCalculus(eps, value, beta, l_value)


# ---------------------------------------------------------------------------
# The prolixity lower-bound family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LbFirstQuestion:
    """One first-question class of the sweep: its cost and its shape."""

    mask: int
    cost: Fraction
    admissible: bool
    heavy_split: tuple[int, int]
    lights_together: bool


@dataclass(frozen=True)
class LbFamilyReport:
    """Exhaustive sweep of first questions against the rigid distribution.

    `ok` says every admissible first question split the heavies as evenly as
    parity allows and kept all light elements on one side.
    """

    n: int
    k: int
    r: Fraction
    delta: Fraction
    dist: Distribution
    opt_cost: Fraction
    questions: tuple[LbFirstQuestion, ...]
    admissible_count: int
    ok: bool
    brute_checked: bool


def prolixity_lb_check(
    k: int, n: int, delta: Optional[object] = None
) -> LbFamilyReport:
    """Sweep all first questions against 2^k - 1 heavies of mass (1-delta)/(2^k-1).

    A first question is admissible when completing both sides by Huffman
    stays within r = 2^-k of Opt.  The report records, exactly, that every
    admissible question splits the heavies 2^(k-1) against 2^(k-1)-1 and
    never separates the light elements, which is what makes near-optimal
    question sets large: each question serves few light-set choices.
    """
    if k not in (2, 3):
        raise PreconditionViolated("the sweep supports k in {2, 3}")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"the exhaustive sweep is limited to n <= {ENUMERATION_LIMIT}")
    heavy_count = 2**k - 1
    if n <= heavy_count:
        raise PreconditionViolated(f"need n > {heavy_count} for a light element")
    r = Fraction(1, 2**k)
    delta = r * r / 2 if delta is None else Fraction(delta)
    if not 0 < delta < r * r:
        raise PreconditionViolated("delta must lie in (0, r^2)")

    light_count = n - heavy_count
    weights = [(1 - delta) / heavy_count] * heavy_count
    weights += [delta / light_count] * light_count
    dist = Distribution(tuple(weights))
    opt = huffman(dist).opt_cost
    brute_checked = n <= BRUTE_FORCE_LIMIT
    if brute_checked:
        assert brute_force_opt(dist) == opt

    full = (1 << n) - 1
    heavy_mask = (1 << heavy_count) - 1
    good_split = (2 ** (k - 1), 2 ** (k - 1) - 1)
    rows = []
    ok = True
    admissible_count = 0
    for mask in range(1, full):
        if mask > full ^ mask:
            continue
        side = [i + 1 for i in range(n) if mask >> i & 1]
        other = [i + 1 for i in range(n) if not mask >> i & 1]
        weight = sum(dist.weight(el) for el in side)
        cost = (
            1
            + weight * huffman(dist.conditioned_on(side)).opt_cost
            + (1 - weight) * huffman(dist.conditioned_on(other)).opt_cost
        )
        admissible = cost <= opt + r
        heavy_in = (mask & heavy_mask).bit_count()
        split = (
            max(heavy_in, heavy_count - heavy_in),
            min(heavy_in, heavy_count - heavy_in),
        )
        lights_in = (mask >> heavy_count).bit_count()
        together = lights_in in (0, light_count)
        if admissible:
            admissible_count += 1
            if split != good_split or not together:
                ok = False
        rows.append(LbFirstQuestion(mask, cost, admissible, split, together))
    assert admissible_count >= 1, "the optimal tree's own first question qualifies"
    return LbFamilyReport(
        n=n,
        k=k,
        r=r,
        delta=delta,
        dist=dist,
        opt_cost=opt,
        questions=tuple(rows),
        admissible_count=admissible_count,
        ok=ok,
        brute_checked=brute_checked,
    )
