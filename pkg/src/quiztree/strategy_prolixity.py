"""A randomized strategy with prolixity r + r² over cyclic-interval questions.

The player maintains a dyadic sub-distribution over the still-possible
elements, seeded from the Huffman measure of the target distribution.  Each
question doubles the mass of every element consistent with the answer, with
one exception: when more than half the mass sits on light elements (mass
below 2^-k), the question is a random window on a circle built from the
light arcs, and the at most two elements whose arcs straddle the window
boundary keep their mass instead of doubling.  An element of initial mass
2^-d is found after d doublings, so the expected number of questions is
d plus the expected number of non-doubling steps, which works out to at
most r + r² for r = 4/2^k.

Every question is a cyclic interval of x_1 ≺ … ≺ x_n ≺ x_1 with at most 2^k
elements added or removed, a family of size at most n²·C(n,2^k)·3^(2^k).
"""

from __future__ import annotations

import math
import random
import statistics
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import (
    CyclicQuestion,
    Distribution,
    Question,
    Transcript,
    TranscriptEntry,
    _interval_mask,
    dyadic_prefix_split,
)
from .errors import InconsistentAnswers, PreconditionViolated, WrongState
from .huffman import huffman


@dataclass(frozen=True)
class ProlixityParams:
    """Tuning for the randomized strategy: r = 4/2^k, questions adjusted by ≤ 2^k."""

    k: int
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 3:
            raise PreconditionViolated(f"k must be an integer >= 3, got {self.k!r}")
        if not 0 <= self.rng_seed < 2**64:
            raise PreconditionViolated("rng_seed must fit in 64 bits")

    @property
    def r(self) -> Fraction:
        return Fraction(4, 2**self.k)


def prolixity_family_size_bound(n: int, k: int) -> int:
    """Exact size bound n²·C(n,2^k)·3^(2^k) for the adjusted-interval family.

    Also checks the closed form against the looser n²·((3e/4)·r·n)^(4/r)
    with r = 4/2^k, which is how the count is usually quoted.
    """
    if n <= 2**k:
        raise PreconditionViolated(f"need n > 2^k, got n={n}, 2^k={2 ** k}")
    count = n * n * math.comb(n, 2**k) * 3 ** (2**k)
    r = Fraction(4, 2**k)
    log_loose = 2 * math.log(n) + 2**k * math.log(0.75 * math.e * float(r) * n)
    if math.log(count) > log_loose + 1e-9:
        raise AssertionError("exact family count exceeds its own upper estimate")
    return count


def certify_question(question: Question, n: int, k: int) -> bool:
    """Is the question a cyclic interval adjusted by at most 2^k elements?

    Questions built as :class:`CyclicQuestion` carry their witness and are
    checked directly.  Any other kind is certified by minimizing the
    symmetric difference to a cyclic interval, which reduces to a maximum
    cyclic subarray over +1/-1 scores (empty and full intervals included).
    """
    if question.n != n:
        return False
    budget = 2**k
    if isinstance(question.kind, CyclicQuestion):
        return len(question.kind.added) + len(question.kind.removed) <= budget

    bits = question.bits
    size = question.size
    values = [1 if bits >> i & 1 else -1 for i in range(n)]
    best = _max_cyclic_subarray(values)
    return size - max(best, 0) <= budget


def _max_cyclic_subarray(values: list[int]) -> int:
    """Largest sum of a non-empty cyclic run; the caller handles the empty run."""
    best_here = best = values[0]
    worst_here = worst = values[0]
    for v in values[1:]:
        best_here = max(v, best_here + v)
        best = max(best, best_here)
        worst_here = min(v, worst_here + v)
        worst = min(worst, worst_here)
    total = sum(values)
    if worst == total:  # the complement of the minimum run would be empty
        return best
    return max(best, total - worst)


# ---------------------------------------------------------------------------
# The game engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepEvent:
    """One asked question with the measure before and after the update.

    `before` and `after` map elements to their mass exponents (mass 2^-e);
    elements missing from `after` were zeroed.  The window fields are set
    only for random-window steps.
    """

    step: int
    question: Question
    answer: bool
    before: dict[int, int]
    after: dict[int, int]
    boundary: frozenset[int] = frozenset()
    window_start: Optional[Fraction] = None
    light_total: Optional[Fraction] = None


Observer = Callable[[StepEvent], None]

_PendingStep = tuple[
    int,  # step number: 2, 3, or 4
    Question,
    dict[int, int],  # successor exponents on yes
    dict[int, int],  # successor exponents on no
    frozenset,  # boundary elements
    Optional[Fraction],  # window start
    Optional[Fraction],  # light total σ
]


class _TrEngine:
    """Question-by-question evaluation of the randomized strategy.

    State is a map element -> exponent of the maintained dyadic measure.
    Randomness is drawn lazily when a question is prepared, so interactive
    use and batch simulation share one code path.
    """

    def __init__(self, exponents: dict[int, int], n: int, k: int, rng: random.Random):
        self.n = n
        self.k = k
        self.asked = 0
        self._rng = rng
        self._mass = dict(exponents)
        self._pending: Optional[_PendingStep] = None

    @property
    def done(self) -> bool:
        return len(self._mass) == 1

    @property
    def result(self) -> Optional[int]:
        return next(iter(self._mass)) if self.done else None

    def exponents(self) -> dict[int, int]:
        return dict(self._mass)

    def question(self) -> Question:
        if self.done:
            raise WrongState("the game is over; no further questions")
        if self._pending is None:
            self._pending = self._prepare()
        return self._pending[1]

    def apply(self, answer: bool) -> StepEvent:
        if self.done:
            raise WrongState("the game is over; cannot accept answers")
        if self._pending is None:
            self._pending = self._prepare()
        step, question, on_yes, on_no, boundary, window_start, light_total = self._pending
        survivors = on_yes if answer else on_no
        if not survivors:
            raise InconsistentAnswers("the answers rule out every element")
        event = StepEvent(
            step=step,
            question=question,
            answer=answer,
            before=dict(self._mass),
            after=dict(survivors),
            boundary=boundary,
            window_start=window_start,
            light_total=light_total,
        )
        self._mass = survivors
        self._pending = None
        self.asked += 1
        return event

    def _prepare(self) -> _PendingStep:
        mass = self._mass
        actives = sorted(mass)
        scale_exp = max(mass.values())
        assert scale_exp >= 1, "no element may hold mass 1 while others remain"
        scaled = {el: 1 << (scale_exp - mass[el]) for el in actives}
        assert sum(scaled.values()) <= 1 << scale_exp, "measure total exceeds 1"
        half = 1 << (scale_exp - 1)

        heavies = [el for el in actives if mass[el] <= self.k]
        lights = [el for el in actives if mass[el] > self.k]
        assert len(heavies) <= 2**self.k
        heavy_mass = sum(scaled[el] for el in heavies)

        if heavy_mass >= half:
            return self._prepare_heavy_half(heavies, mass)
        light_mass = sum(scaled[el] for el in lights)
        if light_mass <= half:
            return self._prepare_heavy_light_split(heavies, lights, mass)
        return self._prepare_window(lights, heavies, mass, scaled, scale_exp)

    def _prepare_heavy_half(
        self, heavies: list[int], mass: dict[int, int]
    ) -> _PendingStep:
        by_weight = sorted(heavies, key=lambda el: (mass[el], el))
        weights = [Fraction(1, 2 ** mass[el]) for el in by_weight]
        cut = dyadic_prefix_split(weights, 1)
        chosen = frozenset(by_weight[:cut])
        question = Question(
            self.n, CyclicQuestion(None, None, chosen, frozenset())
        )
        on_yes = {el: mass[el] - 1 for el in chosen}
        on_no = {el: mass[el] - 1 for el in mass if el not in chosen}
        return 2, question, on_yes, on_no, frozenset(), None, None

    def _prepare_heavy_light_split(
        self, heavies: list[int], lights: list[int], mass: dict[int, int]
    ) -> _PendingStep:
        question = Question(
            self.n, CyclicQuestion(1, self.n, frozenset(), frozenset(heavies))
        )
        on_yes = {el: mass[el] - 1 for el in lights}
        on_no = {el: mass[el] - 1 for el in heavies}
        return 3, question, on_yes, on_no, frozenset(), None, None

    def _prepare_window(
        self,
        lights: list[int],
        heavies: list[int],
        mass: dict[int, int],
        scaled: dict[int, int],
        scale_exp: int,
    ) -> _PendingStep:
        # Lay the light arcs on a circle of circumference σ in cyclic order and
        # draw the window start u uniformly from a 2^bits grid.  Everything is
        # compared at the common scale 2^(scale_exp + bits), where u, the arc
        # endpoints, the midpoints, and the window length 1/2 are all integers.
        bits = 2 * self.k + (self.n - 1).bit_length()
        draw = self._rng.getrandbits(bits)
        sigma = sum(scaled[el] for el in lights)
        circle = sigma << bits
        window = 1 << (scale_exp + bits - 1)
        start_u = sigma * draw

        in_window: dict[int, bool] = {}
        boundary = set()
        edges = (start_u % circle, (start_u + window) % circle)
        position = 0
        for el in lights:
            arc = scaled[el] << bits
            midpoint = (position << bits) + (scaled[el] << (bits - 1))
            in_window[el] = (midpoint - start_u) % circle < window
            if any(0 < (edge - (position << bits)) % circle < arc for edge in edges):
                boundary.add(el)
            position += scaled[el]

        kept = [el for el in lights if in_window[el]]
        assert kept, "a window of length 1/2 always swallows some arc whole"
        assert len(boundary) <= 2

        question = self._window_question(lights, in_window, heavies)
        on_yes = {
            el: mass[el] - (0 if el in boundary else 1) for el in kept
        }
        on_no = {
            el: mass[el] - (0 if el in boundary else 1)
            for el in self._mass
            if not in_window.get(el, False)
        }
        window_start = Fraction(start_u, 1 << (scale_exp + bits))
        light_total = Fraction(sigma, 1 << scale_exp)
        return 4, question, on_yes, on_no, frozenset(boundary), window_start, light_total

    def _window_question(
        self, lights: list[int], in_window: dict[int, bool], heavies: list[int]
    ) -> Question:
        """The kept lights as an interval of X_n, minus the heavies inside it.

        The kept set is one cyclic run of the light order, so the X_n interval
        from the run's first to its last light contains exactly those lights.
        """
        starts = [
            i
            for i, el in enumerate(lights)
            if in_window[el] and not in_window[lights[i - 1]]
        ]
        if not starts:  # every light is in the window
            start, end = 1, self.n
        else:
            assert len(starts) == 1, "window membership must be one cyclic run"
            begin = starts[0]
            length = sum(1 for el in lights if in_window[el])
            start = lights[begin]
            end = lights[(begin + length - 1) % len(lights)]
        mask = _interval_mask(self.n, start, end)
        removed = frozenset(el for el in heavies if mask >> (el - 1) & 1)
        assert len(removed) <= 2**self.k
        return Question(self.n, CyclicQuestion(start, end, frozenset(), removed))


def _check_step(event: StepEvent, n: int, k: int) -> None:
    """The paper-facing invariants, asserted after every question."""
    for el, exponent in event.after.items():
        assert exponent in (event.before[el], event.before[el] - 1), (
            "a surviving mass may only stay or double"
        )
    top = max(event.after.values())
    total = sum(1 << (top - e) for e in event.after.values())
    assert total <= 1 << top, "the maintained measure must stay a sub-distribution"
    if len(event.after) >= 2:
        assert min(event.after.values()) >= 1
    assert certify_question(event.question, n, k), "question left the cyclic family"


def _run(
    exponents: dict[int, int],
    n: int,
    k: int,
    rng: random.Random,
    secret: int,
    observer: Optional[Observer],
) -> Transcript:
    engine = _TrEngine(exponents, n, k, rng)
    entries: list[TranscriptEntry] = []
    while not engine.done:
        question = engine.question()
        answer = question.contains(secret)
        event = engine.apply(answer)
        assert secret in event.after, "the true element must survive every answer"
        _check_step(event, n, k)
        entries.append(TranscriptEntry(question, answer))
        if observer is not None:
            observer(event)
    assert engine.result == secret
    return Transcript(tuple(entries), engine.result)


def _support_exponents(dist: Distribution) -> dict[int, int]:
    measure = huffman(dist).dyadic
    return {el: measure.exponents[el - 1] for el in measure.support}


def run_tr(
    dist: Distribution,
    params: ProlixityParams,
    secret: int,
    observer: Optional[Observer] = None,
) -> Transcript:
    """Play one seeded game against a fixed secret; returns the full transcript.

    The maintained measure starts at the Huffman measure of `dist`, so an
    element at Huffman depth d is found after d doublings plus however many
    boundary misfortunes the randomness inflicts.  An optional observer
    receives a :class:`StepEvent` after every question.
    """
    if dist.weight(secret) == 0:
        raise PreconditionViolated(f"secret x_{secret} has weight zero")
    rng = random.Random(params.rng_seed)
    return _run(_support_exponents(dist), dist.n, params.k, rng, secret, observer)


class ProlixityStepper:
    """Interactive play of the randomized strategy, one question at a time."""

    def __init__(self, dist: Distribution, params: ProlixityParams):
        self.n = dist.n
        self.params = params
        self._engine = _TrEngine(
            _support_exponents(dist), dist.n, params.k, random.Random(params.rng_seed)
        )

    @property
    def done(self) -> bool:
        return self._engine.done

    @property
    def result(self) -> Optional[int]:
        return self._engine.result

    @property
    def asked(self) -> int:
        return self._engine.asked

    def question(self) -> Question:
        return self._engine.question()

    def answer(self, yes: bool) -> None:
        event = self._engine.apply(yes)
        _check_step(event, self.n, self.params.k)

    def candidates(self) -> tuple[int, ...]:
        return tuple(sorted(self._engine.exponents()))


def prolixity_online(dist: Distribution, params: ProlixityParams) -> ProlixityStepper:
    return ProlixityStepper(dist, params)


# ---------------------------------------------------------------------------
# Monte Carlo cost estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementCost:
    """Observed depth statistics for one element, with its per-element bound."""

    element: int
    trials: int
    mean: Optional[float]
    stderr: Optional[float]
    bound: float


@dataclass(frozen=True)
class CostEstimate:
    """Monte Carlo estimate of the strategy's expected cost under a distribution."""

    params: ProlixityParams
    trials: int
    mean: float
    stderr: float
    opt_cost: Fraction
    bound: float
    per_element: tuple[ElementCost, ...] = field(repr=False)


def estimate_expected_cost(
    dist: Distribution, params: ProlixityParams, trials: int
) -> CostEstimate:
    """Sample secrets from `dist` and play; compare mean depths to the bounds.

    Per element the bound is log2(1/μ(x)) + r + r² with μ the Huffman measure;
    in aggregate it is Opt + r + r².  Standard errors are sample standard
    deviations over the trial counts, None where fewer than two trials landed.
    """
    if trials < 1:
        raise PreconditionViolated("need at least one trial")
    result = huffman(dist)
    exponents = {
        el: result.dyadic.exponents[el - 1] for el in result.dyadic.support
    }
    support = sorted(exponents)
    cumulative: list[float] = []
    acc = 0.0
    for el in support:
        acc += float(dist.weight(el))
        cumulative.append(acc)

    driver = random.Random(params.rng_seed)
    slack = float(params.r) + float(params.r) ** 2
    depths: dict[int, list[int]] = {el: [] for el in support}
    for _ in range(trials):
        pick = bisect_right(cumulative, driver.random() * cumulative[-1])
        secret = support[min(pick, len(support) - 1)]
        trial_rng = random.Random(driver.getrandbits(64))
        transcript = _run(exponents, dist.n, params.k, trial_rng, secret, None)
        depths[secret].append(transcript.length)

    per_element = []
    everything: list[int] = []
    for el in support:
        observed = depths[el]
        everything.extend(observed)
        mean = statistics.fmean(observed) if observed else None
        stderr = (
            statistics.stdev(observed) / math.sqrt(len(observed))
            if len(observed) >= 2
            else None
        )
        per_element.append(
            ElementCost(el, len(observed), mean, stderr, exponents[el] + slack)
        )
    overall_mean = statistics.fmean(everything)
    overall_stderr = (
        statistics.stdev(everything) / math.sqrt(len(everything))
        if len(everything) >= 2
        else 0.0
    )
    return CostEstimate(
        params=params,
        trials=trials,
        mean=overall_mean,
        stderr=overall_stderr,
        opt_cost=result.opt_cost,
        bound=float(result.opt_cost) + slack,
        per_element=tuple(per_element),
    )
