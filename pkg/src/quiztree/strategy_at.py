"""The threshold strategy over comparison and equality questions.

At every step, look at the conditional distribution of the remaining
candidates.  If the most likely candidate holds at least a threshold t of the
mass, ask "is x that candidate?".  Otherwise ask the most balanced comparison
question "is x < x_i?", which needs only the original linear order.  The
default threshold 3/10 keeps the expected number of questions within 1 bit of
the entropy; threshold 1 (never ask equalities except for a sure thing) is
plain weight balancing and stays within 2 bits.

Only 2n-3 distinct questions can ever be asked: n equalities and n-3
comparisons (after removing duplicates up to complementation: {x_1} doubles
as "x < x_2", and the complement of {x_n} is "x < x_n").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

from .core import (
    Comparison,
    DecisionTree,
    Distribution,
    Equality,
    EntryWise,
    Leaf,
    Node,
    Question,
    QuestionFamily,
    binary_entropy,
    build_tree_iteratively,
    entropy,
    smallest_base,
    tree_cost,
)
from .errors import PreconditionViolated

DEFAULT_THRESHOLD = Fraction(3, 10)


@dataclass(frozen=True)
class AtParams:
    """Parameters of the threshold strategy; t in (0, 1]."""

    t: Fraction = DEFAULT_THRESHOLD

    def __post_init__(self) -> None:
        t = Fraction(self.t)
        if not 0 < t <= 1:
            raise PreconditionViolated(f"threshold t must be in (0, 1], got {t}")
        object.__setattr__(self, "t", t)


class ComparisonEqualityFamily(QuestionFamily):
    """The 2n-3 classes of equality and comparison questions on n elements.

    `contains` accepts a question if it is equivalent, up to complementation,
    to some member: any singleton {x_i} and any order prefix {x_1..x_j}.
    """

    def __init__(self, n: int):
        if n < 2:
            raise PreconditionViolated("the family needs n >= 2")
        self.n = n
        self.description = f"equality and comparison questions on {n} elements"

    def __len__(self) -> int:
        return 2 * self.n - 3

    def __iter__(self) -> Iterator[Question]:
        if self.n == 2:
            yield Question(self.n, Equality(1))
            return
        for element in range(1, self.n + 1):
            yield Question(self.n, Equality(element))
        # "x < x_2" duplicates {x_1}; "x < x_n" is the complement of {x_n}
        for element in range(3, self.n):
            yield Question(self.n, Comparison(element))

    def contains(self, question: Question) -> bool:
        if question.n != self.n:
            return False
        kind = question.kind
        if isinstance(kind, Equality):
            return True
        if isinstance(kind, Comparison):
            return kind.element >= 2  # "x < x_1" is empty, not a question
        if isinstance(kind, EntryWise) and kind.width == 1:
            # one-digit codes: digit == element, so these are the same classes
            base = smallest_base(self.n, 1)
            if kind.relation == "eq":
                return 1 <= kind.value <= base
            return 2 <= kind.value <= base
        canonical = question.canonical_bits
        if canonical == 0:
            return False
        is_singleton = canonical & (canonical - 1) == 0
        is_prefix = canonical & (canonical + 1) == 0
        return is_singleton or is_prefix


def comparison_equality_family(n: int) -> ComparisonEqualityFamily:
    return ComparisonEqualityFamily(n)


def middle_index(dist: Distribution) -> int:
    """The i in 2..n whose comparison "x < x_i?" splits the mass most evenly.

    Minimizes |P(x < x_i) - 1/2| over i in 2..n; ties go to the smallest i.
    (i = 1 is excluded: "x < x_1" is the empty question.)
    """
    if dist.n < 2:
        raise PreconditionViolated("middle_index needs n >= 2")
    best_i = 2
    best_gap = abs(2 * dist.weights[0] - 1)
    prefix = dist.weights[0]
    for i in range(3, dist.n + 1):
        prefix += dist.weights[i - 2]
        gap = abs(2 * prefix - 1)
        if gap < best_gap:
            best_gap = gap
            best_i = i
    return best_i


# ---------------------------------------------------------------------------
# The shared splitting engine
# ---------------------------------------------------------------------------
#
# Items are (key, weight) pairs with integer weights, sorted by key; the keys
# are element indices here and digit values in the vector strategy.  Total is
# the (unnormalized) sum of weights.

Items = tuple[tuple[int, int], ...]

LEAF = "leaf"
FAVORITE = "favorite"
MIDPOINT = "midpoint"


def _threshold_decision(
    items: Items, total: int, t: Fraction
) -> tuple[str, int]:
    """Decide the next question on the current conditional distribution.

    Returns (LEAF, 0) for a single item; (FAVORITE, pos) when items[pos] holds
    at least a t-fraction of the mass (smallest key wins ties); else
    (MIDPOINT, j), splitting items[:j] from items[j:] where the cut minimizes
    |prefix - total/2| (smallest j wins ties).
    """
    if len(items) == 1:
        return LEAF, 0
    pos_max = 0
    for i in range(1, len(items)):
        if items[i][1] > items[pos_max][1]:
            pos_max = i
    if items[pos_max][1] * t.denominator >= t.numerator * total:
        return FAVORITE, pos_max
    best_j = 1
    prefix = items[0][1]
    best_gap = abs(2 * prefix - total)
    for j in range(2, len(items)):
        prefix += items[j - 1][1]
        gap = abs(2 * prefix - total)
        if gap < best_gap:
            best_gap = gap
            best_j = j
    return MIDPOINT, best_j


def _split_tasks(
    items: Items, total: int, decision: tuple[str, int]
) -> tuple[int, Items, int, Items, int]:
    """Apply a FAVORITE/MIDPOINT decision: (key, yes_items, yes_total, no_items, no_total)."""
    action, pos = decision
    if action == FAVORITE:
        key, weight = items[pos]
        rest = items[:pos] + items[pos + 1 :]
        return key, (items[pos],), weight, rest, total - weight
    assert action == MIDPOINT
    prefix = sum(w for _, w in items[:pos])
    return items[pos][0], items[:pos], prefix, items[pos:], total - prefix


def _support_items(dist: Distribution) -> tuple[Items, int]:
    """The support as (element, integer weight) pairs over a common denominator."""
    denominator = math.lcm(*(dist.weight(e).denominator for e in dist.support))
    items = tuple(
        (e, int(dist.weight(e) * denominator)) for e in dist.support
    )
    return items, denominator


def build_at_tree(dist: Distribution, params: Union[AtParams, None] = None) -> DecisionTree:
    """Build the threshold-strategy tree for `dist`.

    Equality questions target the current favorite; comparison questions cut
    the surviving candidates at the most balanced point of the original
    order.  With the default t = 3/10 the cost is at most H(dist) + 1.
    """
    params = params or AtParams()
    t = params.t
    n = dist.n
    items, _ = _support_items(dist)

    def expand(task: object) -> Union[Leaf, tuple[Question, object, object]]:
        current, total = task  # type: ignore[misc]
        decision = _threshold_decision(current, total, t)
        if decision[0] == LEAF:
            return Leaf(current[0][0])
        key, yes_items, yes_total, no_items, no_total = _split_tasks(
            current, total, decision
        )
        kind = Equality(key) if decision[0] == FAVORITE else Comparison(key)
        return (
            Question(n, kind),
            (yes_items, yes_total),
            (no_items, no_total),
        )

    total = sum(w for _, w in items)
    return DecisionTree(n, build_tree_iteratively((items, total), expand))


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AtDiagnostic:
    """Cost accounting of a threshold-strategy tree, checked two ways.

    `margin` is cost - entropy - 1, which the t = 3/10 guarantee keeps <= 0.
    `recursion_margin` recomputes the same quantity by the strategy's own
    recursion: -1 for a point mass; an equality step contributes
    1 - h(p) - p and leaves margin (1-p)*M(rest); a comparison step
    contributes 1 - h(q) and leaves q*M(left) + (1-q)*M(right).
    """

    cost: Fraction
    entropy: float
    redundancy: float
    margin: float
    recursion_margin: float

    @property
    def agrees(self) -> bool:
        return abs(self.margin - self.recursion_margin) <= 1e-9


def _recursion_margin(items: Items, total: int, t: Fraction) -> float:
    if len(items) == 1:
        return -1.0
    decision = _threshold_decision(items, total, t)
    _, yes_items, yes_total, no_items, no_total = _split_tasks(items, total, decision)
    if decision[0] == FAVORITE:
        p = yes_total / total
        return (
            1.0
            - binary_entropy(p)
            - p
            + (1.0 - p) * _recursion_margin(no_items, no_total, t)
        )
    q = yes_total / total
    return (
        1.0
        - binary_entropy(q)
        + q * _recursion_margin(yes_items, yes_total, t)
        + (1.0 - q) * _recursion_margin(no_items, no_total, t)
    )


def redundancy_diagnostic(
    dist: Distribution, params: Union[AtParams, None] = None
) -> AtDiagnostic:
    """Cost, redundancy, and the margin below H+1, computed both directly and
    by the strategy recursion (the two must agree to 1e-9)."""
    params = params or AtParams()
    tree = build_at_tree(dist, params)
    cost = tree_cost(tree, dist)
    h = entropy(dist)
    items, _ = _support_items(dist)
    total = sum(w for _, w in items)
    return AtDiagnostic(
        cost=cost,
        entropy=h,
        redundancy=float(cost) - h,
        margin=float(cost) - h - 1.0,
        recursion_margin=_recursion_margin(items, total, params.t),
    )
