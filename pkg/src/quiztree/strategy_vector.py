"""The vector strategy: identify the secret digit by digit.

Elements 1..n are encoded as k-digit numbers in base b = ceil(n^(1/k)), most
significant digit first (k = floor(r) for a redundancy budget r).  The
threshold strategy then runs on one coordinate at a time, asking only
"is digit c equal to v?" and "is digit c less than v?".  Each coordinate costs
at most its conditional entropy plus one bit, so the whole tree costs at most
H + k while using a tiny question family: k*(2b-3) question descriptors,
which is at most 2*floor(r)*n^(1/floor(r)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Union

from .core import (
    DecisionTree,
    Distribution,
    EntryWise,
    Leaf,
    Question,
    QuestionFamily,
    build_tree_iteratively,
    smallest_base,
)
from .errors import MalformedIndex, PreconditionViolated
from .strategy_at import (
    LEAF,
    FAVORITE,
    AtParams,
    _support_items,
    _threshold_decision,
    build_at_tree,
    comparison_equality_family,
)


def _width_from_budget(r: object) -> int:
    k = math.floor(Fraction(r)) if isinstance(r, (Fraction, str)) else math.floor(r)
    if k < 1:
        raise PreconditionViolated(f"the redundancy budget r must be >= 1, got {r}")
    return int(k)


@dataclass(frozen=True)
class VectorCodec:
    """The fixed-width positional code behind entry-wise questions.

    Digits are 1-based and most significant first; base is the smallest b
    with b**width >= n.
    """

    n: int
    width: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.width < 1:
            raise PreconditionViolated("need n >= 1 and width >= 1")

    @cached_property
    def base(self) -> int:
        return smallest_base(self.n, self.width)

    def encode(self, element: int) -> tuple[int, ...]:
        if not 1 <= element <= self.n:
            raise PreconditionViolated(f"element {element} outside 1..{self.n}")
        code = element - 1
        digits = []
        for _ in range(self.width):
            code, digit = divmod(code, self.base)
            digits.append(digit + 1)
        return tuple(reversed(digits))

    def decode(self, digits: tuple[int, ...]) -> int:
        if len(digits) != self.width:
            raise MalformedIndex(f"expected {self.width} digits, got {len(digits)}")
        code = 0
        for digit in digits:
            if not 1 <= digit <= self.base:
                raise MalformedIndex(f"digit {digit} outside 1..{self.base}")
            code = code * self.base + (digit - 1)
        if code >= self.n:
            raise MalformedIndex(f"code {code} names no element of 1..{self.n}")
        return code + 1

    def digit(self, element: int, coordinate: int) -> int:
        if not 1 <= coordinate <= self.width:
            raise PreconditionViolated(f"coordinate {coordinate} outside 1..{self.width}")
        code = element - 1
        return (code // self.base ** (self.width - coordinate)) % self.base + 1


class VectorFamily(QuestionFamily):
    """Per-coordinate equality and less-than questions on the digit code.

    The member count follows the closed form width*(2*base-3): per coordinate,
    equalities for every digit value plus comparisons "digit < v" for
    v in 3..base-1 ("< 1" is empty, "< 2" duplicates "= 1", and "< base" is
    the complement of "= base"; in base 2 a single class remains).
    `contains` accepts any entry-wise question equivalent to a member up to
    complementation within its coordinate.
    """

    def __init__(self, n: int, width: int):
        if n < 2:
            raise PreconditionViolated("the family needs n >= 2")
        if width < 2:
            raise PreconditionViolated(
                "width 1 degenerates to the comparison/equality family; use that"
            )
        self.n = n
        self.width = width
        self.codec = VectorCodec(n, width)
        self.description = (
            f"entry-wise questions on {width}-digit base-{self.codec.base} codes"
        )

    def __len__(self) -> int:
        return self.width * (2 * self.codec.base - 3)

    def __iter__(self) -> Iterator[Question]:
        base = self.codec.base
        for coordinate in range(1, self.width + 1):
            if base == 2:
                yield Question(self.n, EntryWise(coordinate, "eq", 1, self.width))
                continue
            for value in range(1, base + 1):
                yield Question(self.n, EntryWise(coordinate, "eq", value, self.width))
            for value in range(3, base):
                yield Question(self.n, EntryWise(coordinate, "lt", value, self.width))

    def contains(self, question: Question) -> bool:
        if question.n != self.n:
            return False
        kind = question.kind
        if not isinstance(kind, EntryWise) or kind.width != self.width:
            return False
        if not 1 <= kind.coordinate <= self.width:
            return False
        base = self.codec.base
        if kind.relation == "eq":
            return 1 <= kind.value <= base
        # "< 2" = "= 1" and "< base" = complement of "= base" are members' classes
        return 2 <= kind.value <= base


def vector_family(n: int, r: object) -> QuestionFamily:
    """The question family for redundancy budget r; floor(r) = 1 degenerates
    to the comparison/equality family."""
    width = _width_from_budget(r)
    if width == 1:
        return comparison_equality_family(n)
    return VectorFamily(n, width)


def vector_family_size(n: int, r: object) -> int:
    family = vector_family(n, r)
    return len(family)


def build_vector_tree(
    dist: Distribution, r: object, params: Union[AtParams, None] = None
) -> DecisionTree:
    """Build the digit-by-digit tree for redundancy budget r >= 1.

    Runs the threshold strategy on the digit distribution of one coordinate
    at a time; coordinates on which every surviving candidate agrees are
    skipped without a question.  Expected cost is at most H(dist) + floor(r).
    """
    width = _width_from_budget(r)
    params = params or AtParams()
    if width == 1:
        return build_at_tree(dist, params)
    codec = VectorCodec(dist.n, width)
    t = params.t
    n = dist.n
    items, _ = _support_items(dist)

    def expand(task: object) -> Union[Leaf, tuple[Question, object, object]]:
        coordinate, current, total = task  # type: ignore[misc]
        if len(current) == 1:
            return Leaf(current[0][0])
        # group the candidates by the current digit; skip settled coordinates
        while True:
            classes: dict[int, list[tuple[int, int]]] = {}
            for element, weight in current:
                classes.setdefault(codec.digit(element, coordinate), []).append(
                    (element, weight)
                )
            if len(classes) > 1:
                break
            coordinate += 1
            assert coordinate <= width, "distinct elements must differ in some digit"
        values = sorted(classes)
        class_items = tuple((v, sum(w for _, w in classes[v])) for v in values)
        decision = _threshold_decision(class_items, total, t)
        assert decision[0] != LEAF
        if decision[0] == FAVORITE:
            value = class_items[decision[1]][0]
            inside = tuple(classes[value])
            inside_total = class_items[decision[1]][1]
            outside = tuple(
                it for it in current if codec.digit(it[0], coordinate) != value
            )
            return (
                Question(n, EntryWise(coordinate, "eq", value, width)),
                (coordinate + 1, inside, inside_total),
                (coordinate, outside, total - inside_total),
            )
        cut_value = class_items[decision[1]][0]
        below = tuple(it for it in current if codec.digit(it[0], coordinate) < cut_value)
        below_total = sum(w for _, w in below)
        above = tuple(it for it in current if codec.digit(it[0], coordinate) >= cut_value)
        return (
            Question(n, EntryWise(coordinate, "lt", cut_value, width)),
            (coordinate, below, below_total),
            (coordinate, above, total - below_total),
        )

    total = sum(w for _, w in items)
    return DecisionTree(n, build_tree_iteratively((1, items, total), expand))
