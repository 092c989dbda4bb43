"""The cone strategy: exactly optimal trees from a tiny structured family.

Fix the pivot block S = {x_1..x_p} with p = n//2.  The cone of S is every
subset of S together with every superset of S: 2^p + 2^(n-p) - 1 sets.  For
any distribution, a tree asking only cone questions can match the Huffman
cost exactly: starting from the Huffman measure (weight 2^-depth), some cone
member always splits the remaining mass exactly in half, found in O(n) by a
prefix scan of the heavier side.

Cone members are indexed by ceil(n/2)+1 bits: a leading bit choosing the
subset/superset side and one bit per free coordinate.
"""

from __future__ import annotations

from typing import Iterator, Sequence, Union

from .core import (
    ConeMember,
    DecisionTree,
    Distribution,
    Leaf,
    Question,
    QuestionFamily,
    build_tree_iteratively,
)
from .errors import (
    InconsistentAnswers,
    MalformedIndex,
    PreconditionViolated,
    WrongState,
)
from .huffman import huffman


def pivot_size(n: int) -> int:
    """|S| for the pivot block S = {x_1..x_p}."""
    return n // 2


class ConeFamily(QuestionFamily):
    """All subsets and supersets of the pivot block.

    Not closed under complementation, so `contains` checks the question as
    asked: its set must be inside the pivot block or must cover it.
    Iteration enumerates subsets first (by increasing bit mask), then proper
    supersets; practical only for small n.
    """

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionViolated("the family needs n >= 1")
        self.n = n
        self.pivot = pivot_size(n)
        self.description = f"cone of the pivot block x_1..x_{self.pivot} on {n} elements"

    def __len__(self) -> int:
        p = self.pivot
        return 2**p + 2 ** (self.n - p) - 1

    def __iter__(self) -> Iterator[Question]:
        p = self.pivot
        for mask in range(2**p):
            members = frozenset(i + 1 for i in range(p) if mask >> i & 1)
            yield Question(self.n, ConeMember(False, members))
        for mask in range(1, 2 ** (self.n - p)):
            extra = frozenset(p + 1 + i for i in range(self.n - p) if mask >> i & 1)
            yield Question(self.n, ConeMember(True, extra))

    def contains(self, question: Question) -> bool:
        if question.n != self.n:
            return False
        if isinstance(question.kind, ConeMember):
            return True  # construction already constrains the free elements
        s_mask = (1 << self.pivot) - 1
        bits = question.bits
        return (bits & s_mask) == bits or (bits & s_mask) == s_mask


def cone_family(n: int) -> ConeFamily:
    return ConeFamily(n)


def cone_membership(index_bits: Sequence[int], x: int, n: int) -> bool:
    """Decode a packed cone-member index and test whether x is in the set.

    The index has ceil(n/2)+1 bits: bit 0 picks the side (0: subset of the
    pivot block, 1: superset), the rest select free coordinates.  On the
    subset side only the first n//2 free bits are meaningful; a set bit
    beyond them is malformed.
    """
    expected = (n + 1) // 2 + 1
    if len(index_bits) != expected:
        raise MalformedIndex(
            f"index must have {expected} bits for n={n}, got {len(index_bits)}"
        )
    if any(b not in (0, 1) for b in index_bits):
        raise MalformedIndex("index bits must be 0 or 1")
    if not 1 <= x <= n:
        raise PreconditionViolated(f"element {x} outside 1..{n}")
    superset_side = bool(index_bits[0])
    free_bits = index_bits[1:]
    p = pivot_size(n)
    if superset_side:
        free = frozenset(p + 1 + i for i, b in enumerate(free_bits) if b)
    else:
        if any(free_bits[p:]):
            raise MalformedIndex(
                f"subset-side index uses only the first {p} free bits for n={n}"
            )
        free = frozenset(i + 1 for i, b in enumerate(free_bits[:p]) if b)
    return Question(n, ConeMember(superset_side, free)).contains(x)


# ---------------------------------------------------------------------------
# The halving recursion
# ---------------------------------------------------------------------------
#
# State: candidates as (exponent, element) pairs, sorted by (exponent,
# element), meaning mass 2^-exponent under the maintained measure.  At every
# node the masses total exactly a power of two, and each question carves off
# exactly half, so every element ends at depth equal to its initial Huffman
# exponent: the tree cost equals the Huffman cost exactly.

ConeItems = tuple[tuple[int, int], ...]


def _prefix_to_half(sub_items: ConeItems, scale_exp: int, half: int) -> ConeItems:
    """The shortest prefix of a mass-sorted item list with scaled mass exactly `half`.

    Exists whenever the list is non-increasing in mass, totals at least half,
    and each mass is at most half: prefix sums of such a dyadic list cannot
    jump over a multiple of the current weight.
    """
    acc = 0
    for i, (exponent, _) in enumerate(sub_items):
        acc += 1 << (scale_exp - exponent)
        if acc == half:
            return sub_items[: i + 1]
        if acc > half:
            break
    raise AssertionError("dyadic prefix missed the half mark; measure corrupted")


def _cone_split(items: ConeItems, n: int) -> tuple[Question, ConeItems, ConeItems]:
    """One exact halving question for the current candidates."""
    scale_exp = items[-1][0]  # the largest exponent = the smallest mass
    total = sum(1 << (scale_exp - e) for e, _ in items)
    assert total == 1 << scale_exp, "candidate mass must total a power of two"
    half = 1 << (scale_exp - 1)
    p = pivot_size(n)
    pivot_mass = sum(1 << (scale_exp - e) for e, el in items if el <= p)

    if pivot_mass >= half:
        chosen = _prefix_to_half(
            tuple(it for it in items if it[1] <= p), scale_exp, half
        )
        yes_elements = frozenset(el for _, el in chosen)
        kind = ConeMember(False, yes_elements)
    else:
        # The complement side holds more than half; carve the no side there and
        # ask the complemented (superset-of-pivot) question.  Equal masses are
        # carved from the highest index down, so in both branches the asked set
        # keeps the earliest elements.
        outside = sorted(
            (it for it in items if it[1] > p), key=lambda it: (it[0], -it[1])
        )
        chosen = _prefix_to_half(tuple(outside), scale_exp, half)
        no_elements = frozenset(el for _, el in chosen)
        kind = ConeMember(
            True,
            frozenset(el for _, el in items if el > p and el not in no_elements),
        )
        yes_elements = frozenset(el for _, el in items if el not in no_elements)

    question = Question(n, kind)
    yes_items = tuple((e - 1, el) for e, el in items if el in yes_elements)
    no_items = tuple((e - 1, el) for e, el in items if el not in yes_elements)
    assert yes_items and no_items
    return question, yes_items, no_items


def _initial_items(dist: Distribution) -> ConeItems:
    measure = huffman(dist).dyadic
    return tuple(
        sorted((measure.exponents[el - 1], el) for el in measure.support)
    )


def cone_optimal_tree(dist: Distribution) -> DecisionTree:
    """A tree of cone questions whose cost equals the Huffman optimum exactly."""
    items = _initial_items(dist)

    def expand(task: object) -> Union[Leaf, tuple[Question, object, object]]:
        current: ConeItems = task  # type: ignore[assignment]
        if len(current) == 1:
            return Leaf(current[0][1])
        question, yes_items, no_items = _cone_split(current, dist.n)
        return question, yes_items, no_items

    return DecisionTree(dist.n, build_tree_iteratively(items, expand))


class ConeStepper:
    """Interactive cone play: serves one halving question at a time.

    After O(n log n) setup, each question costs O(n): the candidate list stays
    sorted by mass because every update decrements all surviving exponents
    equally.
    """

    def __init__(self, dist: Distribution):
        self.n = dist.n
        self.asked = 0
        self._items = _initial_items(dist)
        self._pending: Union[tuple[Question, ConeItems, ConeItems], None] = None

    @property
    def done(self) -> bool:
        return len(self._items) == 1

    @property
    def result(self) -> Union[int, None]:
        return self._items[0][1] if self.done else None

    def question(self) -> Question:
        if self.done:
            raise WrongState("the game is over; no further questions")
        if self._pending is None:
            self._pending = _cone_split(self._items, self.n)
        return self._pending[0]

    def answer(self, yes: bool) -> None:
        if self.done:
            raise WrongState("the game is over; cannot accept answers")
        if self._pending is None:
            self._pending = _cone_split(self._items, self.n)
        _, yes_items, no_items = self._pending
        survivors = yes_items if yes else no_items
        if not survivors:
            raise InconsistentAnswers("the answers rule out every element")
        self._items = survivors
        self._pending = None
        self.asked += 1

    def candidates(self) -> tuple[int, ...]:
        return tuple(sorted(el for _, el in self._items))


def cone_online(dist: Distribution) -> ConeStepper:
    """A stepper that plays the exactly-optimal cone strategy interactively."""
    return ConeStepper(dist)
