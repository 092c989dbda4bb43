"""Distributions, questions, decision trees, and exact-arithmetic primitives.

Conventions used throughout the package:

- The domain is the ordered set x_1 < x_2 < ... < x_n; elements are named by
  their 1-based index everywhere in the public interface.
- Probability weights are exact ``fractions.Fraction`` values.  Binary64
  floats appear only where logarithms are unavoidable (entropy), never in
  masses, costs, or splitting decisions.
- A question is a subset A of the domain, asked as "is the secret in A?".
  Questions carry a structured descriptor (`kind`) so that very large sets
  can be stored and tested for membership without materializing the set.
- Two questions that are complements of each other convey the same
  information.  Where a single canonical side is needed, we use the side
  that does not contain x_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import (
    BadDistribution,
    PreconditionViolated,
    SecretNotInTree,
    TreeInvalid,
)

#: Question renders and JSON payloads list elements explicitly up to this size.
RENDER_LIMIT = 12

#: Denominator used when float weight vectors are snapped to exact rationals.
FLOAT_SNAP_DENOMINATOR = 2**32


def _as_fraction(value: object) -> Fraction:
    """Coerce ints, strings like "1/2", and Fractions; reject floats.

    Floats are rejected on purpose: ``Fraction(0.1)`` is the exact binary64
    value, which is almost never what a caller meant.  Use
    :meth:`Distribution.from_floats` for float data.
    """
    if isinstance(value, float):
        raise BadDistribution(
            "refusing to convert a float weight exactly; use Distribution.from_floats"
        )
    try:
        return Fraction(value)  # type: ignore[arg-type]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadDistribution(f"cannot read {value!r} as a rational weight") from exc


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Distribution:
    """An exact probability distribution over the ordered domain {x_1..x_n}.

    Weights may be zero; the support is the set of elements with positive
    weight.  Weights must sum to exactly 1.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        weights = tuple(_as_fraction(w) for w in self.weights)
        if not weights:
            raise BadDistribution("a distribution needs at least one element")
        if any(w < 0 for w in weights):
            raise BadDistribution("weights must be non-negative")
        total = sum(weights)
        if total != 1:
            raise BadDistribution(f"weights must sum to 1, got {total}")
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, w in enumerate(self.weights) if w > 0)

    def weight(self, element: int) -> Fraction:
        if not 1 <= element <= self.n:
            raise PreconditionViolated(f"element {element} outside 1..{self.n}")
        return self.weights[element - 1]

    def conditioned_on(self, elements: Iterable[int]) -> "Distribution":
        """The conditional distribution given that the secret lies in `elements`.

        The result keeps the full domain; weights outside `elements` become 0.
        """
        keep = set(elements)
        mass = sum(self.weights[e - 1] for e in keep)
        if mass <= 0:
            raise BadDistribution("conditioning event has zero probability")
        return Distribution(
            tuple(
                (w / mass if (i + 1) in keep else Fraction(0))
                for i, w in enumerate(self.weights)
            )
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, *weights: object) -> "Distribution":
        return cls(tuple(_as_fraction(w) for w in weights))

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        if n < 1:
            raise BadDistribution("n must be at least 1")
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def point_mass(cls, n: int, element: int) -> "Distribution":
        if not 1 <= element <= n:
            raise BadDistribution(f"element {element} outside 1..{n}")
        return cls(tuple(Fraction(1 if i + 1 == element else 0) for i in range(n)))

    @classmethod
    def from_floats(
        cls, values: Sequence[float], denominator: int = FLOAT_SNAP_DENOMINATOR
    ) -> "Distribution":
        """Snap a float weight vector to exact rationals.

        Each value is rounded to a multiple of 1/denominator and the result is
        renormalized exactly.  Values that round to zero drop out of the
        support, which is fine: strategies operate on the support.
        """
        if denominator < 1:
            raise BadDistribution("denominator must be positive")
        if not values:
            raise BadDistribution("a distribution needs at least one element")
        if any(v < 0 or not math.isfinite(v) for v in values):
            raise BadDistribution("float weights must be finite and non-negative")
        snapped = [Fraction(round(v * denominator), denominator) for v in values]
        total = sum(snapped)
        if total <= 0:
            raise BadDistribution("all weights rounded to zero")
        return cls(tuple(w / total for w in snapped))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "weights": [str(w) for w in self.weights]}

    @classmethod
    def from_json(cls, obj: dict) -> "Distribution":
        if not isinstance(obj, dict):
            raise BadDistribution("distribution JSON must be an object")
        try:
            if "dyadic_exponents" in obj:
                exponents = obj["dyadic_exponents"]
                if not isinstance(exponents, list):
                    raise BadDistribution("dyadic_exponents must be a list")
                measure = DyadicMeasure(
                    tuple(None if e is None else int(e) for e in exponents)
                )
                dist = measure.to_distribution()
            elif "weights" in obj:
                if not isinstance(obj["weights"], list):
                    raise BadDistribution("weights must be a list")
                dist = cls(tuple(_as_fraction(w) for w in obj["weights"]))
            else:
                raise BadDistribution(
                    "distribution JSON needs 'weights' or 'dyadic_exponents'"
                )
            if "n" in obj and int(obj["n"]) != dist.n:
                raise BadDistribution(
                    f"stated n={obj['n']} does not match {dist.n} weights"
                )
        except (TypeError, ValueError) as exc:
            raise BadDistribution(f"malformed distribution JSON: {exc}") from exc
        return dist


@dataclass(frozen=True)
class DyadicMeasure:
    """A sub-distribution whose weights are zero or powers of two.

    ``exponents[i]`` is the exponent a of weight(x_{i+1}) = 2^-a, or None for
    weight zero.  The total may be any value in (0, 1]; a measure with total
    exactly 1 is a dyadic distribution.
    """

    exponents: tuple[Union[int, None], ...]

    def __post_init__(self) -> None:
        exponents = tuple(self.exponents)
        if not exponents:
            raise BadDistribution("a measure needs at least one element")
        for e in exponents:
            if e is None:
                continue
            if not isinstance(e, int) or e < 0:
                raise BadDistribution(f"exponent {e!r} must be None or an integer >= 0")
        object.__setattr__(self, "exponents", exponents)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, e in enumerate(self.exponents) if e is not None)

    def weight(self, element: int) -> Fraction:
        if not 1 <= element <= self.n:
            raise PreconditionViolated(f"element {element} outside 1..{self.n}")
        e = self.exponents[element - 1]
        return Fraction(0) if e is None else Fraction(1, 2**e)

    @cached_property
    def total(self) -> Fraction:
        return sum((self.weight(e) for e in self.support), Fraction(0))

    @property
    def is_distribution(self) -> bool:
        return self.total == 1

    def entropy_exact(self) -> Fraction:
        """Entropy in bits as an exact rational; defined for dyadic distributions."""
        if not self.is_distribution:
            raise PreconditionViolated("exact entropy needs a total of exactly 1")
        return sum(
            (Fraction(e, 2**e) for e in self.exponents if e is not None), Fraction(0)
        )

    def to_distribution(self) -> Distribution:
        dist = Distribution(
            tuple(
                Fraction(0) if e is None else Fraction(1, 2**e)
                for e in self.exponents
            )
        )
        return dist

    @classmethod
    def from_distribution(cls, dist: Distribution) -> "DyadicMeasure":
        exponents: list[Union[int, None]] = []
        for w in dist.weights:
            if w == 0:
                exponents.append(None)
            elif w.numerator == 1 and (w.denominator & (w.denominator - 1)) == 0:
                exponents.append(w.denominator.bit_length() - 1)
            else:
                raise BadDistribution(f"weight {w} is not a power of two")
        return cls(tuple(exponents))


# ---------------------------------------------------------------------------
# Questions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Equality:
    """Asks: is x = x_element?"""

    element: int


@dataclass(frozen=True)
class Comparison:
    """Asks: is x < x_element, strictly earlier in the domain order?"""

    element: int


@dataclass(frozen=True)
class EntryWise:
    """Asks about one digit of the fixed-width positional code of x.

    Elements 1..n are encoded as `width`-digit numbers in the smallest base b
    with b^width >= n, most significant digit first, digits written 1..b.
    The question compares digit `coordinate` with `value` using `relation`
    ("eq" or "lt").
    """

    coordinate: int
    relation: str
    value: int
    width: int


@dataclass(frozen=True)
class ConeMember:
    """A subset of the pivot block {x_1..x_p}, or a superset of it (p = n//2).

    On the subset side, `free` lists the chosen elements inside the pivot
    block; on the superset side, `free` lists the chosen elements outside it
    (the set is the whole pivot block plus those).
    """

    superset_side: bool
    free: frozenset[int]


@dataclass(frozen=True)
class CyclicQuestion:
    """A cyclic interval of the domain, with a few elements added or removed.

    The interval runs from x_start to x_end inclusive in the cyclic order
    x_1, x_2, ..., x_n, x_1 (wrapping when start > end).  start=end=None
    is the empty interval.  The resolved set is (interval + added) - removed.
    """

    start: Union[int, None]
    end: Union[int, None]
    added: frozenset[int]
    removed: frozenset[int]


@dataclass(frozen=True)
class Explicit:
    """An arbitrary subset of the domain, given outright."""

    members: frozenset[int]


QuestionKind = Union[Equality, Comparison, EntryWise, ConeMember, CyclicQuestion, Explicit]


def smallest_base(n: int, width: int) -> int:
    """The smallest base b >= 1 with b**width >= n."""
    if n < 1 or width < 1:
        raise PreconditionViolated("need n >= 1 and width >= 1")
    b = max(1, round(n ** (1.0 / width)))
    while b**width >= n and b > 1:
        b -= 1
    while b**width < n:
        b += 1
    return b


def _digit(element: int, coordinate: int, width: int, base: int) -> int:
    """Digit `coordinate` (1-based, most significant first) of element's code, in 1..base."""
    code = element - 1
    shift = width - coordinate
    return (code // base**shift) % base + 1


def _interval_mask(n: int, start: int, end: int) -> int:
    """Bit mask of the cyclic interval x_start..x_end inclusive (bit i-1 = x_i)."""
    if start <= end:
        return ((1 << end) - 1) ^ ((1 << (start - 1)) - 1)
    return (((1 << n) - 1) ^ ((1 << (start - 1)) - 1)) | ((1 << end) - 1)


def _set_text(elements: Iterable[int]) -> str:
    return "{" + ", ".join(f"x_{e}" for e in sorted(elements)) + "}"


@dataclass(frozen=True)
class Question:
    """A yes/no question "is the secret in this subset of x_1..x_n?"."""

    n: int
    kind: QuestionKind

    def __post_init__(self) -> None:
        k = self.kind
        n = self.n
        if n < 1:
            raise PreconditionViolated("questions need a domain of size >= 1")
        if isinstance(k, (Equality, Comparison)):
            if not 1 <= k.element <= n:
                raise PreconditionViolated(f"element {k.element} outside 1..{n}")
        elif isinstance(k, EntryWise):
            if k.relation not in ("eq", "lt"):
                raise PreconditionViolated(f"unknown relation {k.relation!r}")
            if k.coordinate < 1 or k.coordinate > k.width:
                raise PreconditionViolated("coordinate outside 1..width")
            if k.value < 1:
                raise PreconditionViolated("digit values are 1-based")
        elif isinstance(k, ConeMember):
            p = n // 2
            lo, hi = (p + 1, n) if k.superset_side else (1, p)
            for e in k.free:
                if not lo <= e <= hi:
                    raise PreconditionViolated(
                        f"free element x_{e} outside the {'complement' if k.superset_side else 'pivot'}"
                        f" block x_{lo}..x_{hi}"
                    )
        elif isinstance(k, CyclicQuestion):
            if (k.start is None) != (k.end is None):
                raise PreconditionViolated("start and end must both be set or both None")
            if k.start is not None and not (1 <= k.start <= n and 1 <= k.end <= n):
                raise PreconditionViolated("interval endpoints outside 1..n")
            for e in k.added | k.removed:
                if not 1 <= e <= n:
                    raise PreconditionViolated(f"adjusted element x_{e} outside 1..{n}")
        elif isinstance(k, Explicit):
            for e in k.members:
                if not 1 <= e <= n:
                    raise PreconditionViolated(f"member x_{e} outside 1..{n}")
        else:
            raise PreconditionViolated(f"unknown question kind {type(k).__name__}")

    # -- membership ---------------------------------------------------------

    def contains(self, element: int) -> bool:
        if not 1 <= element <= self.n:
            raise PreconditionViolated(f"element {element} outside 1..{self.n}")
        k = self.kind
        if isinstance(k, Equality):
            return element == k.element
        if isinstance(k, Comparison):
            return element < k.element
        if isinstance(k, EntryWise):
            base = smallest_base(self.n, k.width)
            digit = _digit(element, k.coordinate, k.width, base)
            return digit == k.value if k.relation == "eq" else digit < k.value
        if isinstance(k, ConeMember):
            if k.superset_side:
                return element <= self.n // 2 or element in k.free
            return element in k.free
        if isinstance(k, CyclicQuestion):
            if element in k.removed:
                return False
            if element in k.added:
                return True
            if k.start is None:
                return False
            if k.start <= k.end:  # type: ignore[operator]
                return k.start <= element <= k.end  # type: ignore[operator]
            return element >= k.start or element <= k.end  # type: ignore[operator]
        assert isinstance(k, Explicit)
        return element in k.members

    @property
    def size(self) -> int:
        """|A| computed from the descriptor, without scanning the domain."""
        k = self.kind
        n = self.n
        if isinstance(k, Equality):
            return 1
        if isinstance(k, Comparison):
            return k.element - 1
        if isinstance(k, EntryWise):
            base = smallest_base(n, k.width)
            span = base ** (k.width - k.coordinate)
            period = span * base
            if k.relation == "eq":
                lo, hi = (k.value - 1) * span, k.value * span
            else:
                lo, hi = 0, (k.value - 1) * span
            full, rest = divmod(n, period)
            return full * (hi - lo) + min(max(rest - lo, 0), hi - lo)
        if isinstance(k, ConeMember):
            return (n // 2 if k.superset_side else 0) + len(k.free)
        if isinstance(k, CyclicQuestion):
            if k.start is None:
                mask = 0
            else:
                mask = _interval_mask(n, k.start, k.end)  # type: ignore[arg-type]
            size = mask.bit_count()
            size += sum(1 for e in k.added if not mask >> (e - 1) & 1)
            size -= sum(1 for e in k.removed if (mask >> (e - 1) & 1) or e in k.added)
            return size
        assert isinstance(k, Explicit)
        return len(k.members)

    @cached_property
    def bits(self) -> int:
        """The subset as an integer bit set (bit i-1 set iff x_i is in it)."""
        k = self.kind
        n = self.n
        if isinstance(k, Equality):
            return 1 << (k.element - 1)
        if isinstance(k, Comparison):
            return (1 << (k.element - 1)) - 1
        if isinstance(k, ConeMember):
            base_mask = (1 << (n // 2)) - 1 if k.superset_side else 0
            for e in k.free:
                base_mask |= 1 << (e - 1)
            return base_mask
        if isinstance(k, CyclicQuestion):
            mask = 0 if k.start is None else _interval_mask(n, k.start, k.end)  # type: ignore[arg-type]
            for e in k.added:
                mask |= 1 << (e - 1)
            for e in k.removed:
                mask &= ~(1 << (e - 1))
            return mask
        if isinstance(k, Explicit):
            mask = 0
            for e in k.members:
                mask |= 1 << (e - 1)
            return mask
        # EntryWise: scan; O(n) but only used for rendering and small-n analysis
        mask = 0
        for e in range(1, n + 1):
            if self.contains(e):
                mask |= 1 << (e - 1)
        return mask

    def elements(self) -> tuple[int, ...]:
        bits = self.bits
        return tuple(i + 1 for i in range(self.n) if bits >> i & 1)

    @cached_property
    def canonical_bits(self) -> int:
        """The side of the question that does not contain x_n, as a bit set.

        Complementary questions convey the same information; this gives both
        the same key.
        """
        full = (1 << self.n) - 1
        return (self.bits ^ full) if self.contains(self.n) else self.bits

    def complemented(self) -> "Question":
        full = (1 << self.n) - 1
        comp = self.bits ^ full
        return Question(
            self.n,
            Explicit(frozenset(i + 1 for i in range(self.n) if comp >> i & 1)),
        )

    # -- presentation -------------------------------------------------------

    def render(self) -> str:
        k = self.kind
        if isinstance(k, Equality):
            return f"Is x = x_{k.element}?"
        if isinstance(k, Comparison):
            return f"Is x < x_{k.element}?"
        if isinstance(k, EntryWise):
            rel = "equal to" if k.relation == "eq" else "less than"
            return (
                f"Is digit {k.coordinate} of x's {k.width}-digit code {rel} {k.value}?"
            )
        if self.size <= RENDER_LIMIT:
            return f"Is x one of {_set_text(self.elements())}?"
        if isinstance(k, ConeMember):
            p = self.n // 2
            if k.superset_side:
                return (
                    f"Is x in the pivot block x_1..x_{p} or one of "
                    f"{len(k.free)} chosen later elements?"
                )
            return f"Is x one of {len(k.free)} chosen elements of the pivot block x_1..x_{p}?"
        if isinstance(k, CyclicQuestion):
            if k.start is None:
                text = f"Is x one of the {len(k.added)} listed elements"
            else:
                text = f"Is x in the cyclic range x_{k.start}..x_{k.end}"
                if k.added:
                    text += f" plus {len(k.added)} listed elements"
                if k.removed:
                    text += f" minus {len(k.removed)} listed elements"
            return text + "?"
        return f"Is x in a given set of {self.size} elements?"


def question_to_json(question: Question) -> dict:
    k = question.kind
    obj: dict = {"render": question.render()}
    if isinstance(k, Equality):
        obj.update(kind="equality", element=k.element)
    elif isinstance(k, Comparison):
        obj.update(kind="comparison", element=k.element)
    elif isinstance(k, EntryWise):
        obj.update(
            kind="entrywise",
            coordinate=k.coordinate,
            relation=k.relation,
            value=k.value,
            width=k.width,
        )
    elif isinstance(k, ConeMember):
        obj.update(kind="cone", superset_side=k.superset_side, free=sorted(k.free))
    elif isinstance(k, CyclicQuestion):
        obj.update(
            kind="cyclic",
            start=k.start,
            end=k.end,
            added=sorted(k.added),
            removed=sorted(k.removed),
        )
    else:
        assert isinstance(k, Explicit)
        obj.update(kind="explicit", members=sorted(k.members))
    if question.size <= RENDER_LIMIT:
        obj["elements"] = list(question.elements())
    return obj


def question_from_json(obj: dict, n: int) -> Question:
    if not isinstance(obj, dict):
        raise PreconditionViolated("question JSON must be an object")
    kind_name = obj.get("kind")
    try:
        if kind_name == "equality":
            kind: QuestionKind = Equality(int(obj["element"]))
        elif kind_name == "comparison":
            kind = Comparison(int(obj["element"]))
        elif kind_name == "entrywise":
            kind = EntryWise(
                int(obj["coordinate"]), str(obj["relation"]), int(obj["value"]), int(obj["width"])
            )
        elif kind_name == "cone":
            kind = ConeMember(bool(obj["superset_side"]), frozenset(int(e) for e in obj["free"]))
        elif kind_name == "cyclic":
            start = obj.get("start")
            end = obj.get("end")
            kind = CyclicQuestion(
                None if start is None else int(start),
                None if end is None else int(end),
                frozenset(int(e) for e in obj.get("added", [])),
                frozenset(int(e) for e in obj.get("removed", [])),
            )
        elif kind_name == "explicit":
            kind = Explicit(frozenset(int(e) for e in obj["members"]))
        else:
            raise PreconditionViolated(f"unknown question kind {kind_name!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionViolated(f"malformed question JSON: {exc}") from exc
    return Question(n, kind)


# ---------------------------------------------------------------------------
# Question families
# ---------------------------------------------------------------------------


class QuestionFamily:
    """A set of allowed questions over a fixed domain.

    Iteration yields one representative per complementation class when the
    family is closed under complements.  ``contains`` follows each family's
    own convention, documented on the class: families closed under
    complementation accept either side of a member.
    """

    n: int
    description: str = "unrestricted"

    def __iter__(self) -> Iterator[Question]:
        raise NotImplementedError

    def __len__(self) -> int:
        raise NotImplementedError

    def contains(self, question: Question) -> bool:
        raise NotImplementedError


class ExplicitFamily(QuestionFamily):
    """A finite family given by an explicit list; membership is up to complementation."""

    def __init__(self, n: int, questions: Iterable[Question], description: str = "explicit family"):
        self.n = n
        self.questions = tuple(questions)
        for q in self.questions:
            if q.n != n:
                raise PreconditionViolated("family questions must share the domain size")
        self.description = description
        self._canonical = {q.canonical_bits for q in self.questions}

    def __iter__(self) -> Iterator[Question]:
        return iter(self.questions)

    def __len__(self) -> int:
        return len(self.questions)

    def contains(self, question: Question) -> bool:
        return question.n == self.n and question.canonical_bits in self._canonical


# ---------------------------------------------------------------------------
# Decision trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    element: int


@dataclass(frozen=True)
class Internal:
    question: Question
    yes: "Node"
    no: "Node"


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class DecisionTree:
    """A binary decision tree; every internal node asks a question, leaves name elements.

    A tree with a single leaf asks no questions (the n=1 case, cost zero).
    """

    n: int
    root: Node

    def leaves_with_depths(self) -> Iterator[tuple[int, int]]:
        stack: list[tuple[Node, int]] = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if isinstance(node, Leaf):
                yield node.element, depth
            else:
                stack.append((node.no, depth + 1))
                stack.append((node.yes, depth + 1))

    def internal_nodes(self) -> Iterator[tuple[Internal, int]]:
        stack: list[tuple[Node, int]] = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if isinstance(node, Internal):
                yield node, depth
                stack.append((node.no, depth + 1))
                stack.append((node.yes, depth + 1))

    def depths(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for element, depth in self.leaves_with_depths():
            out[element] = depth
        return out

    @property
    def question_count(self) -> int:
        return sum(1 for _ in self.internal_nodes())

    @property
    def max_depth(self) -> int:
        return max(d for _, d in self.leaves_with_depths())

    def to_json(self) -> dict:
        def encode(node: Node) -> dict:
            if isinstance(node, Leaf):
                return {"leaf": node.element}
            return {
                "q": question_to_json(node.question),
                "yes": encode(node.yes),
                "no": encode(node.no),
            }

        return encode(self.root)

    @classmethod
    def from_json(cls, obj: dict, n: int) -> "DecisionTree":
        def decode(o: dict) -> Node:
            if "leaf" in o:
                return Leaf(int(o["leaf"]))
            return Internal(
                question_from_json(o["q"], n), decode(o["yes"]), decode(o["no"])
            )

        return cls(n, decode(obj))


def build_tree_iteratively(
    root_task: object,
    expand: Callable[[object], Union[Leaf, tuple[Question, object, object]]],
) -> Node:
    """Materialize a tree without recursion.

    ``expand(task)`` returns either a finished Leaf, or a triple
    (question, yes_task, no_task) to be expanded further.  Used by the
    strategy builders so that very deep trees cannot hit the interpreter
    recursion limit.
    """
    frames: list[list] = []  # [question, yes_ref, no_ref]
    root_ref: object = None
    pending: list[tuple[int, int, object]] = [(-1, 0, root_task)]
    while pending:
        parent, slot, task = pending.pop()
        result = expand(task)
        if isinstance(result, Leaf):
            ref: tuple = ("leaf", result)
        else:
            question, yes_task, no_task = result
            frames.append([question, None, None])
            index = len(frames) - 1
            ref = ("frame", index)
            pending.append((index, 1, yes_task))
            pending.append((index, 2, no_task))
        if parent < 0:
            root_ref = ref
        else:
            frames[parent][slot] = ref

    built: list[Union[Node, None]] = [None] * len(frames)

    def resolve(ref: tuple) -> Node:
        tag, value = ref
        if tag == "leaf":
            return value
        node = built[value]
        assert node is not None
        return node

    # children always have larger frame indices than their parents
    for i in range(len(frames) - 1, -1, -1):
        question, yes_ref, no_ref = frames[i]
        built[i] = Internal(question, resolve(yes_ref), resolve(no_ref))
    return resolve(root_ref)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Transcripts and simulation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TranscriptEntry:
    question: Question
    answer: bool


@dataclass(frozen=True)
class Transcript:
    """The record of one identification game: questions, answers, and the result."""

    entries: tuple[TranscriptEntry, ...]
    result: Union[int, None]

    @property
    def length(self) -> int:
        return len(self.entries)


def simulate(tree: DecisionTree, secret: int) -> Transcript:
    """Play the tree against a fixed secret, answering every question honestly."""
    if not any(element == secret for element, _ in tree.leaves_with_depths()):
        raise SecretNotInTree(f"x_{secret} labels no leaf of the tree")
    entries: list[TranscriptEntry] = []
    node = tree.root
    while isinstance(node, Internal):
        answer = node.question.contains(secret)
        entries.append(TranscriptEntry(node.question, answer))
        node = node.yes if answer else node.no
    if node.element != secret:
        raise TreeInvalid(
            f"honest answers for x_{secret} led to leaf x_{node.element}; tree is inconsistent"
        )
    return Transcript(tuple(entries), node.element)


# ---------------------------------------------------------------------------
# Costs, entropy, validation
# ---------------------------------------------------------------------------


def tree_cost(tree: DecisionTree, dist: Distribution) -> Fraction:
    """Expected number of questions: sum of weight(x) * depth(x) over the support."""
    depths = tree.depths()
    missing = [e for e in dist.support if e not in depths]
    if missing:
        raise TreeInvalid(f"support elements {missing} label no leaf")
    return sum(
        (dist.weight(e) * depths[e] for e in dist.support), Fraction(0)
    )


def entropy(dist: Distribution) -> float:
    """Shannon entropy in bits (binary64; exact arithmetic is impossible here)."""
    terms = []
    for e in dist.support:
        w = dist.weight(e)
        # log2(1/w) via integer logs; robust for very small weights
        terms.append(float(w) * (math.log2(w.denominator) - math.log2(w.numerator)))
    return math.fsum(terms)


def binary_entropy(p: Union[float, Fraction]) -> float:
    """h(p) = p log2(1/p) + (1-p) log2(1/(1-p)) on [0, 1]."""
    x = float(p)
    if not 0.0 <= x <= 1.0:
        raise PreconditionViolated(f"binary_entropy needs p in [0,1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


@dataclass(frozen=True)
class ValidationReport:
    """Everything wrong with a tree relative to a distribution and a family."""

    missing_support: tuple[int, ...]
    extra_leaves: tuple[int, ...]
    duplicate_leaves: tuple[int, ...]
    path_violations: tuple[str, ...]
    family_violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not (
            self.missing_support
            or self.extra_leaves
            or self.duplicate_leaves
            or self.path_violations
            or self.family_violations
        )

    def summary(self) -> str:
        if self.ok:
            return "tree is valid"
        parts = []
        if self.missing_support:
            parts.append(f"support elements with no leaf: {list(self.missing_support)}")
        if self.extra_leaves:
            parts.append(f"leaves outside the support: {list(self.extra_leaves)}")
        if self.duplicate_leaves:
            parts.append(f"elements with several leaves: {list(self.duplicate_leaves)}")
        parts.extend(self.path_violations)
        parts.extend(self.family_violations)
        return "; ".join(parts)


def validate_tree(
    tree: DecisionTree,
    dist: Distribution,
    family: Union[QuestionFamily, None] = None,
) -> ValidationReport:
    """Check leaf/support agreement, path consistency, and family discipline.

    Path consistency: every leaf element must answer "yes" to each question on
    its path that it descended through the yes branch, and "no" otherwise.
    """
    seen: dict[int, int] = {}
    for element, _ in tree.leaves_with_depths():
        seen[element] = seen.get(element, 0) + 1
    support = set(dist.support)
    missing = tuple(sorted(e for e in support if e not in seen))
    extra = tuple(sorted(e for e in seen if e not in support))
    duplicates = tuple(sorted(e for e, c in seen.items() if c > 1))

    path_violations: list[str] = []
    # walk with the set of leaf elements below each node
    def leaf_set(node: Node) -> list[int]:
        out: list[int] = []
        stack = [node]
        while stack:
            cur = stack.pop()
            if isinstance(cur, Leaf):
                out.append(cur.element)
            else:
                stack.append(cur.yes)
                stack.append(cur.no)
        return out

    stack: list[Node] = [tree.root]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            continue
        for e in leaf_set(node.yes):
            if not node.question.contains(e):
                path_violations.append(
                    f"x_{e} sits under the yes branch of {node.question.render()!r} but is not in the set"
                )
        for e in leaf_set(node.no):
            if node.question.contains(e):
                path_violations.append(
                    f"x_{e} sits under the no branch of {node.question.render()!r} but is in the set"
                )
        stack.append(node.yes)
        stack.append(node.no)

    family_violations: list[str] = []
    if family is not None:
        for node, _ in tree.internal_nodes():
            if not family.contains(node.question):
                family_violations.append(
                    f"question {node.question.render()!r} is outside the family ({family.description})"
                )

    return ValidationReport(
        missing_support=missing,
        extra_leaves=extra,
        duplicate_leaves=duplicates,
        path_violations=tuple(path_violations),
        family_violations=tuple(family_violations),
    )


# ---------------------------------------------------------------------------
# Exact splits of dyadic weight lists
# ---------------------------------------------------------------------------


def _check_dyadic_split_args(weights: Sequence[Fraction], a: int) -> Fraction:
    if not weights:
        raise PreconditionViolated("need a non-empty weight list")
    previous = None
    for w in weights:
        w = Fraction(w)
        if w <= 0 or w.numerator != 1 or (w.denominator & (w.denominator - 1)) != 0:
            raise PreconditionViolated(f"{w} is not a positive power of two")
        if previous is not None and w > previous:
            raise PreconditionViolated("weights must be non-increasing")
        previous = w
    target = Fraction(2) ** (-a)
    if target < Fraction(weights[0]):
        raise PreconditionViolated(
            f"target 2^-{a} is smaller than the largest weight {weights[0]}"
        )
    if sum(weights, Fraction(0)) < target:
        raise PreconditionViolated(f"total weight is below the target 2^-{a}")
    return target


def dyadic_prefix_split(weights: Sequence[Fraction], a: int) -> int:
    """The unique m with weights[0] + ... + weights[m-1] == 2^-a, returned 1-based.

    Requires a non-increasing list of powers of two whose total is at least
    2^-a, with 2^-a at least as large as the first weight.  Such an m always
    exists: running prefix sums of a non-increasing dyadic list cannot jump
    over a dyadic target that is a multiple of the current weight.
    """
    target = _check_dyadic_split_args(weights, a)
    acc = Fraction(0)
    for i, w in enumerate(weights):
        acc += w
        if acc == target:
            return i + 1
        if acc > target:
            break
    raise PreconditionViolated("no prefix reaches the target; inputs violate the contract")


def dyadic_suffix_split(weights: Sequence[Fraction], a: int) -> int:
    """The smallest l such that weights[l-1] + ... + weights[-1] == 2^-a, 1-based.

    Same preconditions as :func:`dyadic_prefix_split`, plus: the total must be
    an integer multiple of 2^-a.  Then some suffix sums to exactly 2^-a.
    """
    target = _check_dyadic_split_args(weights, a)
    total = sum(weights, Fraction(0))
    if (total / target).denominator != 1:
        raise PreconditionViolated(
            f"total {total} is not an integer multiple of the target 2^-{a}"
        )
    acc = Fraction(0)
    for i in range(len(weights) - 1, -1, -1):
        acc += weights[i]
        if acc == target:
            return i + 1
        if acc > target:
            break
    raise PreconditionViolated("no suffix reaches the target; inputs violate the contract")
