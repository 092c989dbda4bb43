"""The cone strategy: exactly optimal trees from subsets and supersets of a pivot."""

from fractions import Fraction
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import distributions, rational_distribution
from quiztree import (
    ConeMember,
    Distribution,
    InconsistentAnswers,
    Internal,
    MalformedIndex,
    Question,
    WrongState,
    brute_force_opt,
    cone_family,
    cone_membership,
    cone_online,
    cone_optimal_tree,
    huffman,
    pivot_size,
    simulate,
    tree_cost,
    validate_tree,
)


# ---------------------------------------------------------------------------
# Family
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n, size", [(2, 3), (3, 5), (5, 11), (6, 15), (10, 63)])
def test_family_size(n, size):
    family = cone_family(n)
    assert len(family) == 2 ** (n // 2) + 2 ** (n - n // 2) - 1
    assert len(family) == size
    questions = list(family)
    assert len(questions) == size
    assert len({q.bits for q in questions}) == size


def test_family_contains_checks_the_cone():
    from quiztree import Explicit

    family = cone_family(6)  # pivot x_1..x_3
    assert family.contains(Question(6, Explicit(frozenset({1, 3}))))
    assert family.contains(Question(6, Explicit(frozenset({1, 2, 3, 5}))))
    assert not family.contains(Question(6, Explicit(frozenset({1, 2, 4}))))
    assert not family.contains(Question(6, Explicit(frozenset({4, 5}))))


def test_cone_membership_decodes_packed_indices():
    # n=6: 4 index bits; subset side, free = {x_1, x_3}
    assert cone_membership([0, 1, 0, 1], 1, 6)
    assert not cone_membership([0, 1, 0, 1], 2, 6)
    # superset side, extra = {x_5}: the set is {x_1, x_2, x_3, x_5}
    assert cone_membership([1, 0, 1, 0], 2, 6)
    assert cone_membership([1, 0, 1, 0], 5, 6)
    assert not cone_membership([1, 0, 1, 0], 6, 6)
    with pytest.raises(MalformedIndex):
        cone_membership([0, 1], 1, 6)
    with pytest.raises(MalformedIndex):
        cone_membership([0, 0, 0, 2], 1, 6)
    with pytest.raises(MalformedIndex):
        # n=5: subset side has only 2 meaningful free bits
        cone_membership([0, 0, 0, 1], 1, 5)


def test_pivot_size_follows_the_proof_convention():
    assert [pivot_size(n) for n in (2, 3, 4, 5)] == [1, 1, 2, 2]


# ---------------------------------------------------------------------------
# Exact optimality
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "dist, expected",
    [
        (Distribution.of("1/2", "1/4", "1/8", "1/8"), Fraction(7, 4)),
        (Distribution.of("2/5", "3/10", "1/5", "1/10"), Fraction(19, 10)),
        (Distribution.point_mass(3, 2), Fraction(0)),
    ],
    ids=["dyadic", "textbook", "point"],
)
def test_tree_cost_goldens(dist, expected):
    tree = cone_optimal_tree(dist)
    assert tree_cost(tree, dist) == expected
    assert tree_cost(tree, dist) == huffman(dist).opt_cost


@given(distributions(min_n=2, max_n=24, allow_zero=True))
@settings(max_examples=100, deadline=None)
def test_cost_equals_huffman_exactly(d):
    tree = cone_optimal_tree(d)
    assert tree_cost(tree, d) == huffman(d).opt_cost
    assert validate_tree(tree, d, family=cone_family(d.n)).ok


@given(distributions(min_n=2, max_n=6))
@settings(max_examples=60, deadline=None)
def test_cost_equals_brute_force_for_tiny_n(d):
    assert tree_cost(cone_optimal_tree(d), d) == brute_force_opt(d)


def test_larger_domains_stay_exact():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(30, 64)
        d = rational_distribution(rng, n, allow_zero=True)
        tree = cone_optimal_tree(d)
        assert tree_cost(tree, d) == huffman(d).opt_cost


def _halving_check(node, measure):
    """Every question takes exactly half of the current dyadic mass."""
    if not isinstance(node, Internal):
        return
    total = sum(measure.values(), Fraction(0))
    yes_mass = sum(
        (m for e, m in measure.items() if node.question.contains(e)), Fraction(0)
    )
    assert yes_mass * 2 == total
    yes = {e: m * 2 for e, m in measure.items() if node.question.contains(e)}
    no = {e: m * 2 for e, m in measure.items() if not node.question.contains(e)}
    _halving_check(node.yes, yes)
    _halving_check(node.no, no)


def test_every_split_halves_the_huffman_measure():
    rng = random.Random(23)
    for _ in range(25):
        d = rational_distribution(rng, rng.randint(2, 16), allow_zero=True)
        dyadic = huffman(d).dyadic
        measure = {e: dyadic.weight(e) for e in dyadic.support}
        _halving_check(cone_optimal_tree(d).root, measure)


# ---------------------------------------------------------------------------
# Online play
# ---------------------------------------------------------------------------


def test_two_element_game_is_one_question():
    s = cone_online(Distribution.of("1/2", "1/2"))
    assert not s.done
    s.answer(s.question().contains(2))
    assert s.done and s.result == 2 and s.asked == 1


def test_three_element_traces():
    d = Distribution.of("1/2", "1/4", "1/4")
    for answers, result in [
        ((True,), 1),
        ((False, True), 2),
        ((False, False), 3),
    ]:
        s = cone_online(d)
        for a in answers:
            s.answer(a)
        assert s.done and s.result == result
        assert s.asked == len(answers)


def test_adversary_cannot_stretch_the_game():
    d = Distribution.of("1/2", "1/4", "1/4")
    max_depth = cone_optimal_tree(d).max_depth
    for bits in range(4):
        s = cone_online(d)
        step = 0
        while not s.done:
            s.answer(bool(bits >> step & 1))
            step += 1
        assert s.asked <= max_depth == 2


@given(distributions(min_n=2, max_n=16, allow_zero=True))
@settings(max_examples=60, deadline=None)
def test_stepper_follows_the_tree(d):
    tree = cone_optimal_tree(d)
    for secret in d.support:
        transcript = simulate(tree, secret)
        s = cone_online(d)
        for entry in transcript.entries:
            assert s.question().bits == entry.question.bits
            s.answer(entry.answer)
        assert s.done and s.result == secret


def test_stepper_state_errors():
    s = cone_online(Distribution.of("1/2", "1/2"))
    assert s.candidates() == (1, 2)
    s.answer(True)
    assert s.candidates() == (1,)
    with pytest.raises(WrongState):
        s.question()
    with pytest.raises(WrongState):
        s.answer(False)


def test_questions_prefer_early_elements():
    # equal masses go to the asked set lowest-index first, on both routes
    s = cone_online(Distribution.uniform(4))
    assert s.question().elements() == (1, 2)
    s = cone_online(Distribution.of("1/4", "1/4", "1/4", "1/4", 0, 0))
    # pivot {x_1..x_3} holds 3/4: carve {x_1, x_2} from inside
    assert s.question().elements() == (1, 2)
    s = cone_online(Distribution.of("1/8", "1/8", 0, "1/4", "1/4", "1/4"))
    # pivot holds 1/4: the no side is carved outside, keeping early elements
    q = s.question()
    assert isinstance(q.kind, ConeMember) and q.kind.superset_side
    assert q.elements() == (1, 2, 3, 4)


def test_zero_weight_elements_never_appear_in_leaves():
    d = Distribution.of("1/2", 0, "1/4", "1/4", 0)
    tree = cone_optimal_tree(d)
    assert sorted(e for e, _ in tree.leaves_with_depths()) == [1, 3, 4]
    report = validate_tree(tree, d, family=cone_family(5))
    assert report.ok
