"""Distributions, questions, trees, and the exact dyadic split lemmas."""

from fractions import Fraction
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import distributions, dyadic_weight_lists
from quiztree import (
    BadDistribution,
    Comparison,
    ConeMember,
    CyclicQuestion,
    Distribution,
    DyadicMeasure,
    Equality,
    EntryWise,
    Explicit,
    Internal,
    Leaf,
    DecisionTree,
    PreconditionViolated,
    Question,
    SecretNotInTree,
    TreeInvalid,
    binary_entropy,
    dyadic_prefix_split,
    dyadic_suffix_split,
    entropy,
    huffman,
    question_from_json,
    question_to_json,
    simulate,
    tree_cost,
    validate_tree,
)


# ---------------------------------------------------------------------------
# Distribution
# ---------------------------------------------------------------------------


def test_distribution_basic_accessors():
    d = Distribution.of("1/2", "1/4", 0, "1/4")
    assert d.n == 4
    assert d.support == (1, 2, 4)
    assert d.weight(1) == Fraction(1, 2)
    assert d.weight(3) == 0


@pytest.mark.parametrize(
    "weights",
    [
        (),
        (Fraction(1, 2),),
        (Fraction(1, 2), Fraction(1, 3)),
        (Fraction(3, 2), Fraction(-1, 2)),
    ],
    ids=["empty", "short", "long", "negative"],
)
def test_distribution_rejects_bad_weights(weights):
    with pytest.raises(BadDistribution):
        Distribution(weights)


def test_weight_bounds_checked():
    d = Distribution.uniform(3)
    with pytest.raises(PreconditionViolated):
        d.weight(0)
    with pytest.raises(PreconditionViolated):
        d.weight(4)


def test_uniform_and_point_mass():
    assert Distribution.uniform(4).weights == (Fraction(1, 4),) * 4
    pm = Distribution.point_mass(3, 2)
    assert pm.weights == (0, 1, 0)
    assert pm.support == (2,)
    with pytest.raises(BadDistribution):
        Distribution.uniform(0)
    with pytest.raises(BadDistribution):
        Distribution.point_mass(3, 4)


def test_conditioned_on_renormalizes_exactly():
    d = Distribution.of("1/2", "1/4", "1/8", "1/8")
    c = d.conditioned_on([2, 3, 4])
    assert c.n == 4
    assert c.weights == (0, Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    with pytest.raises(BadDistribution):
        Distribution.point_mass(3, 1).conditioned_on([2, 3])


def test_from_floats_snaps_to_rationals():
    d = Distribution.from_floats([0.5, 0.25, 0.25])
    assert d.weights == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    # non-dyadic floats land on multiples of 2^-32, then renormalize to sum 1
    d = Distribution.from_floats([0.4, 0.3, 0.2, 0.1])
    assert sum(d.weights) == 1
    assert all(w.denominator <= 2**32 * 4 for w in d.weights)
    with pytest.raises(BadDistribution):
        Distribution.from_floats([1.0, float("nan")])
    with pytest.raises(BadDistribution):
        Distribution.from_floats([0.0, 1e-20])


def test_distribution_json_roundtrip():
    d = Distribution.of("1/2", "1/3", "1/6")
    obj = d.to_json()
    assert obj == {"n": 3, "weights": ["1/2", "1/3", "1/6"]}
    assert Distribution.from_json(obj) == d
    assert Distribution.from_json({"dyadic_exponents": [1, 2, 2]}) == Distribution.of(
        "1/2", "1/4", "1/4"
    )


@pytest.mark.parametrize(
    "obj",
    [
        None,
        [],
        {},
        {"n": 3},
        {"n": 2, "weights": ["1/2"]},
        {"weights": ["1/2", "nope"]},
        {"dyadic_exponents": [1, 2, "x"]},
        {"dyadic_exponents": [2, 2, 2]},
    ],
)
def test_distribution_from_json_rejects_garbage(obj):
    with pytest.raises(BadDistribution):
        Distribution.from_json(obj)


@given(distributions(max_n=10, allow_zero=True))
def test_distribution_weights_always_sum_to_one(d):
    assert sum(d.weights) == 1
    assert all(d.weight(e) > 0 for e in d.support)


# ---------------------------------------------------------------------------
# DyadicMeasure
# ---------------------------------------------------------------------------


def test_dyadic_measure_roundtrip_and_entropy():
    mu = DyadicMeasure((1, 2, None, 2))
    assert mu.support == (1, 2, 4)
    assert mu.total == 1
    assert mu.is_distribution
    # H = 1/2*1 + 1/4*2 + 1/4*2 = 3/2, exactly
    assert mu.entropy_exact() == Fraction(3, 2)
    assert DyadicMeasure.from_distribution(mu.to_distribution()) == mu


def test_dyadic_measure_sub_distribution():
    mu = DyadicMeasure((2, 2))
    assert mu.total == Fraction(1, 2)
    assert not mu.is_distribution
    with pytest.raises(PreconditionViolated):
        mu.entropy_exact()


def test_dyadic_measure_rejects_non_powers():
    with pytest.raises(BadDistribution):
        DyadicMeasure.from_distribution(Distribution.of("1/3", "1/3", "1/3"))
    with pytest.raises(BadDistribution):
        DyadicMeasure((1, -1))


# ---------------------------------------------------------------------------
# Questions
# ---------------------------------------------------------------------------


def test_equality_and_comparison_questions():
    eq = Question(5, Equality(3))
    assert eq.elements() == (3,)
    assert eq.size == 1
    assert eq.render() == "Is x = x_3?"
    lt = Question(5, Comparison(4))
    assert lt.elements() == (1, 2, 3)
    assert lt.size == 3
    assert lt.render() == "Is x < x_4?"
    assert not lt.contains(4)


def test_entrywise_question_digits():
    # n=9, width 2, base 3: x_1..x_9 code as 11,12,13,21,...,33
    q = Question(9, EntryWise(coordinate=1, relation="eq", value=2, width=2))
    assert q.elements() == (4, 5, 6)
    q = Question(9, EntryWise(coordinate=2, relation="lt", value=3, width=2))
    assert q.elements() == (1, 2, 4, 5, 7, 8)
    # size never scans the domain; check it against the bitset anyway
    assert q.size == len(q.elements())


def test_entrywise_size_on_partial_codes():
    # n=7 in base 3: codes 11..31, the last row incomplete
    for value in (1, 2, 3):
        q = Question(7, EntryWise(coordinate=2, relation="eq", value=value, width=2))
        assert q.size == len(q.elements())


def test_cone_member_questions():
    sub = Question(5, ConeMember(False, frozenset({1})))
    assert sub.elements() == (1,)
    sup = Question(5, ConeMember(True, frozenset({4})))
    assert sup.elements() == (1, 2, 4)
    assert sup.contains(2) and not sup.contains(3)
    with pytest.raises(PreconditionViolated):
        Question(5, ConeMember(False, frozenset({3})))  # outside the pivot block
    with pytest.raises(PreconditionViolated):
        Question(5, ConeMember(True, frozenset({1})))  # inside the pivot block


def test_cyclic_question_wraps_and_adjusts():
    q = Question(6, CyclicQuestion(5, 2, frozenset({4}), frozenset({1})))
    assert q.elements() == (2, 4, 5, 6)
    assert q.size == 4
    empty = Question(6, CyclicQuestion(None, None, frozenset({3}), frozenset()))
    assert empty.elements() == (3,)
    with pytest.raises(PreconditionViolated):
        Question(6, CyclicQuestion(2, None, frozenset(), frozenset()))


def test_explicit_question_and_bounds():
    q = Question(4, Explicit(frozenset({2, 4})))
    assert q.elements() == (2, 4)
    with pytest.raises(PreconditionViolated):
        Question(4, Explicit(frozenset({5})))


def test_render_large_sets_fall_back_to_descriptors():
    q = Question(40, ConeMember(True, frozenset({25, 30})))
    assert "pivot block" in q.render()
    q = Question(40, CyclicQuestion(2, 30, frozenset(), frozenset({5})))
    assert "cyclic range" in q.render()
    q = Question(40, Explicit(frozenset(range(1, 21))))
    assert "set of 20 elements" in q.render()


def test_canonical_bits_avoids_last_element():
    q = Question(4, Explicit(frozenset({1, 4})))
    assert q.canonical_bits == q.complemented().bits
    assert q.canonical_bits == 0b0110
    r = Question(4, Explicit(frozenset({2, 3})))
    assert r.canonical_bits == q.canonical_bits


@given(
    st.integers(min_value=1, max_value=12).flatmap(
        lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))
    )
)
def test_question_bits_match_membership(args):
    n, members = args
    q = Question(n, Explicit(frozenset(members)))
    resolved = frozenset(e for e in range(1, n + 1) if q.contains(e))
    assert resolved == frozenset(q.elements())
    assert q.bits == sum(1 << (e - 1) for e in resolved)
    assert q.complemented().complemented().bits == q.bits


def test_question_json_roundtrip_all_kinds():
    kinds = [
        Question(5, Equality(2)),
        Question(5, Comparison(4)),
        Question(9, EntryWise(1, "lt", 3, 2)),
        Question(6, ConeMember(True, frozenset({5}))),
        Question(6, CyclicQuestion(5, 2, frozenset({3}), frozenset({6}))),
        Question(6, Explicit(frozenset({1, 3}))),
    ]
    for q in kinds:
        obj = question_to_json(q)
        assert isinstance(obj["render"], str)
        back = question_from_json(obj, q.n)
        assert back.bits == q.bits
        assert type(back.kind) is type(q.kind)


def test_question_json_element_list_cutoff():
    small = question_to_json(Question(6, Explicit(frozenset({1, 2}))))
    assert small["elements"] == [1, 2]
    big = question_to_json(Question(40, Explicit(frozenset(range(1, 21)))))
    assert "elements" not in big


def test_question_from_json_rejects_garbage():
    with pytest.raises(PreconditionViolated):
        question_from_json({"kind": "telepathy"}, 4)
    with pytest.raises(PreconditionViolated):
        question_from_json([], 4)


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


def small_tree() -> DecisionTree:
    # (1/2, 1/4, 1/4): ask x=x_1, then x=x_2
    q1 = Question(3, Equality(1))
    q2 = Question(3, Equality(2))
    return DecisionTree(3, Internal(q1, Leaf(1), Internal(q2, Leaf(2), Leaf(3))))


def test_tree_shape_accessors():
    tree = small_tree()
    assert dict(tree.leaves_with_depths()) == {1: 1, 2: 2, 3: 2}
    assert tree.depths() == {1: 1, 2: 2, 3: 2}
    assert tree.question_count == 2
    assert tree.max_depth == 2
    assert len(list(tree.internal_nodes())) == 2


def test_tree_json_roundtrip():
    tree = small_tree()
    obj = tree.to_json()
    assert set(obj) == {"q", "yes", "no"}
    back = DecisionTree.from_json(json.loads(json.dumps(obj)), 3)
    assert back.depths() == tree.depths()
    assert back.root.question.bits == tree.root.question.bits


def test_simulate_plays_honestly():
    tree = small_tree()
    t = simulate(tree, 3)
    assert t.result == 3
    assert t.length == 2
    assert [e.answer for e in t.entries] == [False, False]
    with pytest.raises(SecretNotInTree):
        simulate(tree, 4)


def test_simulate_detects_inconsistent_tree():
    # leaf 2 sits on the yes-branch of "is x = x_1?"
    broken = DecisionTree(2, Internal(Question(2, Equality(1)), Leaf(2), Leaf(1)))
    with pytest.raises(TreeInvalid):
        simulate(broken, 2)


def test_tree_cost_golden():
    d = Distribution.of("1/2", "1/4", "1/4")
    assert tree_cost(small_tree(), d) == Fraction(3, 2)
    with pytest.raises(TreeInvalid):
        tree_cost(small_tree(), Distribution.uniform(4))


@given(distributions(min_n=2, max_n=9))
@settings(max_examples=60)
def test_cost_never_beats_entropy(d):
    tree = huffman(d).tree
    assert float(tree_cost(tree, d)) >= entropy(d) - 1e-9


@given(distributions(min_n=1, max_n=9, allow_zero=True))
@settings(max_examples=60)
def test_simulate_depth_matches_cost_accounting(d):
    tree = huffman(d).tree
    depths = tree.depths()
    for e in d.support:
        assert simulate(tree, e).length == depths[e]


# ---------------------------------------------------------------------------
# validate_tree
# ---------------------------------------------------------------------------


def test_validate_accepts_good_tree():
    d = Distribution.of("1/2", "1/4", "1/4")
    report = validate_tree(small_tree(), d)
    assert report.ok
    assert "valid" in report.summary()


def test_validate_reports_missing_support():
    d = Distribution.uniform(3)
    tree = DecisionTree(3, Internal(Question(3, Equality(1)), Leaf(1), Leaf(2)))
    report = validate_tree(tree, d)
    assert not report.ok
    assert report.missing_support == (3,)


def test_validate_reports_duplicates_and_extras():
    d = Distribution.of("1/2", "1/2", 0)
    tree = DecisionTree(
        3,
        Internal(
            Question(3, Equality(1)),
            Leaf(1),
            Internal(Question(3, Equality(3)), Leaf(3), Leaf(1)),
        ),
    )
    report = validate_tree(tree, d)
    assert not report.ok
    assert report.duplicate_leaves == (1,)
    assert report.extra_leaves == (3,)
    assert report.missing_support == (2,)


def test_validate_reports_path_violations():
    # x_2's leaf sits where honest answers cannot reach it
    tree = DecisionTree(2, Internal(Question(2, Equality(1)), Leaf(2), Leaf(1)))
    report = validate_tree(tree, Distribution.uniform(2))
    assert not report.ok
    assert report.path_violations


def test_validate_checks_family_membership():
    from quiztree import comparison_equality_family

    d = Distribution.uniform(4)
    # root asks {x_1, x_4}, which is no comparison prefix and no singleton
    tree = DecisionTree(
        4,
        Internal(
            Question(4, Explicit(frozenset({1, 4}))),
            Internal(Question(4, Equality(1)), Leaf(1), Leaf(4)),
            Internal(Question(4, Equality(2)), Leaf(2), Leaf(3)),
        ),
    )
    family = comparison_equality_family(4)
    assert validate_tree(tree, d).ok
    report = validate_tree(tree, d, family=family)
    assert not report.ok
    assert len(report.family_violations) == 1


# ---------------------------------------------------------------------------
# Dyadic split lemmas
# ---------------------------------------------------------------------------


@given(dyadic_weight_lists(), st.data())
@settings(max_examples=300)
def test_prefix_split_sums_exactly(weights, data):
    weights = sorted(weights, reverse=True)  # non-increasing, heaviest first
    e0 = weights[0].denominator.bit_length() - 1
    total = sum(weights)
    valid = [a for a in range(0, e0 + 1) if Fraction(2) ** (-a) <= total]
    a = data.draw(st.sampled_from(valid))
    m = dyadic_prefix_split(weights, a)
    assert sum(weights[:m]) == Fraction(2) ** (-a)


def test_prefix_split_rejects_bad_inputs():
    half = [Fraction(1, 2)]
    with pytest.raises(PreconditionViolated):
        dyadic_prefix_split(half + [Fraction(1, 3)], 1)  # not dyadic
    with pytest.raises(PreconditionViolated):
        dyadic_prefix_split([Fraction(1, 4), Fraction(1, 2)], 2)  # increasing
    with pytest.raises(PreconditionViolated):
        dyadic_prefix_split(half, 2)  # target smaller than the largest weight
    with pytest.raises(PreconditionViolated):
        dyadic_prefix_split(half, -1)
    with pytest.raises(PreconditionViolated):
        dyadic_prefix_split([Fraction(1, 4), Fraction(1, 8)], 1)  # total short


@given(st.data())
@settings(max_examples=300)
def test_suffix_split_when_total_is_a_multiple(data):
    # Kraft-tight lists: random leaf-splitting keeps the total exactly 1
    rng_moves = data.draw(st.lists(st.integers(0, 10**6), min_size=1, max_size=9))
    exponents = [0]
    for move in rng_moves:
        e = exponents.pop(move % len(exponents))
        exponents.extend((e + 1, e + 1))
    exponents.sort()
    weights = [Fraction(1, 2**e) for e in exponents]
    a = data.draw(st.integers(0, exponents[0]))
    m = dyadic_suffix_split(weights, a)
    assert sum(weights[m - 1 :]) == Fraction(2) ** (-a)


def test_suffix_split_needs_multiple_total():
    # total 3/4 is not a multiple of 1/2
    with pytest.raises(PreconditionViolated):
        dyadic_suffix_split([Fraction(1, 2), Fraction(1, 4)], 1)


# ---------------------------------------------------------------------------
# Entropy helpers
# ---------------------------------------------------------------------------


def test_entropy_goldens():
    assert entropy(Distribution.uniform(4)) == pytest.approx(2.0)
    assert entropy(Distribution.of("1/2", "1/4", "1/4")) == pytest.approx(1.5)
    assert entropy(Distribution.point_mass(5, 3)) == 0.0


def test_binary_entropy():
    assert binary_entropy(Fraction(1, 2)) == pytest.approx(1.0)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(0.49992, abs=1e-4)
    with pytest.raises(PreconditionViolated):
        binary_entropy(1.5)
