"""The threshold strategy over comparison and equality questions."""

from fractions import Fraction
import random

import pytest
from hypothesis import given, settings

from conftest import distributions, rational_distribution
from quiztree import (
    AtParams,
    Comparison,
    Distribution,
    Equality,
    Internal,
    PreconditionViolated,
    build_at_tree,
    comparison_equality_family,
    entropy,
    middle_index,
    redundancy_diagnostic,
    tree_cost,
    validate_tree,
)


def test_params_validate_threshold():
    assert AtParams().t == Fraction(3, 10)
    assert AtParams(Fraction(1)).t == 1
    with pytest.raises(PreconditionViolated):
        AtParams(Fraction(0))
    with pytest.raises(PreconditionViolated):
        AtParams(Fraction(3, 2))


@pytest.mark.parametrize("n, count", [(2, 1), (3, 3), (4, 5), (10, 17)])
def test_family_count_is_2n_minus_3(n, count):
    family = comparison_equality_family(n)
    assert len(family) == count
    assert len(list(family)) == count
    # deduplication is by complementation: distinct canonical bitsets
    assert len({q.canonical_bits for q in family}) == count


def test_family_membership():
    family = comparison_equality_family(5)
    from quiztree import Explicit, Question

    assert family.contains(Question(5, Equality(3)))
    assert family.contains(Question(5, Comparison(4)))
    # complements of members count as members
    assert family.contains(Question(5, Explicit(frozenset({2, 3, 4, 5}))))
    assert not family.contains(Question(5, Explicit(frozenset({2, 4}))))


@pytest.mark.parametrize(
    "weights, expected",
    [
        (("1/5",) * 5, 3),
        (("1/2", "1/2"), 2),
        ((1, 0, 0), 2),
    ],
    ids=["uniform5-tie", "even", "point-mass-prefix"],
)
def test_middle_index(weights, expected):
    assert middle_index(Distribution.of(*weights)) == expected


def test_at_tree_goldens():
    d = Distribution.of("1/20", "9/10", "1/20")
    tree = build_at_tree(d, AtParams(Fraction(3, 10)))
    assert isinstance(tree.root.question.kind, Equality)
    assert tree.root.question.kind.element == 2
    assert tree_cost(tree, d) == Fraction(11, 10)

    uniform = Distribution.uniform(4)
    tree = build_at_tree(uniform, AtParams(Fraction(3, 10)))
    assert tree_cost(tree, uniform) == 2  # redundancy exactly 0
    assert isinstance(tree.root.question.kind, Comparison)
    assert tree.max_depth == 2

    point = Distribution.point_mass(3, 1)
    assert build_at_tree(point, AtParams()).question_count == 0


def test_redundancy_diagnostic_goldens():
    assert redundancy_diagnostic(Distribution.point_mass(2, 1)).margin == -1
    assert redundancy_diagnostic(Distribution.uniform(2)).margin == pytest.approx(-1)
    assert redundancy_diagnostic(Distribution.uniform(4)).margin == pytest.approx(-1)


@given(distributions(min_n=2, max_n=12, allow_zero=True))
@settings(max_examples=100, deadline=None)
def test_redundancy_below_one_at_default_threshold(d):
    diag = redundancy_diagnostic(d)
    assert diag.margin <= 1e-9
    assert diag.agrees


@given(distributions(min_n=2, max_n=12, allow_zero=True))
@settings(max_examples=60, deadline=None)
def test_weight_balancing_redundancy_below_two(d):
    tree = build_at_tree(d, AtParams(Fraction(1)))
    assert float(tree_cost(tree, d)) - entropy(d) <= 2 + 1e-9


@given(distributions(min_n=2, max_n=10, allow_zero=True))
@settings(max_examples=60, deadline=None)
def test_questions_stay_in_family(d):
    family = comparison_equality_family(d.n)
    for t in (Fraction(3, 10), Fraction(1)):
        tree = build_at_tree(d, AtParams(t))
        assert validate_tree(tree, d, family=family).ok


def _check_balance(dist, node):
    """Lemma 3.3 exactly: each comparison splits within pmax/2 of even."""
    if not isinstance(node, Internal):
        return
    if isinstance(node.question.kind, Comparison):
        sub = [dist.weight(e) for e in dist.support]
        pmax = max(sub)
        mass = sum(dist.weight(e) for e in dist.support if node.question.contains(e))
        assert (1 - pmax) / 2 <= mass <= (1 + pmax) / 2
    yes = [e for e in dist.support if node.question.contains(e)]
    no = [e for e in dist.support if not node.question.contains(e)]
    _check_balance(dist.conditioned_on(yes), node.yes)
    _check_balance(dist.conditioned_on(no), node.no)


def test_comparison_nodes_are_balanced():
    rng = random.Random(11)
    for _ in range(40):
        d = rational_distribution(rng, rng.randint(2, 10))
        tree = build_at_tree(d, AtParams())
        _check_balance(d, tree.root)


def test_threshold_boundary_is_exact():
    # pmax = 3/10 exactly: the favorite must be split off (the rule is >= t)
    d = Distribution.of("3/10", "3/10", "2/10", "2/10")
    tree = build_at_tree(d, AtParams(Fraction(3, 10)))
    assert isinstance(tree.root.question.kind, Equality)
    just_below = Distribution.of("29/100", "29/100", "21/100", "21/100")
    tree = build_at_tree(just_below, AtParams(Fraction(3, 10)))
    assert isinstance(tree.root.question.kind, Comparison)
