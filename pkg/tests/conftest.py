"""Shared generators for random exact-rational distributions.

Statistical harnesses use the plain seeded generator; property tests use the
hypothesis strategy.  Both produce weights as integer counts over a common
denominator, so every distribution is exactly rational from birth.
"""

from fractions import Fraction
import random

from hypothesis import strategies as st

from quiztree import Distribution


def rational_distribution(
    rng: random.Random, n: int, allow_zero: bool = False
) -> Distribution:
    """One seeded random rational distribution on n elements."""
    low = 0 if allow_zero else 1
    counts = [rng.randint(low, 50) for _ in range(n)]
    if not any(counts):
        counts[rng.randrange(n)] = 1
    total = sum(counts)
    return Distribution(tuple(Fraction(c, total) for c in counts))


@st.composite
def distributions(draw, min_n: int = 1, max_n: int = 8, allow_zero: bool = False):
    """Hypothesis strategy for exact rational distributions."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    low = 0 if allow_zero else 1
    counts = draw(
        st.lists(
            st.integers(min_value=low, max_value=20), min_size=n, max_size=n
        ).filter(any)
    )
    total = sum(counts)
    return Distribution(tuple(Fraction(c, total) for c in counts))


@st.composite
def dyadic_weight_lists(draw, max_len: int = 10):
    """Non-increasing lists of dyadic weights 2^-e, as used by the split lemmas."""
    exponents = sorted(
        draw(st.lists(st.integers(min_value=0, max_value=8), min_size=1, max_size=max_len))
    )
    return [Fraction(1, 2**e) for e in exponents]
