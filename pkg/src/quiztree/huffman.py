"""Exact optimal expected-depth trees: Huffman construction plus a brute-force oracle.

The Huffman tree over the support of a distribution minimizes the expected
number of yes/no questions when any subset may be asked.  Its leaf depths
induce the dyadic measure weight(x) = 2^-depth(x), which is the bridge between
optimal trees and dyadic distributions used across the analysis modules.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Union

from .core import (
    DecisionTree,
    Distribution,
    DyadicMeasure,
    Explicit,
    Internal,
    Leaf,
    Node,
    Question,
)
from .errors import TooLarge

#: brute_force_opt enumerates exponent profiles only up to this support size.
BRUTE_FORCE_LIMIT = 7


@dataclass(frozen=True)
class HuffmanResult:
    """An optimal tree, its exact cost, and the induced dyadic measure."""

    dist: Distribution
    opt_cost: Fraction
    dyadic: DyadicMeasure
    _merges: tuple[tuple[int, int], ...]  # (yes_child_id, no_child_id) per merge
    _leaf_elements: tuple[int, ...]  # element of leaf id i

    def depth(self, element: int) -> int:
        e = self.dyadic.exponents[element - 1]
        if e is None:
            raise KeyError(f"x_{element} is not in the support")
        return e

    @cached_property
    def tree(self) -> DecisionTree:
        """Materialize the tree; questions are explicit subsets (the yes side)."""
        m = len(self._leaf_elements)
        nodes: list[Node] = [Leaf(e) for e in self._leaf_elements]
        member_sets: list[frozenset[int]] = [frozenset([e]) for e in self._leaf_elements]
        for yes_id, no_id in self._merges:
            members = member_sets[yes_id] | member_sets[no_id]
            question = Question(self.dist.n, Explicit(member_sets[yes_id]))
            nodes.append(Internal(question, nodes[yes_id], nodes[no_id]))
            member_sets.append(members)
        return DecisionTree(self.dist.n, nodes[-1] if nodes else Leaf(0))


def huffman(dist: Distribution) -> HuffmanResult:
    """Build an optimal tree over the support of `dist`.

    Deterministic tie-break: the heap orders nodes by (weight, node id), with
    leaf ids 0..m-1 assigned in element order and merged nodes numbered in
    creation order.  The first node popped in a merge becomes the yes child.
    """
    support = dist.support
    denominator = lcm(*(dist.weight(e).denominator for e in support))
    numerators = [int(dist.weight(e) * denominator) for e in support]

    m = len(support)
    if m == 1:
        element = support[0]
        exponents: list[Union[int, None]] = [None] * dist.n
        exponents[element - 1] = 0
        return HuffmanResult(
            dist=dist,
            opt_cost=Fraction(0),
            dyadic=DyadicMeasure(tuple(exponents)),
            _merges=(),
            _leaf_elements=(element,),
        )

    heap: list[tuple[int, int]] = [(numerators[i], i) for i in range(m)]
    heapq.heapify(heap)
    merges: list[tuple[int, int]] = []
    children: dict[int, tuple[int, int]] = {}
    next_id = m
    while len(heap) > 1:
        w_yes, yes_id = heapq.heappop(heap)
        w_no, no_id = heapq.heappop(heap)
        merges.append((yes_id, no_id))
        children[next_id] = (yes_id, no_id)
        heapq.heappush(heap, (w_yes + w_no, next_id))
        next_id += 1

    # depths by walking down from the root (the last created node)
    depths: dict[int, int] = {}
    stack: list[tuple[int, int]] = [(next_id - 1, 0)]
    while stack:
        node_id, depth = stack.pop()
        if node_id < m:
            depths[node_id] = depth
        else:
            yes_id, no_id = children[node_id]
            stack.append((yes_id, depth + 1))
            stack.append((no_id, depth + 1))

    exponents = [None] * dist.n
    cost_numerator = 0
    for i, element in enumerate(support):
        exponents[element - 1] = depths[i]
        cost_numerator += numerators[i] * depths[i]

    return HuffmanResult(
        dist=dist,
        opt_cost=Fraction(cost_numerator, denominator),
        dyadic=DyadicMeasure(tuple(exponents)),
        _merges=tuple(merges),
        _leaf_elements=support,
    )


def _kraft_exponent_profiles(m: int):
    """All non-decreasing exponent lists (e_1..e_m), e_i <= m-1, with sum 2^-e_i = 1.

    Scaled by 2^(m-1): weights are 2^(m-1-e) and must total 2^(m-1).  These are
    exactly the achievable leaf-depth profiles of binary trees with m leaves.
    """
    target = 1 << (m - 1)

    def gen(remaining: int, slots: int, min_exp: int, prefix: list[int]):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for e in range(min_exp, m):
            w = 1 << (m - 1 - e)
            if w > remaining:
                continue
            # even taking the current (largest allowed) weight for every slot
            # cannot happen to be too small: weights only shrink from here
            if remaining > slots * w:
                break  # larger e gives smaller w; hopeless from here on
            prefix.append(e)
            yield from gen(remaining - w, slots - 1, e, prefix)
            prefix.pop()

    yield from gen(target, m, 0, [])


def brute_force_opt(dist: Distribution) -> Fraction:
    """Minimum expected depth over all trees, by exhausting leaf-depth profiles.

    Independent of the Huffman construction: enumerates every Kraft-tight
    exponent multiset and pairs sorted masses with sorted depths (by the
    rearrangement inequality, the best assignment of a fixed depth multiset
    puts the largest mass at the smallest depth).
    """
    masses = sorted((dist.weight(e) for e in dist.support), reverse=True)
    m = len(masses)
    if m > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"support of size {m} exceeds the limit {BRUTE_FORCE_LIMIT}")
    if m == 1:
        return Fraction(0)
    best: Union[Fraction, None] = None
    for profile in _kraft_exponent_profiles(m):
        cost = sum((mass * e for mass, e in zip(masses, profile)), Fraction(0))
        if best is None or cost < best:
            best = cost
    assert best is not None
    return best
