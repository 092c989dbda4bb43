"""Every strategy on the same distributions, side by side.

Builds each strategy's tree (or Monte Carlo estimate, for the randomized
one) on a handful of distributions and prints cost against the two yardsticks:
entropy H and the optimal cost Opt. Cone rows show prolixity exactly 0; the
threshold strategy stays within redundancy 1, the vector strategy within its
budget r.
"""

from fractions import Fraction

from quiztree import Distribution, entropy, huffman, tree_cost
from quiztree.bench import zipf_distribution
from quiztree.strategy_at import AtParams, build_at_tree
from quiztree.strategy_cone import cone_optimal_tree
from quiztree.strategy_prolixity import ProlixityParams, estimate_expected_cost
from quiztree.strategy_vector import build_vector_tree


def tour(name: str, dist: Distribution) -> None:
    h = entropy(dist)
    opt = huffman(dist).opt_cost
    print(f"\n{name}  (n = {dist.n})")
    print(f"  H = {h:.4f} bits, Opt = {opt} = {float(opt):.4f}")
    rows = [
        ("at(t=3/10)", tree_cost(build_at_tree(dist, AtParams()), dist)),
        ("vector(r=2)", tree_cost(build_vector_tree(dist, 2), dist)),
        ("cone", tree_cost(cone_optimal_tree(dist), dist)),
        ("huffman", opt),
    ]
    for label, cost in rows:
        print(
            f"  {label:12s} cost = {float(cost):7.4f}"
            f"   redundancy = {float(cost) - h:6.4f}"
            f"   prolixity = {float(cost - opt):6.4f}"
        )
    estimate = estimate_expected_cost(dist, ProlixityParams(k=3, rng_seed=7), trials=4000)
    print(
        f"  {'prolixity(k=3)':12s} cost = {estimate.mean:7.4f} (mean of 4000 games)"
        f"   vs Opt + r + r^2 = {float(opt) + 0.75:.4f}"
    )


def main() -> None:
    tour("textbook", Distribution.of("2/5", "3/10", "1/5", "1/10"))
    tour("dyadic", Distribution.of("1/2", "1/4", "1/8", "1/16", "1/16"))
    tour("uniform on 12", Distribution.uniform(12))
    tour("zipf on 64", zipf_distribution(64, 1))
    heavy = [Fraction(9, 10)] + [Fraction(1, 90)] * 9
    tour("one favorite", Distribution(tuple(heavy)))


if __name__ == "__main__":
    main()
