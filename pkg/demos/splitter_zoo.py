"""The combinatorics under optimal trees, at desk scale.

A set splits a dyadic distribution when it carries mass exactly 1/2; a
question family supports optimal trees for every distribution exactly when it
contains a splitter of each one. This script walks the small cases: every
dyadic distribution on 4 elements with its splitters and tail, the minimum
hitting families, and the hard distribution whose splitters are scarce in
every size class.
"""

from fractions import Fraction

from quiztree import (
    DyadicMeasure,
    enumerate_dyadic,
    hard_distribution,
    min_dyadic_hitter,
    mrd,
    rho,
    splitters,
    tail,
)


def show(mu: DyadicMeasure) -> None:
    weights = ", ".join("0" if e is None else f"1/{2**e}" for e in mu.exponents)
    sets = " ".join(
        "{" + ",".join(map(str, sorted(s))) + "}" for s in splitters(mu).element_sets()
    )
    run = tail(mu)
    suffix = f"   tail {{{','.join(map(str, sorted(run)))}}}" if run else ""
    print(f"  ({weights}):  splitters {sets}{suffix}")


def main() -> None:
    print("every dyadic distribution on 4 elements, up to relabeling:")
    for mu in enumerate_dyadic(4, up_to_permutation=True):
        show(mu)

    print("\nminimum families that hit them all:")
    for n in (2, 3, 4):
        found = min_dyadic_hitter(n)
        described = ", ".join(q.render() for q in found.family)
        noun = "question suffices" if found.size == 1 else "questions suffice"
        print(f"  n={n}: {found.size} {noun} (lower bound {1 / rho(n)}): {described}")

    print("\nthe hard distribution (eps=1/5, a=2) keeps splitters scarce:")
    mu = hard_distribution(Fraction(1, 5), 2)
    show(mu)
    report = mrd(splitters(mu))
    print(f"  densities by size: {[(size, str(d)) for size, d in report.by_size if d]}")
    print(f"  peak relative density {report.maximum} at sizes {report.argmax_sizes},")
    print("  so any family hitting all its relabelings needs ~15 sets per size class")


if __name__ == "__main__":
    main()
