"""One randomized game, with the maintained measure printed after every step.

The strategy keeps a dyadic measure over the still-possible elements. Each
question carries mass as close to 1/2 as the step allows; consistent
elements double (exponent drops by one), the rest zero out, and on window
steps the one element straddling the window boundary merely survives. Run
with an optional seed to see different windows:

    python3 demos/watch_doubling.py [seed]
"""

import sys
from fractions import Fraction

from quiztree import Distribution, run_tr
from quiztree.strategy_prolixity import ProlixityParams, StepEvent

STEP_NAMES = {2: "heavy prefix", 3: "heavy/light split", 4: "random window"}


def show(event: StepEvent) -> None:
    answer = "yes" if event.answer else "no"
    print(f"  [{STEP_NAMES[event.step]}] {event.question.render()} -> {answer}")
    if event.step == 4:
        print(f"    window start {event.window_start} on a circle of mass {event.light_total}")
        kept = [el for el in sorted(event.boundary) if el in event.after]
        if kept:
            names = ", ".join(f"x_{el}" for el in kept)
            print(f"    {names} straddled a window edge: kept at current mass, not doubled")
    cells = []
    for el in sorted(event.before):
        before = Fraction(1, 2 ** event.before[el])
        if el not in event.after:
            cells.append(f"x_{el}: {before} -> 0")
        elif event.after[el] != event.before[el]:
            cells.append(f"x_{el}: {before} -> {Fraction(1, 2 ** event.after[el])}")
    print(f"    {';  '.join(cells)}")


def main() -> None:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    weights = ("1/8", "1/8") + ("1/16",) * 12
    dist = Distribution.of(*weights)
    secret = 5
    print(f"distribution: ({', '.join(weights)}), secret x_{secret}, seed {seed}")
    transcript = run_tr(dist, ProlixityParams(k=3, rng_seed=seed), secret, show)
    print(f"found x_{transcript.result} in {transcript.length} questions")


if __name__ == "__main__":
    main()
