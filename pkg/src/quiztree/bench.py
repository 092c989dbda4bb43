"""Benchmark harness: sample distributions, measure strategies, emit reports.

Each row aggregates one (n, strategy) cell over a batch of sampled
distributions: mean and max redundancy (cost minus entropy), mean prolixity
(cost minus the optimal cost), and the size of the question family the
strategy draws from.  Sampling is deterministic given the seed; every sampled
distribution gets its own generator stream split from the root seed, so
batches could be farmed out in parallel without changing the output.

Float-valued samplers are snapped to exact rationals (denominator 2**32,
renormalized) before any strategy sees them; all costs downstream are exact.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Union

from .core import Distribution, entropy, tree_cost
from .errors import IOFailure, PreconditionViolated, UnknownFamily
from .huffman import huffman
from .strategy_at import DEFAULT_THRESHOLD, AtParams, build_at_tree, comparison_equality_family
from .strategy_cone import cone_family, cone_optimal_tree
from .strategy_prolixity import (
    ProlixityParams,
    estimate_expected_cost,
    prolixity_family_size_bound,
)
from .strategy_vector import build_vector_tree, vector_family_size

__all__ = [
    "BenchConfig",
    "BenchRow",
    "bench_run",
    "emit_csv",
    "emit_json",
    "write_reports",
    "zipf_distribution",
    "random_dyadic_distribution",
    "simplex_distribution",
]


# ---------------------------------------------------------------------------
# Distribution samplers
# ---------------------------------------------------------------------------


def simplex_distribution(n: int, rng: random.Random) -> Distribution:
    """Sample uniformly from the n-simplex (normalized exponential gaps)."""
    gaps = [rng.expovariate(1.0) for _ in range(n)]
    total = sum(gaps)
    return Distribution.from_floats([g / total for g in gaps])


def zipf_distribution(n: int, s: Union[int, Fraction, float] = 1) -> Distribution:
    """Weights proportional to i**-s.  Exact rationals when s is an integer."""
    if n < 1:
        raise PreconditionViolated("n must be at least 1")
    exponent = Fraction(s)
    if exponent.denominator == 1:
        weights = [Fraction(1, i ** exponent.numerator) for i in range(1, n + 1)]
        total = sum(weights)
        return Distribution(tuple(w / total for w in weights))
    floats = [i ** -float(exponent) for i in range(1, n + 1)]
    total_f = sum(floats)
    return Distribution.from_floats([f / total_f for f in floats])


def random_dyadic_distribution(n: int, rng: random.Random) -> Distribution:
    """Sample a full-support dyadic distribution by n-1 random leaf splits."""
    if n < 1:
        raise PreconditionViolated("n must be at least 1")
    exponents = [0]
    while len(exponents) < n:
        e = exponents.pop(rng.randrange(len(exponents)))
        exponents.extend((e + 1, e + 1))
    rng.shuffle(exponents)
    return Distribution(tuple(Fraction(1, 1 << e) for e in exponents))


Sampler = Callable[[int, random.Random], Distribution]


def _parse_family(family: str) -> tuple[Sampler, Optional[int]]:
    """Resolve a family name to (sampler, fixed n or None)."""
    if family == "uniform-simplex":
        return simplex_distribution, None
    if family == "dyadic-random":
        return random_dyadic_distribution, None
    if family == "zipf":
        return (lambda n, rng: zipf_distribution(n, 1)), None
    if family.startswith("zipf(") and family.endswith(")"):
        text = family[len("zipf(") : -1]
        try:
            s = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise UnknownFamily(f"bad zipf exponent {text!r}") from exc
        return (lambda n, rng: zipf_distribution(n, s)), None
    if family.startswith("file:"):
        path = Path(family[len("file:") :])
        try:
            obj = json.loads(path.read_text())
        except OSError as exc:
            raise IOFailure(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise IOFailure(f"{path} is not valid JSON: {exc}") from exc
        dist = Distribution.from_json(obj)
        return (lambda n, rng: dist), dist.n
    raise UnknownFamily(
        f"unknown family {family!r}; expected uniform-simplex, zipf, zipf(s), "
        "dyadic-random, or file:PATH"
    )


# ---------------------------------------------------------------------------
# Configuration and rows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BenchConfig:
    """One benchmark request: a strategy, sizes, a sampler, and a seed.

    `family` is one of uniform-simplex, zipf, zipf(s), dyadic-random, or
    file:PATH (a distribution JSON; its n overrides `ns`).  Strategy params
    beyond the kind: `t` for at, `r` for vector, `k`/`trials` for prolixity.
    """

    strategy: str
    ns: tuple[int, ...]
    family: str = "uniform-simplex"
    samples: int = 100
    seed: int = 0
    t: Fraction = DEFAULT_THRESHOLD
    r: int = 2
    k: int = 3
    trials: int = 200


@dataclass(frozen=True)
class BenchRow:
    n: int
    strategy: str
    mean_redundancy: float
    max_redundancy: float
    mean_prolixity: float
    family_size: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "strategy": self.strategy,
            "mean_redundancy": self.mean_redundancy,
            "max_redundancy": self.max_redundancy,
            "mean_prolixity": self.mean_prolixity,
            "family_size": self.family_size,
        }


def _strategy_label(config: BenchConfig) -> str:
    if config.strategy == "at":
        return f"at(t={config.t})"
    if config.strategy == "vector":
        return f"vector(r={config.r})"
    if config.strategy == "cone":
        return "cone"
    if config.strategy == "prolixity":
        return f"prolixity(k={config.k})"
    raise PreconditionViolated(
        f"unknown strategy {config.strategy!r}; expected at, vector, cone, or prolixity"
    )


def _family_size(config: BenchConfig, n: int) -> int:
    if config.strategy == "at":
        return len(comparison_equality_family(n))
    if config.strategy == "vector":
        return vector_family_size(n, config.r)
    if config.strategy == "cone":
        return len(cone_family(n))
    # the closed-form bound only covers n > 2^k; report 0 where undefined
    if n > 2**config.k:
        return prolixity_family_size_bound(n, config.k)
    return 0


def _measure(
    config: BenchConfig, dist: Distribution, stream: random.Random
) -> tuple[float, float]:
    """Play one sampled distribution; returns (redundancy, prolixity)."""
    opt = huffman(dist).opt_cost
    if config.strategy == "at":
        cost: Union[Fraction, float] = tree_cost(build_at_tree(dist, AtParams(config.t)), dist)
    elif config.strategy == "vector":
        cost = tree_cost(build_vector_tree(dist, config.r), dist)
    elif config.strategy == "cone":
        cost = tree_cost(cone_optimal_tree(dist), dist)
    else:
        params = ProlixityParams(k=config.k, rng_seed=stream.getrandbits(64))
        cost = estimate_expected_cost(dist, params, config.trials).mean
    if isinstance(cost, Fraction):
        # exact difference first, so cone rows report prolixity 0.0 exactly
        return float(cost) - entropy(dist), float(cost - opt)
    return cost - entropy(dist), cost - float(opt)


def bench_run(config: BenchConfig) -> tuple[BenchRow, ...]:
    """Run one benchmark; deterministic given the config (seed included)."""
    if config.samples < 1:
        raise PreconditionViolated("samples must be at least 1")
    label = _strategy_label(config)
    sampler, fixed_n = _parse_family(config.family)
    ns = (fixed_n,) if fixed_n is not None else tuple(config.ns)
    if not ns:
        raise PreconditionViolated("need at least one n")

    root = random.Random(config.seed)
    stream_seeds = [
        [root.getrandbits(64) for _ in range(config.samples)] for _ in ns
    ]

    rows = []
    for n, seeds in zip(ns, stream_seeds):
        redundancies: list[float] = []
        prolixities: list[float] = []
        for seed in seeds:
            stream = random.Random(seed)
            dist = sampler(n, stream)
            red, prol = _measure(config, dist, stream)
            redundancies.append(red)
            prolixities.append(prol)
        rows.append(
            BenchRow(
                n=n,
                strategy=label,
                mean_redundancy=sum(redundancies) / len(redundancies),
                max_redundancy=max(redundancies),
                mean_prolixity=sum(prolixities) / len(prolixities),
                family_size=_family_size(config, n),
            )
        )
    return tuple(rows)


# ---------------------------------------------------------------------------
# Report emission
# ---------------------------------------------------------------------------

_FIELDS = (
    "n",
    "strategy",
    "mean_redundancy",
    "max_redundancy",
    "mean_prolixity",
    "family_size",
)


def emit_csv(rows: tuple[BenchRow, ...]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_FIELDS)
    for row in rows:
        record = row.as_dict()
        writer.writerow([repr(record[f]) if isinstance(record[f], float) else record[f] for f in _FIELDS])
    return buffer.getvalue()


def emit_json(rows: tuple[BenchRow, ...]) -> str:
    return json.dumps([row.as_dict() for row in rows], indent=2) + "\n"


def write_reports(rows: tuple[BenchRow, ...], output: Path) -> tuple[Path, Path]:
    """Write the rows next to `output` as both CSV and JSON."""
    if output.suffix == ".json":
        json_path, csv_path = output, output.with_suffix(".csv")
    else:
        csv_path = output if output.suffix == ".csv" else output.with_suffix(".csv")
        json_path = csv_path.with_suffix(".json")
    try:
        csv_path.write_text(emit_csv(rows))
        json_path.write_text(emit_json(rows))
    except OSError as exc:
        raise IOFailure(f"cannot write report: {exc}") from exc
    return csv_path, json_path
