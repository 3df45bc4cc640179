"""Seeded experiment campaigns: random low-rank instances, dichotomy sweeps.

Instances are box unions with endpoints on a power-of-two grid, rejection
sampled to a measured rank bound (the dichotomy's interesting regime is a
low-rank complement).  Reports embed full certificates and are byte-stable
under replay: anything nondeterministic (wall clock) stays out of the body.
"""

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .dichotomy import TARGET_3D, pair_dichotomy, triple_dichotomy
from .geometry import Box, BoxUnionSet
from .jsonio import enc_box_union, enc_outcome, enc_rational
from .matching import dyadic_regions
from .patterns import enumerate_patterns, make_pattern
from .rank import brute_force_rank, rank


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int
    dimension: int
    box_count: int
    grid_denominator: int
    rank_cap: int
    pattern_size_max: int
    depth: int
    min_gap: str
    sample_density: int
    instance_count: int

    def validate(self):
        if self.dimension not in (2, 3):
            raise ValueError("dimension must be 2 or 3")
        d = self.grid_denominator
        if d < 2 or d & (d - 1):
            raise ValueError("grid_denominator must be a power of two")
        for field in ("box_count", "rank_cap", "pattern_size_max", "depth",
                      "sample_density", "instance_count"):
            if getattr(self, field) < 1:
                raise ValueError(f"{field} must be positive")
        if Fraction(self.min_gap) <= 0:
            raise ValueError("min_gap must be positive")
        return self


def config_from_dict(obj) -> ExperimentConfig:
    return ExperimentConfig(
        seed=obj["seed"],
        dimension=obj["dimension"],
        box_count=obj["box_count"],
        grid_denominator=obj["grid_denominator"],
        rank_cap=obj["rank_cap"],
        pattern_size_max=obj.get("pattern_size_max", 6),
        depth=obj["depth"],
        min_gap=obj["min_gap"],
        sample_density=obj.get("sample_density", 3),
        instance_count=obj["instance_count"],
    ).validate()


def _instance_rng(seed, index):
    return random.Random(f"simplex-ramsey:{seed}:{index}")


def random_low_rank_set(rng, dim, box_count, denom, rank_cap, max_tries=500):
    """Random box union with measured rank at most rank_cap (rejection)."""
    for _ in range(max_tries):
        boxes = []
        for _ in range(box_count):
            ivs = []
            for _ in range(dim):
                a, b = sorted(rng.sample(range(denom + 1), 2))
                ivs.append((Fraction(a, denom), Fraction(b, denom)))
            boxes.append(Box(ivs))
        S = BoxUnionSet(dim, boxes)
        if rank(S, rank_cap + 1).value <= rank_cap:
            return S
    raise RuntimeError("rejection sampling failed to find a low-rank instance")


def run_instance(config: ExperimentConfig, index: int, oracle=False):
    rng = _instance_rng(config.seed, index)
    S = random_low_rank_set(
        rng, config.dimension, config.box_count, config.grid_denominator, config.rank_cap
    )
    measured = rank(S, config.rank_cap + 1).value
    M = config.rank_cap + 1
    regions = dyadic_regions(config.depth, Fraction(config.min_gap), config.dimension)
    runs = []
    counts = {"copy": 0, "witness": 0, "failure": 0}
    if config.dimension == 2:
        patterns = [
            P
            for size in range(2, config.pattern_size_max + 1, 2)
            for P in enumerate_patterns(2, size)
        ]
        for P in patterns:
            for D in regions:
                out = pair_dichotomy(S, P, D, M, q=config.sample_density, depth=config.depth)
                counts[out.branch] += 1
                runs.append(
                    {
                        "pattern": [list(b) for b in P.blocks],
                        "region": [enc_rational(D.a), enc_rational(D.b)],
                        "outcome": enc_outcome(out),
                    }
                )
    else:
        for D in regions:
            out = triple_dichotomy(S, D, M, depth=config.depth)
            counts[out.branch] += 1
            runs.append(
                {
                    "pattern": [list(b) for b in make_pattern(3, list(TARGET_3D)).blocks],
                    "region": [enc_rational(D.a), enc_rational(D.b)],
                    "outcome": enc_outcome(out),
                }
            )
    rec = {
        "index": index,
        "set": enc_box_union(S),
        "measured_rank": measured,
        "counts": counts,
        "runs": runs,
    }
    if oracle:
        rec["oracle_rank"] = brute_force_rank(S, config.rank_cap + 1)
    return rec


def run_campaign(config: ExperimentConfig, jobs: int = 1, oracle=False):
    """Run all instances; deterministic given the config (and hence the seed).

    Instance work is independent; with jobs > 1 instances run in a process
    pool and are aggregated in index order regardless of completion order.
    """
    config.validate()
    indices = list(range(config.instance_count))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            instances = list(pool.map(partial(run_instance, config, oracle=oracle), indices))
    else:
        instances = [run_instance(config, i, oracle=oracle) for i in indices]
    aggregate = {"copy": 0, "witness": 0, "failure": 0}
    for rec in instances:
        for key in aggregate:
            aggregate[key] += rec["counts"][key]
    return {
        "config": asdict(config),
        "instances": instances,
        "aggregate": aggregate,
    }
