"""Experiment harness: radius comparisons and width convergence.

Outputs are long-format CSV with header ``n,method,mean_radius,sd_radius``
(floats printed with 17 significant digits), plus a sidecar ``.meta.json``
recording the configuration and seed.  Identical config and seed produce
byte-identical tables.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bounds import (
    BoundConfig,
    bernstein_mean_radius,
    hoeffding_mean_radius,
    limiting_width,
)
from .distributions import DistributionSpec, rng_for
from .engine import EMPIRICAL_BERNSTEIN, HOEFFDING, ORACLE_BERNSTEIN
from .errors import ConfigError
from .kernels import K_BATCH, kernel_mode, replay

CSV_HEADER = "n,method,mean_radius,sd_radius"
ALL_METHODS = (HOEFFDING, ORACLE_BERNSTEIN, EMPIRICAL_BERNSTEIN)


@dataclass(frozen=True)
class ExperimentConfig:
    dist: DistributionSpec
    n_grid: tuple
    reps: int
    alpha: float = 0.05
    methods: tuple = ALL_METHODS
    seed: int = 0
    c1: float = 0.5
    c2: float = 0.25

    def __post_init__(self):
        if self.reps < 1:
            raise ConfigError(f"reps must be >= 1, got {self.reps}")
        grid = tuple(self.n_grid)
        if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError(f"n_grid must be nonempty and strictly increasing, got {grid}")
        unknown = set(self.methods) - set(ALL_METHODS)
        if unknown:
            raise ConfigError(f"unknown methods: {sorted(unknown)}")


@dataclass(frozen=True)
class RadiusRow:
    n: int
    method: str
    mean_radius: float
    sd_radius: float


def _eb_final_radii(cfg: ExperimentConfig) -> dict[int, np.ndarray]:
    """Empirical-Bernstein radius at each n for each repetition.

    Every (rep, n) cell replays the prefix of the rep's stream with the
    batch schedule tuned to that n, matching the fixed-n usage exactly.
    """
    dist = cfg.dist
    b = dist.norm_bound
    log2a = math.log(2.0 / cfg.alpha)
    n_max = max(cfg.n_grid)
    out = {n: np.empty(cfg.reps) for n in cfg.n_grid}
    for rep in range(cfg.reps):
        xs = dist.sample(rng_for(cfg.seed, rep), n_max)
        for n in cfg.n_grid:
            radii = replay(
                xs[:n], dist.mean, b, 1.0, log2a, cfg.c1, cfg.c2, K_BATCH, n, 0.0
            )[4]
            out[n][rep] = radii[-1]
    return out


def run_radius_experiment(cfg: ExperimentConfig) -> list[RadiusRow]:
    """Mean and sd of the ball radius per (n, method) over repetitions.

    The closed-form comparators use the distribution's centered bound
    (equal to the norm bound for the symmetric built-ins) and, for the
    known-variance bound, the true E||X - mu||^2.
    """
    dist = cfg.dist
    bc = BoundConfig(b=dist.norm_bound, alpha=cfg.alpha, c1=cfg.c1, c2=cfg.c2)
    rows = []
    eb = _eb_final_radii(cfg) if EMPIRICAL_BERNSTEIN in cfg.methods else {}
    for n in cfg.n_grid:
        for method in cfg.methods:
            if method == HOEFFDING:
                r = hoeffding_mean_radius(n, bc, dist.centered_bound)
                rows.append(RadiusRow(n, method, r, 0.0))
            elif method == ORACLE_BERNSTEIN:
                r = bernstein_mean_radius(n, dist.sigma_sq, bc, dist.centered_bound)
                rows.append(RadiusRow(n, method, r, 0.0))
            else:
                vals = eb[n]
                sd = float(np.std(vals, ddof=1)) if cfg.reps > 1 else 0.0
                rows.append(RadiusRow(n, method, float(np.mean(vals)), sd))
    return rows


@dataclass(frozen=True)
class WidthRow:
    n: int
    sqrt_n_times_radius: float
    limit: float


def run_width_convergence(
    dist: DistributionSpec,
    n_max: int,
    checkpoints,
    alpha: float = 0.05,
    seed: int = 0,
    c1: float = 0.5,
    c2: float = 0.25,
) -> list[WidthRow]:
    """sqrt(n) * radius along one long stream against the analytic limit.

    Each checkpoint n replays the stream prefix with the batch schedule
    tuned to that n (the weights depend on n, so prefixes cannot share
    a single pass).
    """
    checkpoints = sorted(set(int(n) for n in checkpoints))
    if not checkpoints or checkpoints[0] < 1 or checkpoints[-1] > n_max:
        raise ConfigError(f"checkpoints must lie in [1, {n_max}], got {checkpoints}")
    bc = BoundConfig(b=dist.norm_bound, alpha=alpha, c1=c1, c2=c2)
    lim = limiting_width(math.sqrt(dist.sigma_sq), bc)
    xs = dist.sample(rng_for(seed, 0), n_max)
    log2a = math.log(2.0 / alpha)
    rows = []
    for n in checkpoints:
        radii = replay(
            xs[:n], dist.mean, dist.norm_bound, 1.0, log2a, c1, c2, K_BATCH, n, 0.0
        )[4]
        rows.append(WidthRow(n, math.sqrt(n) * float(radii[-1]), lim))
    return rows


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def radius_table_csv(rows: list[RadiusRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.n},{r.method},{_fmt(r.mean_radius)},{_fmt(r.sd_radius)}")
    return "\n".join(lines) + "\n"


def width_table_csv(rows: list[WidthRow]) -> str:
    lines = ["n,sqrt_n_times_radius,limit"]
    for r in rows:
        lines.append(f"{r.n},{_fmt(r.sqrt_n_times_radius)},{_fmt(r.limit)}")
    return "\n".join(lines) + "\n"


def write_radius_csv(rows: list[RadiusRow], path: str, cfg: ExperimentConfig) -> None:
    with open(path, "w") as fh:
        fh.write(radius_table_csv(rows))
    meta = {
        "dist": cfg.dist.label(),
        "n_grid": list(cfg.n_grid),
        "reps": cfg.reps,
        "alpha": cfg.alpha,
        "methods": list(cfg.methods),
        "seed": cfg.seed,
        "c1": cfg.c1,
        "c2": cfg.c2,
        "kernel_mode": kernel_mode(),
    }
    with open(path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
