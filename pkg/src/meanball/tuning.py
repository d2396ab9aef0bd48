"""Predictable weight schedules.

The weight for step t is a function of statistics available *before*
observing X_t (the engine enforces this call order).  Two data-driven
schedules are provided: one tuned for a known sample size n, one for
open-ended streams with an extra log(1+t) factor; a fixed schedule is
kept for tests and degenerate cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import BoundConfig

FIXED = "fixed"
BATCH_CI = "batch_ci"
SEQUENTIAL_CS = "sequential_cs"


@dataclass(frozen=True)
class Schedule:
    kind: str
    cfg: BoundConfig
    n: int | None = None
    lam: float | None = None

    def __post_init__(self):
        if self.kind == BATCH_CI:
            if self.n is None or self.n < 1:
                raise ValueError(f"batch schedule needs n >= 1, got {self.n}")
        elif self.kind == FIXED:
            if self.lam is None or not 0.0 < self.lam <= 0.8:
                raise ValueError(f"fixed lambda must be in (0, 0.8], got {self.lam}")
        elif self.kind != SEQUENTIAL_CS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")


def batch_ci(cfg: BoundConfig, n: int) -> Schedule:
    return Schedule(kind=BATCH_CI, cfg=cfg, n=n)


def sequential_cs(cfg: BoundConfig) -> Schedule:
    return Schedule(kind=SEQUENTIAL_CS, cfg=cfg)


def fixed(cfg: BoundConfig, lam: float) -> Schedule:
    return Schedule(kind=FIXED, cfg=cfg, lam=lam)


def next_lambda(schedule: Schedule, t: int, sigma_hat_sq_prev: float) -> float:
    """Weight for step t given the variance estimate from step t-1.

    batch:      min(sqrt(2 (4b)^2 L / (sigma^2 n)), c1)
    sequential: min(sqrt(2 (4b)^2 L / (sigma^2 t log(1+t))), c1)
    fixed:      the constant.

    L = log(2/alpha).  The output always lies in (0, c1].
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    cfg = schedule.cfg
    if schedule.kind == FIXED:
        return schedule.lam
    if sigma_hat_sq_prev <= 0.0:
        raise ValueError(
            f"sigma_hat_sq_prev must be positive, got {sigma_hat_sq_prev} (set c2 > 0)"
        )
    num = 2.0 * (4.0 * cfg.b) ** 2 * cfg.log_2_alpha
    if schedule.kind == BATCH_CI:
        den = sigma_hat_sq_prev * schedule.n
    else:
        den = sigma_hat_sq_prev * t * math.log1p(float(t))
    return min(math.sqrt(num / den), cfg.c1)
