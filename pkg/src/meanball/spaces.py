"""Ambient vector spaces: dimension, norm, and smoothness constant.

Only finite-dimensional coordinate spaces are represented.  A Hilbert /
RKHS setting is modelled by the Euclidean norm with smoothness constant
1; an L^p geometry (p >= 2) carries the constant sqrt(p - 1).  The
constant is stored explicitly so a caller may supply a conservative
value for a norm not constructed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError

EUCLIDEAN = "euclidean"
LP = "lp"


@dataclass(frozen=True)
class SpaceSpec:
    dim: int
    norm_kind: str = EUCLIDEAN
    p: float = 2.0
    smoothness_d: float = 1.0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.norm_kind not in (EUCLIDEAN, LP):
            raise ValueError(f"unknown norm kind {self.norm_kind!r}")
        if self.norm_kind == LP and self.p < 2:
            raise ValueError(f"Lp norm requires p >= 2, got {self.p}")
        if self.smoothness_d < 1:
            raise ValueError(f"smoothness_d must be >= 1, got {self.smoothness_d}")


def euclidean(dim: int) -> SpaceSpec:
    """Euclidean space; smoothness constant is exactly 1."""
    return SpaceSpec(dim=dim, norm_kind=EUCLIDEAN, p=2.0, smoothness_d=1.0)


def lp(dim: int, p: float) -> SpaceSpec:
    """L^p coordinate space with the canonical constant sqrt(p - 1)."""
    if p < 2:
        raise ValueError(f"Lp space requires p >= 2, got {p}")
    return SpaceSpec(dim=dim, norm_kind=LP, p=float(p), smoothness_d=math.sqrt(p - 1.0))


def as_vec(space: SpaceSpec, v) -> np.ndarray:
    """Validate and return ``v`` as a float64 vector of the space."""
    arr = np.asarray(v, dtype=np.float64)
    if arr.shape != (space.dim,):
        raise ValueError(f"expected vector of shape ({space.dim},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError("vector has non-finite coordinates")
    return arr


def norm(space: SpaceSpec, v) -> float:
    """Norm of ``v`` in the space: (sum |v_i|^p)^(1/p), p = 2 for Euclidean."""
    arr = as_vec(space, v)
    if space.norm_kind == EUCLIDEAN:
        return float(np.linalg.norm(arr))
    return float(np.sum(np.abs(arr) ** space.p) ** (1.0 / space.p))


def two_smooth_gap(space: SpaceSpec, x, y) -> float:
    """Slack of the smoothness inequality at (x, y).

    Returns 2||x||^2 + 2 D^2 ||y||^2 - ||x+y||^2 - ||x-y||^2, which is
    nonnegative whenever the stored constant is valid for the norm (and
    exactly zero, up to rounding, in the Euclidean case).  Used by tests.
    """
    xa = as_vec(space, x)
    ya = as_vec(space, y)
    d = space.smoothness_d
    return (
        2.0 * norm(space, xa) ** 2
        + 2.0 * d * d * norm(space, ya) ** 2
        - norm(space, xa + ya) ** 2
        - norm(space, xa - ya) ** 2
    )
