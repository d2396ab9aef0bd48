"""Sampling distributions for experiments and certificates.

Each spec knows its true mean, the expected squared deviation
E||X - mu||^2, a norm bound b with ||X|| <= b, and a centered bound on
||X - mu||.  The cube families are symmetric about zero, so the two
bounds coincide there; custom asymmetric mixes must state the centered
bound explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

RADEMACHER = "rademacher"
UNIFORM = "uniform"
POINT_MASS = "point_mass"
CUSTOM = "custom"


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """Counter-style generator keyed by (seed, *key); same key, same stream."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=key))
    )


@dataclass(frozen=True)
class DistributionSpec:
    kind: str
    dim: int
    scale: float = 1.0
    point: np.ndarray | None = None
    coords: tuple = ()
    norm_bound: float = 0.0
    centered_bound: float = 0.0
    mean: np.ndarray = field(default=None)
    sigma_sq: float = 0.0

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == RADEMACHER:
            return self.scale * (
                2.0 * rng.integers(0, 2, size=(n, self.dim)).astype(np.float64) - 1.0
            )
        if self.kind == UNIFORM:
            return rng.uniform(-self.scale, self.scale, size=(n, self.dim))
        if self.kind == POINT_MASS:
            return np.tile(self.point, (n, 1))
        out = np.empty((n, self.dim))
        for j, spec in enumerate(self.coords):
            if spec[0] == RADEMACHER:
                out[:, j] = spec[1] * (2.0 * rng.integers(0, 2, size=n) - 1.0)
            elif spec[0] == UNIFORM:
                out[:, j] = rng.uniform(spec[1], spec[2], size=n)
            else:
                out[:, j] = spec[1]
        return out

    def label(self) -> str:
        if self.kind in (RADEMACHER, UNIFORM):
            suffix = "" if self.scale == 1.0 else f"(scale={self.scale:g})"
            return f"{self.kind}^{self.dim}{suffix}"
        return self.kind


def rademacher_cube(dim: int, scale: float = 1.0) -> DistributionSpec:
    """Independent +/-scale coordinates: mu = 0, E||X-mu||^2 = dim*scale^2."""
    return DistributionSpec(
        kind=RADEMACHER,
        dim=dim,
        scale=scale,
        norm_bound=scale * np.sqrt(dim),
        centered_bound=scale * np.sqrt(dim),
        mean=np.zeros(dim),
        sigma_sq=dim * scale * scale,
    )


def uniform_cube(dim: int, scale: float = 1.0) -> DistributionSpec:
    """Independent uniform[-scale, scale] coordinates: E||X-mu||^2 = dim*scale^2/3."""
    return DistributionSpec(
        kind=UNIFORM,
        dim=dim,
        scale=scale,
        norm_bound=scale * np.sqrt(dim),
        centered_bound=scale * np.sqrt(dim),
        mean=np.zeros(dim),
        sigma_sq=dim * scale * scale / 3.0,
    )


def point_mass(v, norm_bound: float | None = None) -> DistributionSpec:
    """Degenerate stream at v.  ||X - mu|| = 0; the norm bound defaults to
    ||v|| (or 1 for the zero vector, so weight configs stay valid)."""
    arr = np.asarray(v, dtype=np.float64)
    b = float(np.linalg.norm(arr))
    if norm_bound is None:
        norm_bound = b if b > 0 else 1.0
    if norm_bound < b:
        raise ValueError(f"norm_bound {norm_bound} < ||v|| = {b}")
    return DistributionSpec(
        kind=POINT_MASS,
        dim=arr.shape[0],
        point=arr,
        norm_bound=float(norm_bound),
        centered_bound=float(norm_bound),
        mean=arr.copy(),
        sigma_sq=0.0,
    )


def custom(coords, centered_bound: float | None = None) -> DistributionSpec:
    """Per-coordinate mix of ("rademacher", scale), ("uniform", lo, hi),
    ("point", c).  A centered bound must be given unless the mean is zero."""
    coords = tuple(tuple(c) for c in coords)
    mean = np.empty(len(coords))
    var = 0.0
    sup_sq = 0.0
    for j, spec in enumerate(coords):
        if spec[0] == RADEMACHER:
            mean[j] = 0.0
            var += spec[1] ** 2
            sup_sq += spec[1] ** 2
        elif spec[0] == UNIFORM:
            lo, hi = spec[1], spec[2]
            if hi < lo:
                raise ValueError(f"coordinate {j}: empty uniform range [{lo}, {hi}]")
            mean[j] = (lo + hi) / 2.0
            var += (hi - lo) ** 2 / 12.0
            sup_sq += max(abs(lo), abs(hi)) ** 2
        elif spec[0] == "point":
            mean[j] = spec[1]
            sup_sq += spec[1] ** 2
        else:
            raise ValueError(f"coordinate {j}: unknown kind {spec[0]!r}")
    norm_bound = float(np.sqrt(sup_sq)) if sup_sq > 0 else 1.0
    if centered_bound is None:
        if np.any(mean != 0.0):
            raise ValueError(
                "custom distribution with nonzero mean needs an explicit centered_bound"
            )
        centered_bound = norm_bound
    return DistributionSpec(
        kind=CUSTOM,
        dim=len(coords),
        coords=coords,
        norm_bound=norm_bound,
        centered_bound=float(centered_bound),
        mean=mean,
        sigma_sq=float(var),
    )
