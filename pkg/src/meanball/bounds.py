"""Closed-form scalar bounds and the psi_E variance-penalty function.

All logarithms are natural.  Radii are stated for the sample mean of n
observations (already divided by n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BoundConfig:
    """Parameters shared by every radius computation.

    b:            norm bound on the observations, ||X_t|| <= b.
    alpha:        miscoverage level in (0, 1).
    smoothness_d: smoothness constant of the ambient space (>= 1).
    c1:           cap on the weight sequence; must stay in (0, 0.8].
    c2:           relative weight of the b^2 prior in the variance
                  estimate, in [0, 1].  Positive values keep the first
                  weights finite.
    """

    b: float
    alpha: float = 0.05
    smoothness_d: float = 1.0
    c1: float = 0.5
    c2: float = 0.25

    def __post_init__(self):
        if not (self.b > 0 and math.isfinite(self.b)):
            raise ValueError(f"b must be positive and finite, got {self.b}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.smoothness_d < 1:
            raise ValueError(f"smoothness_d must be >= 1, got {self.smoothness_d}")
        if not 0 < self.c1 <= 0.8:
            raise ValueError(f"c1 must be in (0, 0.8], got {self.c1}")
        if not 0 <= self.c2 <= 1:
            raise ValueError(f"c2 must be in [0, 1], got {self.c2}")

    @property
    def log_2_alpha(self) -> float:
        return math.log(2.0 / self.alpha)


def psi_e(lam: float) -> float:
    """-log(1 - lam) - lam, for 0 <= lam < 1.

    Increasing, zero at zero; sandwiched between lam^2/2 (all of [0, 1))
    and (4/3) lam^2 (on [0, 0.8]).
    """
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"psi_e requires 0 <= lam < 1, got {lam}")
    return -math.log1p(-lam) - lam


def psi_e_c(lam: float, c: float) -> float:
    """Rescaled variant (-log(1 - c*lam) - c*lam) / c^2, for c*lam < 1."""
    if c <= 0:
        raise ValueError(f"scale c must be positive, got {c}")
    return psi_e(c * lam) / (c * c)


def hoeffding_mean_radius(n: int, cfg: BoundConfig, centered_bound: float) -> float:
    """Radius of the fixed-n Hoeffding ball for the sample mean.

    ``centered_bound`` bounds ||X - mu||.  Inverts the tail bound
    2 exp(-r^2 / (2 n D^2 centered_bound^2)) at level alpha.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if centered_bound <= 0:
        raise ValueError(f"centered_bound must be positive, got {centered_bound}")
    return cfg.smoothness_d * centered_bound * math.sqrt(2.0 * cfg.log_2_alpha / n)


def bernstein_mean_radius(
    n: int, sigma_sq: float, cfg: BoundConfig, centered_bound: float
) -> float:
    """Radius of the fixed-n Bernstein ball when the variance is known.

    Uses the closed-form upper bound of the tail inversion:
    [sqrt(2 n D^2 sigma^2 L) + (2/3) centered_bound L] / n with
    L = log(2/alpha).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if sigma_sq < 0:
        raise ValueError(f"sigma_sq must be >= 0, got {sigma_sq}")
    if centered_bound <= 0:
        raise ValueError(f"centered_bound must be positive, got {centered_bound}")
    ell = cfg.log_2_alpha
    d = cfg.smoothness_d
    return (math.sqrt(2.0 * n * d * d * sigma_sq * ell) + (2.0 / 3.0) * centered_bound * ell) / n


def limiting_width(sigma: float, cfg: BoundConfig) -> float:
    """Asymptotic value of sqrt(n) times the empirical-Bernstein radius.

    Equals sigma * D * sqrt(2 log(2/alpha)); also the leading term of the
    known-variance Bernstein radius.
    """
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    return sigma * cfg.smoothness_d * math.sqrt(2.0 * cfg.log_2_alpha)


# Constants of the closed-form iterated-logarithm radius.  They are
# specific to alpha = 0.05 and b = 1/4; no other pair is supported.
LIL_ALPHA = 0.05
LIL_B = 0.25
_LIL_A = 1.7
_LIL_C = 3.8
_LIL_D = 3.4
_LIL_E = 13.0


def finite_lil_radius(v_t: float, t: int, smoothness_d: float = 1.0) -> float:
    """Radius at time t of the iterated-logarithm confidence sequence.

    Valid only for streams with ||X_t|| <= 1/4 at level alpha = 0.05
    (the caller guarantees both; the hard-coded constants have no other
    instantiation).  ``v_t`` is the accumulated squared deviation from
    the running mean; values below 1 are clamped to 1.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if v_t < 0:
        raise ValueError(f"v_t must be >= 0, got {v_t}")
    if smoothness_d < 1:
        raise ValueError(f"smoothness_d must be >= 1, got {smoothness_d}")
    v = max(v_t, 1.0)
    ll = math.log(math.log(2.0 * v))
    return smoothness_d * (_LIL_A * math.sqrt(v * (ll + _LIL_C)) + _LIL_D * ll + _LIL_E) / t
