"""Streaming accumulators for the weighted mean and variance proxies.

A ``StreamState`` is single-writer: updates are strictly sequential
because the weight of step t may only depend on what was seen before
step t.  States are value-copyable via :meth:`StreamState.copy`.
"""

from __future__ import annotations

import numpy as np

from .bounds import BoundConfig, psi_e
from .errors import DataError
from .spaces import SpaceSpec, as_vec, norm

NORM_SLACK = 1e-9  # relative tolerance admitting observations at exactly b


class StreamState:
    """Running sums for one observation stream.

    Tracks the weight sum, the weighted sum and mean, the quadratic
    variation V_t = sum ||X_i - mean_{i-1}||^2, and the psi_E-weighted
    penalty sum, all against the *pre-update* weighted mean (zero before
    the first observation).  ``keep_history`` additionally records the
    (lambda_i, ||X_i - mean_{i-1}||^2) pairs for invariant checks; the
    production path does not.
    """

    __slots__ = (
        "space",
        "cfg",
        "t",
        "sum_lambda",
        "weighted_sum",
        "quad_variation",
        "penalty",
        "history",
    )

    def __init__(self, space: SpaceSpec, cfg: BoundConfig, keep_history: bool = False):
        self.space = space
        self.cfg = cfg
        self.t = 0
        self.sum_lambda = 0.0
        self.weighted_sum = np.zeros(space.dim)
        self.quad_variation = 0.0
        self.penalty = 0.0
        self.history: list[tuple[float, float]] | None = [] if keep_history else None

    @property
    def weighted_mean(self) -> np.ndarray:
        if self.t == 0:
            return np.zeros(self.space.dim)
        return self.weighted_sum / self.sum_lambda

    @property
    def sigma_hat_sq(self) -> float:
        """(c2 b^2 + V_t) / (t + 1); well-defined from t = 0 on."""
        cfg = self.cfg
        return (cfg.c2 * cfg.b * cfg.b + self.quad_variation) / (self.t + 1)

    def update(self, x, lam: float) -> None:
        """Fold in observation ``x`` with weight ``lam``.

        The squared-deviation terms use the mean *before* this update;
        the mean itself is refreshed afterwards.
        """
        if not 0.0 < lam <= 0.8:
            raise ValueError(f"lambda must be in (0, 0.8], got {lam}")
        arr = as_vec(self.space, x)
        r = norm(self.space, arr)
        if r > self.cfg.b * (1.0 + NORM_SLACK):
            raise DataError(
                f"observation {self.t + 1}: norm {r:.6g} exceeds bound {self.cfg.b:.6g}"
            )
        z_sq = norm(self.space, arr - self.weighted_mean) ** 2
        self.quad_variation += z_sq
        self.penalty += psi_e(lam) * z_sq
        self.sum_lambda += lam
        self.weighted_sum = self.weighted_sum + lam * arr
        self.t += 1
        if self.history is not None:
            self.history.append((lam, z_sq))

    def copy(self) -> "StreamState":
        dup = StreamState(self.space, self.cfg, keep_history=self.history is not None)
        dup.t = self.t
        dup.sum_lambda = self.sum_lambda
        dup.weighted_sum = self.weighted_sum.copy()
        dup.quad_variation = self.quad_variation
        dup.penalty = self.penalty
        if self.history is not None:
            dup.history = list(self.history)
        return dup


def init(space: SpaceSpec, cfg: BoundConfig, keep_history: bool = False) -> StreamState:
    """Fresh state: zero mean, zero sums, sigma_hat_sq = c2 b^2."""
    return StreamState(space, cfg, keep_history=keep_history)
