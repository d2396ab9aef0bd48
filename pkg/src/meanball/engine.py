"""Confidence-ball engine: one instance per observation stream.

Each observation yields a ball that is simultaneously valid over all
times at the configured level.  The ball's radius is the closed form

    D * (penalty / (4b) + 4b * log(2/alpha)) / sum(lambda_i),

centered at the lambda-weighted mean.  An engine additionally tracks the
unweighted mean and its quadratic variation so the iterated-logarithm
ball (plain-mean center) can be read off the same stream.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import tuning
from .bounds import LIL_ALPHA, LIL_B, BoundConfig, finite_lil_radius
from .kernels import LAMBDA_FLOOR
from .spaces import SpaceSpec, as_vec, norm
from .streams import StreamState

EMPIRICAL_BERNSTEIN = "empirical_bernstein"
FINITE_LIL = "finite_lil"
HOEFFDING = "hoeffding"
ORACLE_BERNSTEIN = "oracle_bernstein"


@dataclass(frozen=True)
class ConfidenceBall:
    t: int
    center: np.ndarray
    radius: float
    method: str
    space: SpaceSpec

    def contains(self, candidate) -> bool:
        """Inclusive membership: ||candidate - center|| <= radius."""
        arr = as_vec(self.space, candidate)
        return norm(self.space, arr - self.center) <= self.radius


class ConfSeqEngine:
    """Single-writer stream consumer producing anytime-valid balls."""

    def __init__(
        self,
        space: SpaceSpec,
        cfg: BoundConfig,
        schedule: tuning.Schedule,
        keep_history: bool = False,
    ):
        if cfg.smoothness_d != space.smoothness_d:
            raise ValueError(
                f"smoothness mismatch: config has {cfg.smoothness_d}, "
                f"space has {space.smoothness_d}"
            )
        self.space = space
        self.cfg = cfg
        self.schedule = schedule
        self.state = StreamState(space, cfg, keep_history=keep_history)
        self._plain_sum = np.zeros(space.dim)
        self._lil_quad_variation = 0.0
        self.lambdas: list[float] | None = [] if keep_history else None

    @property
    def t(self) -> int:
        return self.state.t

    def observe(self, x) -> ConfidenceBall:
        """Fold in one observation and return the current ball.

        The weight for this step is computed from the variance estimate
        *before* the observation is seen (predictability).
        """
        st = self.state
        lam = tuning.next_lambda(self.schedule, st.t + 1, st.sigma_hat_sq)
        if lam < LAMBDA_FLOOR:
            warnings.warn(
                f"step {st.t + 1}: lambda {lam:.3e} below floor, clamping to {LAMBDA_FLOOR}"
            )
            lam = LAMBDA_FLOOR
        arr = as_vec(self.space, x)
        # unweighted-mean bookkeeping for the iterated-logarithm ball,
        # using the pre-update plain mean
        plain_mean = self._plain_sum / st.t if st.t > 0 else np.zeros(self.space.dim)
        lil_z_sq = norm(self.space, arr - plain_mean) ** 2
        st.update(arr, lam)
        self._lil_quad_variation += lil_z_sq
        self._plain_sum = self._plain_sum + arr
        if self.lambdas is not None:
            self.lambdas.append(lam)
        return self.ball()

    def ball(self) -> ConfidenceBall:
        st = self.state
        if st.t == 0:
            raise ValueError("no observations yet")
        cfg = self.cfg
        fb = 4.0 * cfg.b
        radius = (
            cfg.smoothness_d
            * (st.penalty / fb + fb * cfg.log_2_alpha)
            / st.sum_lambda
        )
        return ConfidenceBall(
            t=st.t,
            center=st.weighted_mean,
            radius=radius,
            method=EMPIRICAL_BERNSTEIN,
            space=self.space,
        )

    def lil_ball(self) -> ConfidenceBall:
        """Iterated-logarithm ball around the plain mean.

        Only defined for alpha = 0.05 and b = 1/4, the instantiation the
        closed-form constants belong to.  Its quadratic variation is the
        one accumulated against the unweighted running mean.
        """
        cfg = self.cfg
        if cfg.alpha != LIL_ALPHA or cfg.b != LIL_B:
            raise ValueError(
                f"iterated-logarithm ball requires alpha={LIL_ALPHA} and b={LIL_B}, "
                f"got alpha={cfg.alpha}, b={cfg.b}"
            )
        t = self.state.t
        if t == 0:
            raise ValueError("no observations yet")
        radius = finite_lil_radius(self._lil_quad_variation, t, cfg.smoothness_d)
        return ConfidenceBall(
            t=t,
            center=self._plain_sum / t,
            radius=radius,
            method=FINITE_LIL,
            space=self.space,
        )


def batch_confidence_ball(samples, cfg: BoundConfig, space: SpaceSpec) -> ConfidenceBall:
    """Final ball of a fixed-size sample run with the batch schedule.

    The center depends on the sample order (the running mean inside the
    penalty is sequential); permuting the input is legitimate but yields
    a different ball.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("batch_confidence_ball requires at least one sample")
    engine = ConfSeqEngine(space, cfg, tuning.batch_ci(cfg, len(samples)))
    ball = None
    for x in samples:
        ball = engine.observe(x)
    return ball
