"""meanball: anytime-valid confidence balls for bounded vector streams.

Feed bounded observations one at a time and read off a ball that
contains the true mean simultaneously over all times with probability
at least 1 - alpha, or compute a fixed-sample ball for a batch.  The
data-driven radius adapts to the observed variance; Hoeffding-type,
known-variance Bernstein-type, and iterated-logarithm radii are
available for comparison, along with a numerical certificate suite for
the inequalities the guarantees rest on.
"""

from .bounds import (
    BoundConfig,
    bernstein_mean_radius,
    finite_lil_radius,
    hoeffding_mean_radius,
    limiting_width,
    psi_e,
    psi_e_c,
)
from .distributions import (
    DistributionSpec,
    custom,
    point_mass,
    rademacher_cube,
    rng_for,
    uniform_cube,
)
from .engine import (
    EMPIRICAL_BERNSTEIN,
    FINITE_LIL,
    HOEFFDING,
    ORACLE_BERNSTEIN,
    ConfidenceBall,
    ConfSeqEngine,
    batch_confidence_ball,
)
from .errors import ConfigError, DataError, VerificationFailure
from .kernels import NUMBA_ENABLED, kernel_mode
from .spaces import SpaceSpec, euclidean, lp, norm, two_smooth_gap
from .streams import StreamState
from .tuning import Schedule, batch_ci, fixed, next_lambda, sequential_cs

__version__ = "0.1.0"

__all__ = [
    "BoundConfig",
    "ConfidenceBall",
    "ConfSeqEngine",
    "ConfigError",
    "DataError",
    "DistributionSpec",
    "EMPIRICAL_BERNSTEIN",
    "FINITE_LIL",
    "HOEFFDING",
    "NUMBA_ENABLED",
    "ORACLE_BERNSTEIN",
    "Schedule",
    "SpaceSpec",
    "StreamState",
    "VerificationFailure",
    "batch_ci",
    "batch_confidence_ball",
    "bernstein_mean_radius",
    "custom",
    "euclidean",
    "finite_lil_radius",
    "fixed",
    "hoeffding_mean_radius",
    "kernel_mode",
    "limiting_width",
    "lp",
    "next_lambda",
    "norm",
    "point_mass",
    "psi_e",
    "psi_e_c",
    "rademacher_cube",
    "rng_for",
    "sequential_cs",
    "two_smooth_gap",
    "uniform_cube",
]
