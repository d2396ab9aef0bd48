"""Command-line surface.

Subcommands:
  radius    batch confidence ball from a CSV of observations
  stream    sequential confidence sequence from CSV, one JSON line per ball
  simulate  experiment harness (radius comparison or width convergence)
  verify    inequality and Monte-Carlo certificates as JSON lines
  echo      re-emit a CSV through the parser (round-trip check)

Exit codes: 0 success, 2 config error, 3 data error, 4 certificate failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import secrets
import sys

import numpy as np

from . import harness, spaces, tuning, verify
from .bounds import BoundConfig
from .distributions import (
    DistributionSpec,
    point_mass,
    rademacher_cube,
    uniform_cube,
)
from .engine import ConfSeqEngine, batch_confidence_ball
from .errors import ConfigError, DataError
from .kernels import kernel_mode
from .spaces import SpaceSpec

# ---------------------------------------------------------------------------
# configuration documents
# ---------------------------------------------------------------------------

_SCHEMA = {
    "space": {"dim", "norm", "p"},
    "bound": {"b", "alpha", "c1", "c2", "smoothness_d"},
    "schedule": {"kind", "n", "lambda"},
    "experiment": {
        "kind", "dist", "n_grid", "reps", "methods", "n_max", "checkpoints", "alpha",
    },
}
_DIST_KEYS = {"kind", "dim", "scale", "point"}


@dataclasses.dataclass
class RunConfig:
    raw: dict
    space: SpaceSpec | None
    bound_kwargs: dict
    schedule_kind: str
    schedule_n: int | None
    schedule_lambda: float | None
    experiment: dict | None


def _section(doc: dict, name: str, allowed, path: str = "") -> dict:
    sec = doc[name]
    if not isinstance(sec, dict):
        raise ConfigError(f"{path}{name} must be an object")
    _reject_unknown(sec, allowed, f"{path}{name}.")
    return sec


def _reject_unknown(doc: dict, allowed, path: str) -> None:
    for key in doc:
        if key not in allowed:
            raise ConfigError(f"unknown key {path}{key}")


def _number(sec: dict, path: str, key: str, default=None):
    if key not in sec:
        return default
    v = sec[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{path}{key} must be a number, got {v!r}")
    return v


def parse_config(doc: dict) -> RunConfig:
    """Validate a JSON-compatible configuration tree.

    Unknown keys are rejected by name; numeric fields are checked
    against the same invariants the library enforces.
    """
    if not isinstance(doc, dict):
        raise ConfigError("configuration root must be an object")
    _reject_unknown(doc, _SCHEMA, "")
    space = None
    if "space" in doc:
        sec = _section(doc, "space", _SCHEMA["space"])
        dim = _number(sec, "space.", "dim")
        if dim is None:
            raise ConfigError("space.dim is required when a space section is given")
        norm_kind = sec.get("norm", "euclidean")
        try:
            if norm_kind == "euclidean":
                space = spaces.euclidean(int(dim))
            elif norm_kind == "lp":
                space = spaces.lp(int(dim), float(_number(sec, "space.", "p", 2.0)))
            else:
                raise ConfigError(f"space.norm must be 'euclidean' or 'lp', got {norm_kind!r}")
        except ValueError as e:
            raise ConfigError(f"space: {e}") from e

    bound_kwargs = {}
    if "bound" in doc:
        sec = _section(doc, "bound", _SCHEMA["bound"])
        bound_kwargs = {k: float(_number(sec, "bound.", k)) for k in sec}

    schedule_kind = tuning.SEQUENTIAL_CS
    schedule_n = None
    schedule_lambda = None
    if "schedule" in doc:
        sec = _section(doc, "schedule", _SCHEMA["schedule"])
        schedule_kind = sec.get("kind", tuning.SEQUENTIAL_CS)
        if schedule_kind not in (tuning.FIXED, tuning.BATCH_CI, tuning.SEQUENTIAL_CS):
            raise ConfigError(
                f"schedule.kind must be one of fixed/batch_ci/sequential_cs, got {schedule_kind!r}"
            )
        schedule_n = _number(sec, "schedule.", "n")
        schedule_lambda = _number(sec, "schedule.", "lambda")

    experiment = None
    if "experiment" in doc:
        sec = _section(doc, "experiment", _SCHEMA["experiment"])
        if "dist" in sec:
            _section(sec, "dist", _DIST_KEYS, "experiment.")
        experiment = sec

    return RunConfig(
        raw=doc,
        space=space,
        bound_kwargs=bound_kwargs,
        schedule_kind=schedule_kind,
        schedule_n=schedule_n,
        schedule_lambda=schedule_lambda,
        experiment=experiment,
    )


def load_config(path: str | None) -> RunConfig:
    if path is None:
        return parse_config({})
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    return parse_config(doc)


def _bound_config(cfg: RunConfig, args) -> BoundConfig:
    kwargs = dict(cfg.bound_kwargs)
    if getattr(args, "b", None) is not None:
        kwargs["b"] = args.b
    if getattr(args, "alpha", None) is not None:
        kwargs["alpha"] = args.alpha
    if "b" not in kwargs:
        raise ConfigError("the observation norm bound is required (bound.b or --b)")
    if cfg.space is not None:
        if "smoothness_d" in kwargs and kwargs["smoothness_d"] != cfg.space.smoothness_d:
            raise ConfigError(
                f"bound.smoothness_d {kwargs['smoothness_d']} does not match the "
                f"space constant {cfg.space.smoothness_d}"
            )
        kwargs.setdefault("smoothness_d", cfg.space.smoothness_d)
    try:
        return BoundConfig(**kwargs)
    except ValueError as e:
        raise ConfigError(f"bound: {e}") from e


def _dist_from_config(sec: dict) -> DistributionSpec:
    kind = sec.get("kind")
    if kind in ("rademacher", "uniform"):
        dim = _number(sec, "experiment.dist.", "dim")
        if dim is None:
            raise ConfigError("experiment.dist.dim is required")
        scale = float(_number(sec, "experiment.dist.", "scale", 1.0))
        maker = rademacher_cube if kind == "rademacher" else uniform_cube
        return maker(int(dim), scale)
    if kind == "point_mass":
        if "point" not in sec:
            raise ConfigError("experiment.dist.point is required")
        try:
            return point_mass(np.asarray(sec["point"], dtype=np.float64))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"experiment.dist.point: {e}") from e
    raise ConfigError(f"experiment.dist.kind must be rademacher/uniform/point_mass, got {kind!r}")


# ---------------------------------------------------------------------------
# CSV ingestion
# ---------------------------------------------------------------------------

def stream_from_csv(path: str, space: SpaceSpec):
    """Yield float64 vectors from a CSV of ``space.dim`` columns.

    An optional first line ``x1,...,xd`` is accepted as a header; every
    other row must hold exactly dim finite numeric fields.
    """
    header = [f"x{i + 1}" for i in range(space.dim)]
    try:
        fh = open(path)
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if lineno == 1 and fields == header:
                continue
            if len(fields) != space.dim:
                raise DataError(
                    f"{path}:{lineno}: expected {space.dim} fields, got {len(fields)}"
                )
            try:
                vec = np.array([float(f) for f in fields])
            except ValueError as e:
                raise DataError(f"{path}:{lineno}: non-numeric field ({e})") from e
            if not np.all(np.isfinite(vec)):
                raise DataError(f"{path}:{lineno}: non-finite value")
            yield vec


def infer_dim(path: str) -> int:
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    return len(line.split(","))
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}") from e
    raise DataError(f"{path}: empty file, cannot infer dimension")


def write_vectors_csv(path: str, vectors, dim: int) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(f"x{i + 1}" for i in range(dim)) + "\n")
        for v in vectors:
            fh.write(",".join(f"{x:.17g}" for x in v) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _ball_json(ball) -> str:
    return json.dumps(
        {
            "t": ball.t,
            "center": [float(c) for c in ball.center],
            "radius": float(ball.radius),
            "method": ball.method,
        }
    )


def _space_for(cfg: RunConfig, csv_path: str) -> SpaceSpec:
    if cfg.space is not None:
        return cfg.space
    return spaces.euclidean(infer_dim(csv_path))


def _out_handle(args):
    if getattr(args, "out", None):
        return open(args.out, "w")
    return sys.stdout


def cmd_radius(args) -> int:
    cfg = load_config(args.config)
    space = _space_for(cfg, args.csv)
    bc = _bound_config(cfg, args)
    samples = list(stream_from_csv(args.csv, space))
    if not samples:
        raise ConfigError(f"{args.csv}: no observations, cannot form a batch ball")
    ball = batch_confidence_ball(samples, bc, space)
    out = _out_handle(args)
    print(_ball_json(ball), file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_stream(args) -> int:
    cfg = load_config(args.config)
    space = _space_for(cfg, args.csv)
    bc = _bound_config(cfg, args)
    if cfg.schedule_kind == tuning.FIXED:
        if cfg.schedule_lambda is None:
            raise ConfigError("schedule.lambda is required for a fixed schedule")
        schedule = tuning.fixed(bc, cfg.schedule_lambda)
    elif cfg.schedule_kind == tuning.BATCH_CI:
        if cfg.schedule_n is None:
            raise ConfigError("schedule.n is required for a batch schedule")
        schedule = tuning.batch_ci(bc, int(cfg.schedule_n))
    else:
        schedule = tuning.sequential_cs(bc)
    engine = ConfSeqEngine(space, bc, schedule)
    out = _out_handle(args)
    try:
        for x in stream_from_csv(args.csv, space):
            ball = engine.observe(x)
            print(_ball_json(ball), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(63)
    print(f"meanball: no --seed given, using entropy seed {seed}", file=sys.stderr)
    return seed


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    if cfg.experiment is None:
        raise ConfigError("simulate requires an experiment section in the config")
    sec = cfg.experiment
    if "dist" not in sec:
        raise ConfigError("experiment.dist is required")
    dist = _dist_from_config(sec["dist"])
    seed = _resolve_seed(args)
    alpha = args.alpha if args.alpha is not None else float(sec.get("alpha", 0.05))
    kind = sec.get("kind", "radius")
    if args.out is None:
        raise ConfigError("simulate requires --out")
    if kind == "radius":
        try:
            exp = harness.ExperimentConfig(
                dist=dist,
                n_grid=tuple(int(n) for n in sec.get("n_grid", ())),
                reps=int(sec.get("reps", 100)),
                alpha=alpha,
                methods=tuple(sec.get("methods", harness.ALL_METHODS)),
                seed=seed,
                c1=float(cfg.bound_kwargs.get("c1", 0.5)),
                c2=float(cfg.bound_kwargs.get("c2", 0.25)),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"experiment: {e}") from e
        rows = harness.run_radius_experiment(exp)
        harness.write_radius_csv(rows, args.out, exp)
    elif kind == "width":
        try:
            rows = harness.run_width_convergence(
                dist,
                n_max=int(sec.get("n_max", 100_000)),
                checkpoints=sec.get("checkpoints", (1000, 10_000, 100_000)),
                alpha=alpha,
                seed=seed,
                c1=float(cfg.bound_kwargs.get("c1", 0.5)),
                c2=float(cfg.bound_kwargs.get("c2", 0.25)),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"experiment: {e}") from e
        with open(args.out, "w") as fh:
            fh.write(harness.width_table_csv(rows))
    else:
        raise ConfigError(f"experiment.kind must be 'radius' or 'width', got {kind!r}")
    print(f"meanball: wrote {args.out} (seed {seed}, kernels {kernel_mode()})", file=sys.stderr)
    return 0


VERIFY_SUITES = ("grid", "mc", "coverage", "lil")


def cmd_verify(args) -> int:
    load_config(args.config)  # validated for consistency; certificates are self-contained
    seed = _resolve_seed(args)
    suites = args.suite.split(",") if args.suite != "all" else list(VERIFY_SUITES)
    unknown = [s for s in suites if s not in VERIFY_SUITES]
    if unknown:
        raise ConfigError(f"unknown verify suite(s) {unknown}; choose from {VERIFY_SUITES}")
    quick = args.quick
    reports = []
    if "grid" in suites:
        reports.append(
            verify.certify_variance_penalty(
                lam_step=1e-2 if quick else 1e-3, x_step=1e-2 if quick else 1e-3
            )
        )
        reports.append(verify.certify_cosh_sinh(n_points=10_000 if quick else 1_000_000, seed=seed))
        reports.append(verify.certify_q_majorization(step=1e-3 if quick else 1e-5))
        reports.append(verify.certify_psi_sandwich())
    if "mc" in suites:
        for dist in (rademacher_cube(5), uniform_cube(5)):
            reports.append(
                verify.supermartingale_mc_check(
                    dist,
                    t_steps=20,
                    inner_draws=1000 if quick else 100_000,
                    seed=seed,
                )
            )
    if "coverage" in suites:
        reports.append(
            verify.ville_coverage(
                rademacher_cube(5),
                horizon=100 if quick else 1000,
                runs=100 if quick else 2000,
                seed=seed,
            )
        )
    if "lil" in suites:
        reports.append(
            verify.ville_coverage(
                rademacher_cube(1, scale=0.25),
                method="finite_lil",
                horizon=1000 if quick else 10_000,
                runs=100 if quick else 500,
                seed=seed,
            )
        )
        reports.append(
            verify.asymptotic_lil_check(
                rademacher_cube(1), horizon=10_000 if quick else 1_000_000, seed=seed
            )
        )
    out = _out_handle(args)
    meta = {"name": "meta", "seed": seed, "suites": suites, "quick": quick,
            "kernel_mode": kernel_mode()}
    print(json.dumps(meta), file=out)
    ok = True
    for rep in reports:
        print(json.dumps(rep.to_dict()), file=out)
        if not getattr(rep, "advisory", False):
            ok = ok and rep.passed
    if out is not sys.stdout:
        out.close()
    return 0 if ok else 4


def cmd_echo(args) -> int:
    cfg = load_config(args.config)
    space = _space_for(cfg, args.csv)
    vectors = list(stream_from_csv(args.csv, space))
    if args.out is None:
        raise ConfigError("echo requires --out")
    write_vectors_csv(args.out, vectors, space.dim)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanball",
        description="Anytime-valid confidence balls for bounded vector streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, csv=False):
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--seed", type=int, help="seed for all randomness")
        p.add_argument("--alpha", type=float, help="miscoverage level override")
        p.add_argument("--out", help="output path (default: stdout)")
        if csv:
            p.add_argument("csv", help="CSV of observations, one row per vector")
            p.add_argument("--b", type=float, help="norm bound on the observations")

    p = sub.add_parser("radius", help="batch confidence ball from a CSV sample")
    common(p, csv=True)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("stream", help="sequential confidence sequence from a CSV stream")
    common(p, csv=True)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("simulate", help="run the experiment harness")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run numerical certificates")
    common(p)
    p.add_argument(
        "--suite",
        default="all",
        help="comma-separated subset of grid,mc,coverage,lil (default: all)",
    )
    p.add_argument("--quick", action="store_true", help="reduced sizes for smoke tests")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("echo", help="re-emit a CSV through the parser")
    common(p, csv=True)
    p.set_defaults(func=cmd_echo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"meanball: config error: {e}", file=sys.stderr)
        return 2
    except DataError as e:
        print(f"meanball: data error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
