import json
import math

import numpy as np
import pytest

from meanball import harness
from meanball.bounds import BoundConfig, limiting_width
from meanball.distributions import point_mass, rademacher_cube, uniform_cube
from meanball.errors import ConfigError


def test_config_validation():
    d = uniform_cube(2)
    with pytest.raises(ConfigError):
        harness.ExperimentConfig(dist=d, n_grid=(10, 10), reps=5)
    with pytest.raises(ConfigError):
        harness.ExperimentConfig(dist=d, n_grid=(), reps=5)
    with pytest.raises(ConfigError):
        harness.ExperimentConfig(dist=d, n_grid=(10,), reps=0)
    with pytest.raises(ConfigError):
        harness.ExperimentConfig(dist=d, n_grid=(10,), reps=1, methods=("nope",))


def test_bit_reproducibility():
    cfg = harness.ExperimentConfig(
        dist=rademacher_cube(3), n_grid=(50, 100), reps=5, seed=99
    )
    csv1 = harness.radius_table_csv(harness.run_radius_experiment(cfg))
    csv2 = harness.radius_table_csv(harness.run_radius_experiment(cfg))
    assert csv1 == csv2
    other = harness.ExperimentConfig(
        dist=rademacher_cube(3), n_grid=(50, 100), reps=5, seed=100
    )
    assert harness.radius_table_csv(harness.run_radius_experiment(other)) != csv1


def test_csv_shape_and_header():
    cfg = harness.ExperimentConfig(dist=uniform_cube(2), n_grid=(20, 40), reps=3, seed=1)
    rows = harness.run_radius_experiment(cfg)
    text = harness.radius_table_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "n,method,mean_radius,sd_radius"
    assert len(lines) == 1 + 2 * 3  # two n values, three methods
    # deterministic methods have zero spread across repetitions
    for r in rows:
        if r.method in ("hoeffding", "oracle_bernstein"):
            assert r.sd_radius == 0.0


def test_point_mass_eb_radius_exact():
    # zero-variance stream: penalty stays 0 and the batch weight is pinned
    # at c1, so the radius is D * 4 b log(2/alpha) / (c1 n) exactly
    d = point_mass(np.zeros(2))
    n = 100
    cfg = harness.ExperimentConfig(dist=d, n_grid=(n,), reps=2, seed=5)
    rows = {r.method: r for r in harness.run_radius_experiment(cfg)}
    b = d.norm_bound
    ell = math.log(2.0 / 0.05)
    assert rows["empirical_bernstein"].mean_radius == pytest.approx(
        4.0 * b * ell / (0.5 * n), rel=1e-12
    )
    assert rows["empirical_bernstein"].sd_radius == 0.0
    # the closed-form comparator is indifferent to the degenerate data
    bc = BoundConfig(b=b, alpha=0.05)
    from meanball.bounds import hoeffding_mean_radius

    assert rows["hoeffding"].mean_radius == hoeffding_mean_radius(n, bc, b)


def test_oracle_bernstein_dominates_limit():
    d = uniform_cube(4)
    bc = BoundConfig(b=d.norm_bound, alpha=0.05)
    cfg = harness.ExperimentConfig(
        dist=d, n_grid=(10, 100, 1000), reps=1, seed=2, methods=("oracle_bernstein",)
    )
    for r in harness.run_radius_experiment(cfg):
        assert r.mean_radius >= limiting_width(math.sqrt(d.sigma_sq), bc) / math.sqrt(r.n)


def test_width_convergence_uniform5():
    rows = harness.run_width_convergence(
        uniform_cube(5), 100_000, [1000, 10_000, 100_000], alpha=0.05, seed=12
    )
    assert rows[-1].n == 100_000
    # fixed-seed reproduction of the analytic limit at n = 1e5
    assert abs(rows[-1].sqrt_n_times_radius - 3.50694) / 3.50694 <= 0.10
    assert rows[0].limit == pytest.approx(3.5066030352816462, rel=1e-12)
    # approach from above
    vals = [r.sqrt_n_times_radius for r in rows]
    assert vals[0] > vals[1] > vals[2] > rows[0].limit


def test_width_convergence_point_mass_vanishes():
    rows = harness.run_width_convergence(
        point_mass(np.zeros(2)), 10_000, [100, 1000, 10_000], seed=3
    )
    vals = [r.sqrt_n_times_radius for r in rows]
    assert vals[0] > vals[1] > vals[2]
    assert rows[0].limit == 0.0
    assert vals[-1] < 0.5


def test_width_alpha_scaling():
    # doubling alpha shrinks the limit by sqrt(log(2/2alpha)/log(2/alpha))
    d = uniform_cube(3)
    lo = harness.run_width_convergence(d, 100, [100], alpha=0.05, seed=4)[0].limit
    hi = harness.run_width_convergence(d, 100, [100], alpha=0.10, seed=4)[0].limit
    assert hi / lo == pytest.approx(
        math.sqrt(math.log(2 / 0.10) / math.log(2 / 0.05)), rel=1e-12
    )


def test_checkpoint_validation():
    with pytest.raises(ConfigError):
        harness.run_width_convergence(uniform_cube(2), 100, [200], seed=0)
    with pytest.raises(ConfigError):
        harness.run_width_convergence(uniform_cube(2), 100, [], seed=0)


def test_write_csv_and_meta(tmp_path):
    cfg = harness.ExperimentConfig(dist=uniform_cube(2), n_grid=(30,), reps=2, seed=8)
    rows = harness.run_radius_experiment(cfg)
    out = tmp_path / "radius.csv"
    harness.write_radius_csv(rows, str(out), cfg)
    assert out.read_text().startswith("n,method,mean_radius,sd_radius\n")
    meta = json.loads((tmp_path / "radius.csv.meta.json").read_text())
    assert meta["seed"] == 8
    assert meta["c1"] == 0.5 and meta["c2"] == 0.25
    assert meta["kernel_mode"] in ("numba", "numpy")
