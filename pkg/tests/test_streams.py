import numpy as np
import pytest

from meanball import spaces, streams
from meanball.bounds import BoundConfig
from meanball.distributions import rng_for
from meanball.errors import DataError

SP2 = spaces.euclidean(2)
CFG = BoundConfig(b=1.0, alpha=0.05, c2=0.25)


def scripted_state(xs, lams, b=1.0, c2=0.25):
    """Independent oracle: recompute all accumulators from scratch."""
    xs = [np.asarray(x, dtype=float) for x in xs]
    v = pen = sl = 0.0
    ws = np.zeros(len(xs[0]))
    for x, lam in zip(xs, lams):
        mean = ws / sl if sl > 0 else np.zeros_like(ws)
        z2 = float(np.sum((x - mean) ** 2))
        v += z2
        pen += (-np.log1p(-lam) - lam) * z2
        sl += lam
        ws = ws + lam * x
    t = len(xs)
    return {
        "v": v,
        "pen": pen,
        "sum_lambda": sl,
        "mean": ws / sl,
        "sigma_hat_sq": (c2 * b * b + v) / (t + 1),
    }


def test_init_state():
    st = streams.init(SP2, CFG)
    assert st.t == 0
    assert st.sigma_hat_sq == 0.25  # c2 b^2 / 1 with c2 = 1/4, b = 1
    assert np.array_equal(st.weighted_mean, np.zeros(2))
    assert st.quad_variation == 0.0
    assert st.penalty == 0.0


def test_first_observation():
    st = streams.init(SP2, CFG)
    st.update([0.6, 0.0], 0.5)
    assert np.allclose(st.weighted_mean, [0.6, 0.0])
    assert st.quad_variation == pytest.approx(0.36, rel=1e-15)


def test_repeat_of_mean_adds_nothing():
    st = streams.init(SP2, CFG)
    st.update([0.5, 0.5], 0.4)
    v, pen = st.quad_variation, st.penalty
    st.update([0.5, 0.5], 0.3)  # equals the current weighted mean
    assert st.quad_variation == v
    assert st.penalty == pen


def test_two_step_worked_example():
    # x1=(1,0), x2=(0,1), lambda=0.5 both: V2 = 1 + 2 = 3, mean = (0.5, 0.5);
    # cross-checked against the scripted oracle
    st = streams.init(SP2, CFG)
    st.update([1.0, 0.0], 0.5)
    st.update([0.0, 1.0], 0.5)
    assert st.quad_variation == pytest.approx(3.0, rel=1e-15)
    assert np.allclose(st.weighted_mean, [0.5, 0.5])
    oracle = scripted_state([[1, 0], [0, 1]], [0.5, 0.5])
    assert st.quad_variation == pytest.approx(oracle["v"], rel=1e-15)
    assert st.penalty == pytest.approx(oracle["pen"], rel=1e-15)
    assert st.sigma_hat_sq == pytest.approx(oracle["sigma_hat_sq"], rel=1e-15)


def test_matches_scripted_oracle_on_random_stream():
    rng = rng_for(17, 0)
    xs = rng.uniform(-0.7, 0.7, size=(60, 2))
    lams = rng.uniform(0.05, 0.8, size=60)
    st = streams.init(SP2, CFG)
    for x, lam in zip(xs, lams):
        st.update(x, lam)
    oracle = scripted_state(list(xs), list(lams))
    assert st.quad_variation == pytest.approx(oracle["v"], rel=1e-12)
    assert st.penalty == pytest.approx(oracle["pen"], rel=1e-12)
    assert st.sum_lambda == pytest.approx(oracle["sum_lambda"], rel=1e-14)
    assert np.allclose(st.weighted_mean, oracle["mean"], rtol=1e-12)


def test_replay_determinism():
    rng = rng_for(18, 0)
    xs = rng.uniform(-0.7, 0.7, size=(40, 2))
    outs = []
    for _ in range(2):
        st = streams.init(SP2, CFG)
        for x in xs:
            st.update(x, 0.3)
        outs.append((st.sum_lambda, st.quad_variation, st.penalty, st.weighted_sum.copy()))
    assert outs[0][0] == outs[1][0]
    assert outs[0][1] == outs[1][1]
    assert outs[0][2] == outs[1][2]
    assert np.array_equal(outs[0][3], outs[1][3])


def test_sigma_hat_converges_rademacher5():
    # E||X - mu||^2 = 5 for the +/-1 cube in dimension 5
    sp = spaces.euclidean(5)
    cfg = BoundConfig(b=np.sqrt(5.0), alpha=0.05)
    st = streams.init(sp, cfg)
    rng = rng_for(19, 0)
    xs = 2.0 * rng.integers(0, 2, size=(100_000, 5)).astype(float) - 1.0
    for x in xs:
        st.update(x, 0.5)
    assert abs(st.sigma_hat_sq - 5.0) / 5.0 <= 0.05


def test_penalty_dominated_by_lambda_sq_history():
    # psi_E(lam) <= (4/3) lam^2 transfers to the accumulated penalty
    st = streams.init(SP2, CFG, keep_history=True)
    rng = rng_for(20, 0)
    for _ in range(200):
        st.update(rng.uniform(-0.7, 0.7, size=2), rng.uniform(0.01, 0.8))
    cap = sum((4.0 / 3.0) * lam * lam * z2 for lam, z2 in st.history)
    assert st.penalty <= cap * (1 + 1e-12)
    floor = sum(0.5 * lam * lam * z2 for lam, z2 in st.history)
    assert st.penalty >= floor * (1 - 1e-12)


def test_increment_bounded_by_2b_squared():
    st = streams.init(SP2, CFG, keep_history=True)
    rng = rng_for(23, 0)
    for _ in range(300):
        v = rng.normal(size=2)
        x = v / np.linalg.norm(v) * rng.uniform(0, 1.0)
        st.update(x, 0.5)
    assert all(z2 <= 4.0 * (1 + 1e-12) for _, z2 in st.history)


def test_norm_bound_validation_names_index():
    st = streams.init(SP2, CFG)
    st.update([0.1, 0.1], 0.5)
    with pytest.raises(DataError, match="observation 2"):
        st.update([3.0, 0.0], 0.5)
    # exactly at the bound is admitted
    st.update([1.0, 0.0], 0.5)


def test_lambda_validation():
    st = streams.init(SP2, CFG)
    for bad in (0.0, -0.2, 0.81, 1.0):
        with pytest.raises(ValueError):
            st.update([0.1, 0.1], bad)


def test_copy_is_independent():
    st = streams.init(SP2, CFG, keep_history=True)
    st.update([0.5, 0.0], 0.4)
    dup = st.copy()
    dup.update([0.0, 0.5], 0.4)
    assert st.t == 1 and dup.t == 2
    assert st.quad_variation != dup.quad_variation
    assert len(st.history) == 1 and len(dup.history) == 2
