import math

import pytest

from meanball import tuning
from meanball.bounds import BoundConfig

CFG = BoundConfig(b=1.0, alpha=0.05, c1=0.5, c2=0.25)


def test_batch_example_clamped():
    # unclamped value sqrt(32 ln 40 / 100) = 1.0864812... (60-digit oracle),
    # so the c1 = 0.5 cap binds
    s = tuning.batch_ci(CFG, 100)
    assert tuning.next_lambda(s, 1, 1.0) == 0.5
    wide = BoundConfig(b=1.0, alpha=0.05, c1=0.8, c2=0.25)
    lam = tuning.next_lambda(tuning.batch_ci(wide, 100_000), 1, 1.0)
    assert lam == pytest.approx(math.sqrt(2.0 * 16.0 * math.log(40.0) / 100_000.0), rel=1e-14)


def test_sequential_t1_uses_log2():
    big = 1e8
    lam = tuning.next_lambda(tuning.sequential_cs(CFG), 1, big)
    expected = math.sqrt(2.0 * 16.0 * math.log(40.0) / (big * 1.0 * math.log(2.0)))
    assert lam == pytest.approx(expected, rel=1e-14)
    assert lam < CFG.c1  # non-binding clamp returns the raw value


def test_fixed_constant():
    s = tuning.fixed(CFG, 0.3)
    assert all(tuning.next_lambda(s, t, 123.4) == 0.3 for t in (1, 2, 10, 999))


def test_output_in_range():
    for sched in (tuning.batch_ci(CFG, 10), tuning.sequential_cs(CFG)):
        for t in (1, 3, 77):
            for sig2 in (1e-8, 0.3, 1.0, 1e6):
                lam = tuning.next_lambda(sched, t, sig2)
                assert 0.0 < lam <= CFG.c1 <= 0.8


def test_batch_constant_in_t_sequential_decreasing():
    batch = tuning.batch_ci(CFG, 500)
    vals = [tuning.next_lambda(batch, t, 2.0) for t in range(1, 20)]
    assert len(set(vals)) == 1
    seq = tuning.sequential_cs(CFG)
    vals = [tuning.next_lambda(seq, t, 1e7) for t in range(1, 50)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_domain_errors():
    with pytest.raises(ValueError):
        tuning.next_lambda(tuning.batch_ci(CFG, 10), 1, 0.0)
    with pytest.raises(ValueError):
        tuning.next_lambda(tuning.batch_ci(CFG, 10), 1, -1.0)
    with pytest.raises(ValueError):
        tuning.next_lambda(tuning.sequential_cs(CFG), 0, 1.0)


def test_schedule_validation():
    with pytest.raises(ValueError):
        tuning.batch_ci(CFG, 0)
    with pytest.raises(ValueError):
        tuning.fixed(CFG, 0.0)
    with pytest.raises(ValueError):
        tuning.fixed(CFG, 0.85)
    with pytest.raises(ValueError):
        tuning.Schedule(kind="nope", cfg=CFG)
