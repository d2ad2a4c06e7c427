import numpy as np
import pytest

from sparse_rips import (OracleSizeError, WeightContext, from_points,
                         run_battery)
from sparse_rips.verify import (check_betti, check_c_approximation,
                                check_diagram_equality, check_interleaving,
                                check_nets)


def test_battery_passes_on_random_instance():
    rng = np.random.default_rng(71)
    m = from_points(rng.random((20, 2)))
    results = run_battery(m, 1.0 / 3.0, k=2, samples=16, seed=3)
    assert len(results) == 5
    for r in results:
        assert r.ok, r.line()
        assert r.line().startswith("PASS")


def test_battery_guard_refuses_large_instances():
    rng = np.random.default_rng(72)
    m = from_points(rng.random((65, 2)))
    with pytest.raises(OracleSizeError):
        run_battery(m, 0.25)


def test_individual_checks_on_explicit_context():
    rng = np.random.default_rng(73)
    m = from_points(rng.random((15, 3)))
    ctx = WeightContext.build(m, 0.1)
    assert check_interleaving(m, ctx, n_pairs=50,
                              rng=np.random.default_rng(1)).ok
    assert check_nets(m, ctx, samples=8, rng=np.random.default_rng(2)).ok
    assert check_betti(m, ctx, k=2, samples=4,
                       rng=np.random.default_rng(3)).ok
    assert check_diagram_equality(m, ctx, k=2).ok
    assert check_c_approximation(m, ctx, k=2).ok


def test_failing_check_reports_witness():
    import math
    from sparse_rips.greedy import DeletionSchedule
    rng = np.random.default_rng(74)
    m = from_points(rng.random((25, 2)))
    good = WeightContext.build(m, 1.0 / 3.0)
    bad = WeightContext(epsilon=good.epsilon,
                        schedule=DeletionSchedule(epsilon=good.epsilon,
                                                  t=good.schedule.t / 2.0),
                        metric=m)
    r = check_nets(m, bad, samples=64, rng=np.random.default_rng(4))
    assert not r.ok
    assert "FAIL" in r.line()
    assert "point" in r.detail or "pair" in r.detail
