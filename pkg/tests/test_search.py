import json
import math

import numpy as np
import pytest

from hanoiwalk.coins import CoinSpec
from hanoiwalk.errors import ConfigurationError, DomainError
from hanoiwalk.oracle import build_dense
from hanoiwalk.coins import initial_state
from hanoiwalk.search import (PeakDetectorConfig, ProbabilityTrace, compute_cost,
                              count_prominent_peaks, detect_first_peak, run_search)

# first peak of the dense-matrix trace at n=4, eps=1, k0=0 (window 5, rho 0.5)
DENSE_N4_TF = 6
DENSE_N4_PMAX = 0.40505166613038857


def dense_trace(n, spec, steps):
    U = build_dense(n, spec).matrix
    psi = initial_state(spec, n).flat.copy()
    N = 2 ** n
    out = []
    for _ in range(steps + 1):
        out.append(float(np.sum(np.abs(psi.reshape(3, N)[:, spec.marked]) ** 2)))
        psi = U @ psi
    return np.array(out)


def test_detector_simple_hump():
    assert detect_first_peak([0.1, 0.3, 0.5, 0.4, 0.2], PeakDetectorConfig(window=1)) == (2, 0.5)


@pytest.mark.parametrize("w", [1, 3, 5])
def test_detector_monotone_has_no_peak(w):
    assert detect_first_peak(np.linspace(0, 1, 50), PeakDetectorConfig(window=w)) is None


def test_detector_rejects_ripple():
    trace = [0.1, 0.12, 0.11, 0.3, 0.6, 0.5]
    assert detect_first_peak(trace, PeakDetectorConfig(window=3)) == (4, 0.6)


def test_detector_skips_rising_edge_ripple():
    t = np.arange(400)
    envelope = 0.2 * np.sin(np.pi * t / 200) ** 2
    ripple = 0.01 * np.sin(2 * np.pi * t / 4)
    x = envelope + ripple + 0.01
    t_f, p = detect_first_peak(x)
    assert abs(t_f - 100) <= 3
    assert p == x[:t_f + 1].max()


def test_detector_constant_trace():
    assert detect_first_peak(np.full(100, 1 / 256)) is None


def test_detector_short_trace():
    with pytest.raises(DomainError):
        detect_first_peak([0.1, 0.2])


@pytest.mark.parametrize("kwargs", [dict(window=4), dict(window=0), dict(prominence=0),
                                    dict(prominence=1.5), dict(horizon_factor=0.5)])
def test_detector_config_validation(kwargs):
    with pytest.raises(DomainError):
        PeakDetectorConfig(**kwargs)


def test_horizon():
    det = PeakDetectorConfig()
    assert det.horizon(8) == 20 * math.ceil(16 * math.log(256))
    assert PeakDetectorConfig(max_steps=100).horizon(12) == 100


@pytest.mark.parametrize("t, p, model, expected", [
    (100, 0.25, "repetition", 400.0),
    (100, 0.25, "amplification", 200.0),
    (37, 1.0, "repetition", 37.0),
    (37, 1.0, "amplification", 37.0),
])
def test_compute_cost(t, p, model, expected):
    assert compute_cost(t, p, model) == expected


def test_compute_cost_edge_cases():
    assert compute_cost(10, 0.0) == math.inf
    with pytest.raises(DomainError):
        compute_cost(10, 0.5, "bogus")


def test_run_search_matches_dense_oracle():
    spec = CoinSpec(1.0, 0)
    res = run_search(4, spec)
    ref = dense_trace(4, spec, len(res.trace) - 1)
    assert np.abs(res.trace.values - ref).max() < 1e-12
    assert res.t_f == DENSE_N4_TF
    assert detect_first_peak(ref)[0] == DENSE_N4_TF
    assert res.p_max == pytest.approx(DENSE_N4_PMAX, abs=1e-12)
    assert res.p_max == pytest.approx(ref[:res.t_f + 1].max(), abs=1e-12)


def test_run_search_initial_probability():
    res = run_search(8, CoinSpec(1.0, 0))
    assert res.trace.values[0] == pytest.approx(1 / 256, abs=1e-12)
    assert res.peak_found and res.t_f >= 1 and res.p_max >= 1 / 256
    assert res.cost == pytest.approx(res.t_f / res.p_max)


def test_run_search_unit_window_running_max():
    det = PeakDetectorConfig(window=1)
    for eps in (0.5, 1.0, 2.0):
        res = run_search(7, CoinSpec(eps, 1), det)
        assert res.peak_found
        assert res.p_max == res.trace.values[:res.t_f + 1].max()


def test_bias_raises_success_probability():
    lo = run_search(8, CoinSpec(1.0, 1))
    hi = run_search(8, CoinSpec(2.0, 1))
    assert hi.p_max > lo.p_max


def test_requires_mark():
    with pytest.raises(ConfigurationError):
        run_search(4, CoinSpec(1.0))


def test_determinism():
    a = run_search(7, CoinSpec(1.7, 3))
    b = run_search(7, CoinSpec(1.7, 3))
    assert np.array_equal(a.trace.values, b.trace.values)
    assert (a.t_f, a.p_max) == (b.t_f, b.p_max)


@pytest.mark.parametrize("n", [6, 8])
@pytest.mark.parametrize("eps", [1.0, 1.7])
def test_root_and_top_vertex_symmetric(n, eps):
    a = run_search(n, CoinSpec(eps, 0))
    b = run_search(n, CoinSpec(eps, 2 ** (n - 1)))
    assert a.t_f == b.t_f
    assert a.p_max == pytest.approx(b.p_max, abs=1e-12)


def test_no_peak_when_confined():
    res = run_search(6, CoinSpec(3.0, 1), PeakDetectorConfig(max_steps=5000))
    assert not res.peak_found
    assert res.cost == math.inf and res.t_f is None
    assert len(res.trace) == 5001
    np.testing.assert_allclose(res.trace.values, 1 / 64, atol=1e-14)


def test_cost_grows_towards_confinement():
    costs = [run_search(8, CoinSpec(e, 1)).cost for e in (2.5, 2.6, 2.7, 2.8, 2.9)]
    assert all(a < b for a, b in zip(costs, costs[1:]))


def test_oscillatory_trace():
    res = run_search(8, CoinSpec(1.0, 0))
    assert count_prominent_peaks(res.trace) >= 2


def test_result_serialises():
    res = run_search(5, CoinSpec(1.5, 2))
    d = json.loads(json.dumps(res.as_dict()))
    assert set(d) >= {"n", "epsilon", "marked", "t_f", "p_max", "cost", "model", "detector"}
    assert d["detector"]["window"] == 5
    assert isinstance(res.trace, ProbabilityTrace) and res.trace.marked == 2
