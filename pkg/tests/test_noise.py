from dataclasses import replace

import numpy as np
import pytest

from centralspin import gates as g
from centralspin.circuit import Circuit, Op, simulate
from centralspin.harness import ExperimentConfig, TauGrid, compose_circuit, contrast, single_point
from centralspin.noise import NoiseParams, noisy_expectation, noisy_run
from centralspin.qsim import excited_population
from centralspin.states import TwoPES
from centralspin.topology import default_topology

TOPO = default_topology()


def two_pes_circuit(phi, tau=1.0, steps=1):
    return compose_circuit(TwoPES(phi), tau, steps, TOPO)


def noisy_cfg(p2, steps=1, trajectories=4000, **kw):
    noise = NoiseParams(p1=0.0, p2=p2, readout_flip_0to1=0.0, readout_flip_1to0=0.0, trajectories=trajectories)
    base = ExperimentConfig(init="two_pes", backend="noisy", steps=steps, noise=noise, **kw)
    return single_point(base, 1.0, 0.0), single_point(base, 1.0, np.pi)


def test_params_validation():
    with pytest.raises(ValueError, match="p2"):
        NoiseParams(p2=0.6)
    with pytest.raises(ValueError, match="readout_flip_1to0"):
        NoiseParams(readout_flip_1to0=-0.1)
    with pytest.raises(ValueError, match="trajectories"):
        NoiseParams(trajectories=0)
    with pytest.raises(ValueError, match="unknown"):
        NoiseParams.from_dict({"p3": 0.1})


def test_params_dict_roundtrip():
    p = NoiseParams(readout_flip_0to1=[0.01, 0.02, 0.03])
    assert NoiseParams.from_dict(p.to_dict()) == p
    f01, f10 = p.flip_probs(3)
    np.testing.assert_allclose(f01, [0.01, 0.02, 0.03])
    np.testing.assert_allclose(f10, [0.05] * 3)


def test_channel_off_matches_noiseless_distribution():
    c = two_pes_circuit(0.0)
    probs = simulate(c).probabilities()
    shots = 100_000
    counts = noisy_run(c, NoiseParams.noiseless(trajectories=7), shots, seed=3)
    for k, p in enumerate(probs):
        if p > 1e-3:
            sigma = np.sqrt(p * (1 - p) / shots)
            assert abs(counts.counts.get(k, 0) / shots - p) < 4 * sigma
    support = {k for k, p in enumerate(probs) if p > 1e-14}
    assert set(counts.counts) <= support


def test_readout_flip_rate():
    shots = 100_000
    noise = NoiseParams(0.0, 0.0, 0.05, 0.0, trajectories=1)
    counts = noisy_run(Circuit(3), noise, shots, seed=11)
    sigma = np.sqrt(0.05 * 0.95 / shots)
    for q in range(3):
        assert abs(counts.excited_fraction(q) - 0.05) < 3 * sigma


def test_asymmetric_readout_expectation():
    noise = NoiseParams(0.0, 0.0, 0.03, 0.05, trajectories=2)
    c = Circuit(2, (Op(g.X, (0,)),))
    p, se = noisy_expectation(c, noise, 0, seed=0)
    assert p == pytest.approx(0.95) and se == 0.0
    assert noisy_expectation(c, noise, 1, seed=0)[0] == pytest.approx(0.03)


def test_expectation_noiseless_is_exact():
    c = two_pes_circuit(0.4)
    p, se = noisy_expectation(c, NoiseParams.noiseless(trajectories=3), c.role_map["central"], seed=5)
    assert p == pytest.approx(excited_population(simulate(c), c.role_map["central"]), abs=1e-12)
    assert se == 0.0


def test_seed_determinism():
    c = two_pes_circuit(0.0)
    noise = NoiseParams(trajectories=300)
    a = noisy_run(c, noise, 2000, seed=42)
    assert a == noisy_run(c, noise, 2000, seed=42)
    assert a != noisy_run(c, noise, 2000, seed=43)


def test_shots_fewer_than_trajectories():
    counts = noisy_run(two_pes_circuit(0.0), NoiseParams(trajectories=50), 7, seed=1)
    assert sum(counts.counts.values()) == 7


def test_depolarizing_fraction_single_gate():
    # after one noisy X on |0>, a non-identity Pauli flips back with prob 2/3 of p (X or Y)
    p = 0.3
    noise = NoiseParams(p, 0.0, 0.0, 0.0, trajectories=50_000)
    est, se = noisy_expectation(Circuit(1, (Op(g.X, (0,)),)), noise, 0, seed=2)
    assert abs(est - (1 - 2 * p / 3)) < 4 * se


def test_contrast_identical_is_zero():
    a, _ = noisy_cfg(0.03, trajectories=200)
    assert contrast(a, a) == 0.0


def test_contrast_exact_backend():
    a = single_point(ExperimentConfig(init="two_pes", backend="exact"), 1.0, 0.0)
    b = replace(a, phases=(np.pi,))
    assert contrast(a, b) == pytest.approx(np.sin(np.sqrt(2)) ** 2, abs=1e-12)


def test_contrast_drops_with_gate_error():
    clean = contrast(*noisy_cfg(0.0, trajectories=1))
    noisy, se = contrast(*noisy_cfg(0.05), with_stderr=True)
    assert noisy < clean - 3 * se


def test_contrast_monotone_in_p2():
    vals = [contrast(*noisy_cfg(p2), with_stderr=True) for p2 in (0.0, 0.01, 0.03, 0.05, 0.1)]
    for (a, sa), (b, sb) in zip(vals, vals[1:]):
        assert b <= a + 3 * np.hypot(sa, sb)


def test_full_depolarization_kills_contrast():
    a, b = noisy_cfg(0.5, trajectories=20_000)
    val, se = contrast(a, b, with_stderr=True)
    # p2=0.5 of non-identity Paulis shrinks the signal by 1 - 16/15 * 0.5 per CNOT
    n_cnot = two_pes_circuit(0.0).count("CNOT")
    floor = np.sin(np.sqrt(2)) ** 2 * (1 - 8 / 15) ** n_cnot
    assert floor < 0.002
    assert abs(val) < floor + 3 * se


def test_depth_sensitivity():
    one, s1 = contrast(*noisy_cfg(0.03, steps=1), with_stderr=True)
    two, s2 = contrast(*noisy_cfg(0.03, steps=2), with_stderr=True)
    assert two < one - 3 * np.hypot(s1, s2)


def test_noisy_run_rejects_zero_shots():
    with pytest.raises(ValueError):
        noisy_run(Circuit(1), NoiseParams(), 0, seed=0)


def test_tau_grid_validation():
    with pytest.raises(ValueError, match="points"):
        TauGrid(0, 1, 0)
