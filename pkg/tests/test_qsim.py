import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from centralspin import gates as g
from centralspin.circuit import Circuit, Op, embed_1q, embed_2q, simulate
from centralspin.exact import build_hamiltonian, exact_evolve
from centralspin.qsim import (
    StateVector,
    apply_1q,
    apply_2q,
    excited_population,
    new_basis_state,
    sample_counts,
)
from centralspin.states import ExcitedCentral, target_state
from conftest import random_state, random_unitary

X = g.matrix_of(g.X)
H = g.matrix_of(g.H)
CNOT = g.matrix_of(g.CNOT)
SWAP = g.matrix_of(g.SWAP)


@pytest.mark.parametrize(
    "n, idx, expected",
    [(1, 0, [1, 0]), (2, 2, [0, 0, 1, 0])],
)
def test_new_basis_state(n, idx, expected):
    np.testing.assert_array_equal(new_basis_state(n, idx).amplitudes, expected)


def test_new_basis_state_top_index():
    s = new_basis_state(3, 7)
    assert s.amplitudes[7] == 1 and np.count_nonzero(s.amplitudes) == 1


@pytest.mark.parametrize("idx", [-1, 4])
def test_new_basis_state_out_of_range(idx):
    with pytest.raises(ValueError):
        new_basis_state(2, idx)


def test_qubit_zero_is_least_significant():
    s = apply_1q(new_basis_state(2, 0), X, 0)
    assert np.argmax(np.abs(s.amplitudes)) == 1


def test_hadamard():
    s = apply_1q(new_basis_state(1, 0), H, 0)
    np.testing.assert_allclose(s.amplitudes, [1 / np.sqrt(2)] * 2, atol=1e-15)


def test_a_phi_rotation_amplitudes():
    gate = g.u3_matrix(2 * np.arccos(1 / np.sqrt(3)), 0, 0)
    s = apply_1q(new_basis_state(1, 0), gate, 0)
    np.testing.assert_allclose(s.amplitudes, [1 / np.sqrt(3), np.sqrt(2 / 3)], atol=1e-15)


def test_apply_1q_rejects_non_unitary():
    with pytest.raises(ValueError):
        apply_1q(new_basis_state(1, 0), np.array([[1, 1], [0, 1]]), 0)


def test_cnot_control_high():
    # CNOT(control=1, target=0) on |10> -> |11>
    s = apply_2q(new_basis_state(2, 0b10), CNOT, q_low=0, q_high=1)
    assert np.argmax(np.abs(s.amplitudes)) == 0b11


def test_swap_exchanges_terms():
    a, b = 0.6, 0.8j
    s = StateVector(2, [0, a, b, 0])
    out = apply_2q(s, SWAP, 0, 1)
    np.testing.assert_allclose(out.amplitudes, [0, b, a, 0])


def test_bell_preparation():
    s = StateVector(2, np.array([1, 1, 0, 0]) / np.sqrt(2))
    out = apply_2q(s, CNOT, q_low=1, q_high=0)  # control 0, target 1
    np.testing.assert_allclose(out.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15)


def test_apply_2q_equal_indices():
    with pytest.raises(ValueError):
        apply_2q(new_basis_state(2, 0), CNOT, 1, 1)


def test_excited_population_examples():
    assert excited_population(new_basis_state(1, 0), 0) == 0.0
    s = StateVector(2, np.array([0, 1, 1, 0]) / np.sqrt(2))
    assert excited_population(s, 1) == pytest.approx(0.5, abs=1e-15)


def test_excited_population_after_exact_evolution():
    # single bath spin: population cos^2(tau) vanishes at pi/2
    psi = exact_evolve(target_state(ExcitedCentral(1)), np.pi / 2, build_hamiltonian(1))
    assert excited_population(psi, 0) == pytest.approx(0.0, abs=1e-15)


def test_sample_counts_deterministic_state():
    c = sample_counts(new_basis_state(1, 1), 100, seed=3)
    assert c.counts == {1: 100}


def test_sample_counts_binomial_and_deterministic():
    s = StateVector(1, np.array([1, 1]) / np.sqrt(2))
    a = sample_counts(s, 4096, seed=7)
    b = sample_counts(s, 4096, seed=7)
    assert a.counts == b.counts
    assert sum(a.counts.values()) == 4096
    assert abs(a.counts.get(1, 0) - 2048) <= 3 * np.sqrt(0.25 / 4096) * 4096


def test_kernel_matches_dense_oracle():
    rng = np.random.default_rng(0)
    for n in range(1, 5):
        psi = random_state(rng, n)
        for q in range(n):
            u = random_unitary(rng, 2)
            got = apply_1q(StateVector(n, psi), u, q).amplitudes
            np.testing.assert_allclose(got, embed_1q(u, q, n) @ psi, atol=1e-12)
        for hi in range(n):
            for lo in range(n):
                if hi == lo:
                    continue
                u = random_unitary(rng, 4)
                got = apply_2q(StateVector(n, psi), u, lo, hi).amplitudes
                np.testing.assert_allclose(got, embed_2q(u, hi, lo, n) @ psi, atol=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_linearity(seed, n):
    rng = np.random.default_rng(seed)
    psi, phi = random_state(rng, n), random_state(rng, n)
    alpha, beta = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    u = random_unitary(rng, 2)
    q = int(rng.integers(n))
    lhs = apply_1q(StateVector(n, alpha * psi + beta * phi), u, q).amplitudes
    rhs = alpha * apply_1q(StateVector(n, psi), u, q).amplitudes + beta * apply_1q(StateVector(n, phi), u, q).amplitudes
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


_GATES_1Q = [g.H, g.X, g.Y, g.Z]


@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(0, 50))
def test_norm_preserved_random_circuits(seed, n, depth):
    rng = np.random.default_rng(seed)
    ops = []
    for _ in range(depth):
        if n > 1 and rng.random() < 0.4:
            a, b = rng.choice(n, 2, replace=False)
            ops.append(Op(g.CNOT if rng.random() < 0.7 else g.SWAP, (int(a), int(b))))
        elif rng.random() < 0.5:
            ops.append(Op(g.U3(*rng.uniform(-np.pi, np.pi, 3)), (int(rng.integers(n)),)))
        else:
            ops.append(Op(_GATES_1Q[rng.integers(4)], (int(rng.integers(n)),)))
    out = simulate(Circuit(n, tuple(ops)), StateVector(n, random_state(rng, n)))
    assert abs(1 - out.norm() ** 2) < 1e-10
