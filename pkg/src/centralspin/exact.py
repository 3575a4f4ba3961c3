"""Exact dynamics of the XX central-spin model (g = 1, tau = g t).

H = (1/2) sum_j (X_c X_j + Y_c Y_j) on L + 1 spins, central spin on qubit 0.
Evolution goes through a dense Hermitian eigendecomposition.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import cos, sin, sqrt

import numpy as np

from .qsim import StateVector, excited_population
from .states import ExcitedCentral, InitSpec, ThreePES, TwoPES, target_state

MAX_BATH = 6

_I2 = np.eye(2, dtype=complex)
_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_string(ops: dict[int, str], n: int) -> np.ndarray:
    """Kronecker product with ``ops[q]`` on qubit q (qubit 0 rightmost)."""
    return reduce(np.kron, [_PAULI[ops[q]] if q in ops else _I2 for q in reversed(range(n))])


def excitation_number(n: int) -> np.ndarray:
    """Total excitation number: the popcount of each basis index, as a diagonal matrix."""
    return np.diag([bin(k).count("1") for k in range(2**n)]).astype(complex)


@dataclass(frozen=True)
class SpinHamiltonian:
    L: int
    matrix: np.ndarray

    @property
    def n_qubits(self) -> int:
        return self.L + 1

    @property
    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        return _eigh(self.L)


def _spin_matrix(L: int) -> np.ndarray:
    n = L + 1
    h = np.zeros((2**n, 2**n), dtype=complex)
    for j in range(1, L + 1):
        h += 0.5 * (pauli_string({0: "X", j: "X"}, n) + pauli_string({0: "Y", j: "Y"}, n))
    return h


@lru_cache(maxsize=None)
def _cached_matrix(L: int) -> np.ndarray:
    m = _spin_matrix(L)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def _eigh(L: int):
    return np.linalg.eigh(_cached_matrix(L))


def build_hamiltonian(L: int) -> SpinHamiltonian:
    if not 1 <= L <= MAX_BATH:
        raise ValueError(f"bath size must be in 1..{MAX_BATH}, got {L}")
    return SpinHamiltonian(L, _cached_matrix(L))


def evolution_operator(H: SpinHamiltonian, tau: float) -> np.ndarray:
    w, v = H.eig
    return (v * np.exp(-1j * w * tau)) @ v.conj().T


def exact_evolve(state: StateVector, tau: float, H: SpinHamiltonian) -> StateVector:
    if state.n_qubits != H.n_qubits:
        raise ValueError(f"state has {state.n_qubits} qubits, Hamiltonian acts on {H.n_qubits}")
    w, v = H.eig
    amps = v @ (np.exp(-1j * w * tau) * (v.conj().T @ state.amplitudes))
    return StateVector(state.n_qubits, amps)


def population_closed_form(spec: InitSpec, tau: float) -> float:
    """Central-spin excited population from the bright/dark-state picture.

    Only the bright (symmetric) bath component couples to the central spin,
    with strength sqrt(L); it Rabi-oscillates while dark components are frozen.
    """
    if isinstance(spec, ExcitedCentral):
        return cos(sqrt(spec.L) * tau) ** 2
    if isinstance(spec, TwoPES):
        return cos(spec.phi / 2) ** 2 * sin(sqrt(2) * tau) ** 2
    if isinstance(spec, ThreePES):
        return 8 / 9 * sin(spec.chi / 2) ** 2 * sin(sqrt(3) * tau) ** 2
    raise TypeError(f"unknown initial condition {spec!r}")


def dark_residual(state: StateVector, H: SpinHamiltonian) -> float:
    """||H psi||; zero exactly for zero-energy (dark) eigenstates."""
    if state.n_qubits != H.n_qubits:
        raise ValueError(f"state has {state.n_qubits} qubits, Hamiltonian acts on {H.n_qubits}")
    return float(np.linalg.norm(H.matrix @ state.amplitudes))


def single_excitation_indices(n: int) -> list[int]:
    """Basis indices with exactly one excited qubit, ordered by qubit (central first)."""
    return [1 << q for q in range(n)]


def boson_sector_hamiltonian(L: int) -> np.ndarray:
    """RWA Dicke Hamiltonian g sum_j (a^dag s_j^- + a s_j^+) on the <= 1 excitation sector.

    Built from a boson truncated at one quantum tensored with L spins, then
    restricted to the basis [|1 boson, all down>, |0 bosons, spin j up> ...].
    """
    a = np.array([[0, 1], [0, 0]], dtype=complex)  # boson annihilation, n <= 1
    s_minus = np.array([[0, 1], [0, 0]], dtype=complex)  # |1> = up -> |0> = down
    n = L + 1

    def on(ops):
        return reduce(np.kron, [ops.get(q, _I2) for q in reversed(range(n))])

    h = np.zeros((2**n, 2**n), dtype=complex)
    for j in range(1, L + 1):
        h += on({0: a.conj().T, j: s_minus}) + on({0: a, j: s_minus.conj().T})
    idx = single_excitation_indices(n)
    return h[np.ix_(idx, idx)]


def spin_sector_hamiltonian(L: int) -> np.ndarray:
    """XX central-spin Hamiltonian restricted to one excitation (same basis order)."""
    idx = single_excitation_indices(L + 1)
    return build_hamiltonian(L).matrix[np.ix_(idx, idx)]


def dicke_equivalence(L: int) -> float:
    if not 1 <= L <= MAX_BATH:
        raise ValueError(f"bath size must be in 1..{MAX_BATH}, got {L}")
    return float(np.max(np.abs(boson_sector_hamiltonian(L) - spin_sector_hamiltonian(L))))


def central_population_exact(spec: InitSpec, tau: float) -> float:
    """Matrix route: prepare the logical initial state and evolve it exactly."""
    H = build_hamiltonian(spec.L)
    return excited_population(exact_evolve(target_state(spec), tau, H), 0)
