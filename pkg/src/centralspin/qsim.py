"""Dense statevector simulation.

Qubit 0 is the least significant bit of the basis index everywhere in the
package: basis index ``k`` has qubit ``q`` excited iff ``(k >> q) & 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import is_unitary

MAX_QUBITS = 12


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.size != 2**self.n_qubits:
            raise ValueError(f"expected {2**self.n_qubits} amplitudes, got {self.amplitudes.size}")

    @classmethod
    def from_amplitudes(cls, amplitudes) -> StateVector:
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amplitudes.size)))
        if 2**n != amplitudes.size:
            raise ValueError(f"length {amplitudes.size} is not a power of two")
        return cls(n, amplitudes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> StateVector:
        return StateVector(self.n_qubits, self.amplitudes.copy())


@dataclass
class MeasurementCounts:
    n_qubits: int
    shots: int
    counts: dict[int, int] = field(default_factory=dict)

    def marginal(self, qubit: int) -> int:
        """Number of shots in which ``qubit`` read 1."""
        return sum(c for k, c in self.counts.items() if (k >> qubit) & 1)

    def excited_fraction(self, qubit: int) -> float:
        return self.marginal(qubit) / self.shots if self.shots else 0.0


def new_basis_state(n_qubits: int, basis_index: int) -> StateVector:
    if not 0 <= basis_index < 2**n_qubits:
        raise ValueError(f"basis index {basis_index} out of range for {n_qubits} qubits")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[basis_index] = 1.0
    return StateVector(n_qubits, amps)


def _axis(n_qubits: int, qubit: int) -> int:
    # reshape to (2,)*n puts the most significant bit on axis 0
    return n_qubits - 1 - qubit


def _check_qubit(n_qubits: int, qubit: int):
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")


def apply_1q_array(amps: np.ndarray, n: int, gate: np.ndarray, qubit: int) -> np.ndarray:
    """Kernel: contract a 2x2 matrix into the ``qubit`` axis of a flat array."""
    ax = _axis(n, qubit)
    psi = amps.reshape((2,) * n)
    out = np.tensordot(gate, psi, axes=([1], [ax]))
    return np.moveaxis(out, 0, ax).reshape(-1)


def apply_2q_array(amps: np.ndarray, n: int, gate: np.ndarray, q_low: int, q_high: int) -> np.ndarray:
    """Kernel for a 4x4 matrix whose local index is ``2*bit(q_high) + bit(q_low)``."""
    a_hi, a_lo = _axis(n, q_high), _axis(n, q_low)
    psi = amps.reshape((2,) * n)
    g = gate.reshape(2, 2, 2, 2)
    out = np.tensordot(g, psi, axes=([2, 3], [a_hi, a_lo]))
    return np.moveaxis(out, [0, 1], [a_hi, a_lo]).reshape(-1)


def apply_1q(state: StateVector, gate: np.ndarray, qubit: int) -> StateVector:
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (2, 2) or not is_unitary(gate):
        raise ValueError("single-qubit gate must be a 2x2 unitary")
    _check_qubit(state.n_qubits, qubit)
    return StateVector(state.n_qubits, apply_1q_array(state.amplitudes, state.n_qubits, gate, qubit))


def apply_2q(state: StateVector, gate: np.ndarray, q_low: int, q_high: int) -> StateVector:
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (4, 4) or not is_unitary(gate):
        raise ValueError("two-qubit gate must be a 4x4 unitary")
    _check_qubit(state.n_qubits, q_low)
    _check_qubit(state.n_qubits, q_high)
    if q_low == q_high:
        raise ValueError(f"two-qubit gate needs distinct qubits, got {q_low} twice")
    return StateVector(state.n_qubits, apply_2q_array(state.amplitudes, state.n_qubits, gate, q_low, q_high))


def excited_population(state: StateVector, qubit: int) -> float:
    _check_qubit(state.n_qubits, qubit)
    probs = state.probabilities().reshape((2,) * state.n_qubits)
    p = float(np.take(probs, 1, axis=_axis(state.n_qubits, qubit)).sum())
    return min(max(p, 0.0), 1.0)


def sample_counts(state: StateVector, shots: int, seed) -> MeasurementCounts:
    """Draw ``shots`` i.i.d. computational-basis outcomes from ``state``."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    drawn = rng.multinomial(shots, probs)
    counts = {int(k): int(c) for k, c in enumerate(drawn) if c}
    return MeasurementCounts(state.n_qubits, shots, counts)
