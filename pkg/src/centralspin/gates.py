"""Gate definitions and the identities that express them through U3.

Gates are small immutable values (:class:`Gate`); :func:`matrix_of` turns one
into its unitary. Two-qubit matrices use the local basis index
``2 * bit(first qubit) + bit(second qubit)``, so for ``CNOT`` the control is
the high bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin

import numpy as np

ONE_QUBIT = frozenset({"H", "X", "Y", "Z", "PHASE", "U3", "RZ", "RX"})
TWO_QUBIT = frozenset({"CNOT", "SWAP"})
_ARITY = {"PHASE": 1, "U3": 3, "RZ": 1, "RX": 1}


@dataclass(frozen=True)
class Gate:
    name: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.name not in ONE_QUBIT | TWO_QUBIT:
            raise ValueError(f"unknown gate {self.name!r}")
        if len(self.params) != _ARITY.get(self.name, 0):
            raise ValueError(f"{self.name} takes {_ARITY.get(self.name, 0)} parameters, got {len(self.params)}")
        if not all(np.isfinite(p) for p in self.params):
            raise ValueError(f"{self.name} parameters must be finite: {self.params}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @property
    def n_qubits(self) -> int:
        return 2 if self.name in TWO_QUBIT else 1

    def __repr__(self):
        if not self.params:
            return self.name
        return f"{self.name}({', '.join(f'{p:.6g}' for p in self.params)})"


H = Gate("H")
X = Gate("X")
Y = Gate("Y")
Z = Gate("Z")
CNOT = Gate("CNOT")
SWAP = Gate("SWAP")


def Phase(phi: float) -> Gate:
    return Gate("PHASE", (phi,))


def U3(theta: float, phi: float, lam: float) -> Gate:
    return Gate("U3", (theta, phi, lam))


def Rz(tau: float) -> Gate:
    return Gate("RZ", (tau,))


def Rx(theta: float) -> Gate:
    return Gate("RX", (theta,))


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = cos(theta / 2), sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (lam + phi)) * c]],
        dtype=complex,
    )


_FIXED = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "CNOT": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "SWAP": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
}


def matrix_of(gate: Gate) -> np.ndarray:
    """Return a fresh copy of the gate's unitary."""
    if gate.name in _FIXED:
        return _FIXED[gate.name].copy()
    if gate.name == "PHASE":
        return np.diag([1.0, np.exp(1j * gate.params[0])]).astype(complex)
    if gate.name == "U3":
        return u3_matrix(*gate.params)
    if gate.name == "RZ":
        t = gate.params[0]
        return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
    if gate.name == "RX":
        t = gate.params[0]
        return np.array([[cos(t / 2), -1j * sin(t / 2)], [-1j * sin(t / 2), cos(t / 2)]], dtype=complex)
    raise AssertionError(gate.name)


def rz_synthesis(tau: float) -> list[Gate]:
    """Rz(tau) as H . U3(tau, -pi/2, pi/2) . H, using only device-native gates.

    U3(tau, -pi/2, pi/2) is exactly Rx(tau), so the product carries no
    global phase.
    """
    return [H, U3(tau, -pi / 2, pi / 2), H]


def basis_change_for_axis(axis: str) -> tuple[list[Gate], list[Gate]]:
    """Gates ``(pre, post)`` that turn a z rotation into one about ``axis``.

    Applying ``pre``, then Rz(t), then ``post`` equals exp(-i t/2 sigma_axis).
    For ``y`` the post gate is U3(-pi/2, -pi/2, pi/2) = Rx(-pi/2), the gate the
    device documentation loosely calls "Pauli-Y".
    """
    if axis == "x":
        return [H], [H]
    if axis == "y":
        return [U3(pi / 2, -pi / 2, pi / 2)], [U3(-pi / 2, -pi / 2, pi / 2)]
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def sequence_matrix(gates) -> np.ndarray:
    """Operator of a single-qubit gate sequence applied left to right in time."""
    m = np.eye(2, dtype=complex)
    for g in gates:
        m = matrix_of(g) @ m
    return m


def is_unitary(m: np.ndarray, atol: float = 1e-10) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) < atol)


def align_global_phase(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Return ``a`` multiplied by the unit phase that best lines it up with ``b``.

    The phase is read off the largest-magnitude entry of ``b``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(a[k]) == 0:
        return a
    ratio = b[k] / a[k]
    return a * (ratio / abs(ratio))


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max entrywise difference between ``a`` and ``b`` after phase alignment."""
    return float(np.max(np.abs(align_global_phase(a, b) - np.asarray(b))))


def equal_up_to_phase(a, b, atol: float = 1e-12) -> bool:
    return np.shape(a) == np.shape(b) and phase_distance(a, b) < atol
