"""Initial-condition specifications and their analytic target amplitudes.

Spin up is the excited state ``|1>``. In the logical layout the central
spin is qubit 0 and bath spin ``j`` (1-based) is qubit ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isfinite, sqrt

import numpy as np

from .qsim import StateVector


@dataclass(frozen=True)
class TwoPES:
    """Unexcited central spin, bath (|du> + e^{i phi}|ud>)/sqrt 2."""

    phi: float

    def __post_init__(self):
        if not isfinite(self.phi):
            raise ValueError("phi must be finite")

    L = 2
    phase = property(lambda self: self.phi)


@dataclass(frozen=True)
class ThreePES:
    """Unexcited central spin, bath (|ddu> - 2e^{i chi}|dud> + |udd>)/sqrt 6."""

    chi: float

    def __post_init__(self):
        if not isfinite(self.chi):
            raise ValueError("chi must be finite")

    L = 3
    phase = property(lambda self: self.chi)


@dataclass(frozen=True)
class ExcitedCentral:
    """Excited central spin, ``L`` unexcited bath spins."""

    L: int

    def __post_init__(self):
        if not 1 <= self.L <= 4:
            raise ValueError(f"ExcitedCentral supports 1..4 bath spins, got {self.L}")

    phase = 0.0


InitSpec = TwoPES | ThreePES | ExcitedCentral


def bath_roles(L: int) -> list[str]:
    return [f"bath{j}" for j in range(1, L + 1)]


def bath_amplitudes(spec: InitSpec) -> dict[tuple[int, ...], complex]:
    """Nonzero bath amplitudes keyed by the tuple (bath1, bath2, ...) of bits."""
    if isinstance(spec, TwoPES):
        return {(0, 1): 1 / sqrt(2), (1, 0): np.exp(1j * spec.phi) / sqrt(2)}
    if isinstance(spec, ThreePES):
        return {
            (0, 0, 1): 1 / sqrt(6),
            (0, 1, 0): -2 * np.exp(1j * spec.chi) / sqrt(6),
            (1, 0, 0): 1 / sqrt(6),
        }
    return {(0,) * spec.L: 1.0}


def central_excited(spec: InitSpec) -> int:
    return int(isinstance(spec, ExcitedCentral))


def target_state(spec: InitSpec, layout: dict[str, int] | None = None, n_qubits: int | None = None) -> StateVector:
    """The initial state as a statevector.

    ``layout`` maps roles to qubit indices (logical layout by default) and
    ``n_qubits`` sets the register width; unused qubits stay in ``|0>``.
    """
    if layout is None:
        layout = {"central": 0, **{r: j for j, r in enumerate(bath_roles(spec.L), start=1)}}
    if n_qubits is None:
        n_qubits = max(layout.values()) + 1
    amps = np.zeros(2**n_qubits, dtype=complex)
    c = central_excited(spec) << layout["central"]
    roles = bath_roles(spec.L)
    for bits, a in bath_amplitudes(spec).items():
        idx = c + sum(b << layout[r] for b, r in zip(bits, roles))
        amps[idx] = a
    return StateVector(n_qubits, amps)


def w_overlap_sq(spec: InitSpec) -> float:
    """|<W|bath>|^2 with W the equal-weight single-excitation bath state."""
    if isinstance(spec, ExcitedCentral):
        return 0.0
    L = spec.L
    total = sum(a for bits, a in bath_amplitudes(spec).items() if sum(bits) == 1)
    return float(abs(total) ** 2 / L)
