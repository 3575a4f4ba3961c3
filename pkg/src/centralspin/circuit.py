"""Circuit representation, dense unitary extraction and statevector execution."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi
from typing import NamedTuple

import numpy as np

from . import gates as g
from .gates import Gate, matrix_of
from .qsim import StateVector, apply_1q_array, apply_2q_array, new_basis_state

MAX_UNITARY_QUBITS = 6


class Op(NamedTuple):
    gate: Gate
    qubits: tuple[int, ...]

    def __repr__(self):
        return f"{self.gate!r}{list(self.qubits)}"


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on ``n_qubits`` physical qubits.

    ``role_map`` records which physical qubit hosts each logical role
    (``central``, ``bath1`` ...). For two-qubit ops the first index is the
    CNOT control.
    """

    n_qubits: int
    ops: tuple[Op, ...] = ()
    role_map: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        ops = tuple(Op(op[0], tuple(int(q) for q in op[1])) for op in self.ops)
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "role_map", dict(self.role_map))
        for op in ops:
            if len(op.qubits) != op.gate.n_qubits:
                raise ValueError(f"{op.gate.name} acts on {op.gate.n_qubits} qubit(s), got {op.qubits}")
            if any(not 0 <= q < self.n_qubits for q in op.qubits):
                raise ValueError(f"op {op!r} addresses a qubit outside 0..{self.n_qubits - 1}")
            if len(set(op.qubits)) != len(op.qubits):
                raise ValueError(f"op {op!r} repeats a qubit")
        phys = list(self.role_map.values())
        if len(set(phys)) != len(phys):
            raise ValueError(f"role map is not injective: {self.role_map}")
        if any(not 0 <= q < self.n_qubits for q in phys):
            raise ValueError(f"role map points outside the register: {self.role_map}")

    def __len__(self):
        return len(self.ops)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise ValueError("cannot concatenate circuits of different width")
        roles = {**self.role_map, **other.role_map}
        return Circuit(self.n_qubits, self.ops + other.ops, roles)

    def with_ops(self, ops) -> Circuit:
        return Circuit(self.n_qubits, tuple(ops), self.role_map)

    def count(self, name: str) -> int:
        return sum(op.gate.name == name for op in self.ops)


def embed_1q(m: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Full 2^n matrix of a single-qubit gate, by Kronecker products."""
    out = np.eye(1, dtype=complex)
    for q in reversed(range(n)):
        out = np.kron(out, m if q == qubit else np.eye(2))
    return out


def embed_2q(m: np.ndarray, first: int, second: int, n: int) -> np.ndarray:
    """Full 2^n matrix of a 4x4 gate with local index ``2*bit(first) + bit(second)``."""
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    mask = (1 << first) | (1 << second)
    for col in range(dim):
        c = 2 * ((col >> first) & 1) + ((col >> second) & 1)
        rest = col & ~mask
        for r in range(4):
            row = rest | ((r >> 1) << first) | ((r & 1) << second)
            out[row, col] = m[r, c]
    return out


def op_matrix(op: Op, n: int) -> np.ndarray:
    m = matrix_of(op.gate)
    if op.gate.n_qubits == 1:
        return embed_1q(m, op.qubits[0], n)
    return embed_2q(m, op.qubits[0], op.qubits[1], n)


def unitary_of(circuit: Circuit) -> np.ndarray:
    """Ordered product of the embedded gate matrices (later ops on the left)."""
    n = circuit.n_qubits
    if n > MAX_UNITARY_QUBITS:
        raise ValueError(f"unitary_of supports at most {MAX_UNITARY_QUBITS} qubits, got {n}")
    u = np.eye(2**n, dtype=complex)
    for op in circuit.ops:
        u = op_matrix(op, n) @ u
    return u


def apply_op_array(amps: np.ndarray, n: int, op: Op) -> np.ndarray:
    m = matrix_of(op.gate)
    if op.gate.n_qubits == 1:
        return apply_1q_array(amps, n, m, op.qubits[0])
    # control is the high bit of the local index
    return apply_2q_array(amps, n, m, op.qubits[1], op.qubits[0])


def simulate(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Run ``circuit`` on ``initial`` (all zeros by default)."""
    state = initial if initial is not None else new_basis_state(circuit.n_qubits, 0)
    if state.n_qubits != circuit.n_qubits:
        raise ValueError(f"state has {state.n_qubits} qubits, circuit has {circuit.n_qubits}")
    amps = state.amplitudes
    for op in circuit.ops:
        amps = apply_op_array(amps, circuit.n_qubits, op)
    return StateVector(circuit.n_qubits, amps)


# Exact U3 forms. RZ differs from U3(0, 0, t) by the phase exp(-it/2); the
# package's own circuits never contain RZ (it is synthesized instead).
def _as_u3(gate: Gate) -> Gate:
    name, p = gate.name, gate.params
    if name == "U3":
        return gate
    if name == "H":
        return g.U3(pi / 2, 0.0, pi)
    if name == "X":
        return g.U3(pi, 0.0, pi)
    if name == "Y":
        return g.U3(pi, pi / 2, pi / 2)
    if name == "Z":
        return g.U3(0.0, 0.0, pi)
    if name in ("PHASE", "RZ"):
        return g.U3(0.0, 0.0, p[0])
    if name == "RX":
        return g.U3(p[0], -pi / 2, pi / 2)
    raise AssertionError(name)


def lower_ops(ops, directed=None) -> list[Op]:
    """Lower to {U3, CNOT}; SWAPs become three alternating CNOTs.

    ``directed(a, b)`` says whether CNOT a->b is native; when given, the
    outer CNOTs of each SWAP use a native direction.
    """
    out = []
    for op in ops:
        if op.gate.name == "CNOT":
            out.append(op)
        elif op.gate.name == "SWAP":
            a, b = op.qubits
            if directed is not None and not directed(a, b) and directed(b, a):
                a, b = b, a
            out += [Op(g.CNOT, (a, b)), Op(g.CNOT, (b, a)), Op(g.CNOT, (a, b))]
        else:
            out.append(Op(_as_u3(op.gate), op.qubits))
    return out


def lower(circuit: Circuit, directed=None) -> Circuit:
    return circuit.with_ops(lower_ops(circuit.ops, directed))
