"""First-order Trotter circuits for the XX central-spin model."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gates as g
from .circuit import Circuit, Op, unitary_of
from .exact import build_hamiltonian, evolution_operator
from .gates import align_global_phase
from .states import bath_roles
from .topology import DeviceTopology, QubitAssignment, TopologyError


@dataclass(frozen=True)
class TrotterPlan:
    """``pair_order`` lists bath roles in the order their pair gates act on the state."""

    tau: float
    steps: int = 1
    pair_order: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not np.isfinite(self.tau):
            raise ValueError("tau must be finite")
        object.__setattr__(self, "pair_order", tuple(self.pair_order))
        if len(set(self.pair_order)) != len(self.pair_order):
            raise ValueError(f"pair_order repeats a role: {self.pair_order}")

    @classmethod
    def ascending(cls, tau: float, L: int, steps: int = 1) -> TrotterPlan:
        return cls(tau, steps, tuple(bath_roles(L)))


def _orientation(a: int, b: int, topo: DeviceTopology | None) -> tuple[int, int]:
    if topo is None or topo.has_edge(a, b):
        return a, b
    if topo.has_edge(b, a):
        return b, a
    raise TopologyError(f"qubits {a} and {b} are not coupled")


def pair_ops(tau: float, q_c: int, q_j: int, topo: DeviceTopology | None = None) -> list[Op]:
    """exp(-i tau/2 XX) exp(-i tau/2 YY) on (q_c, q_j).

    Each factor is a ZZ core CNOT . Rz(tau)_target . CNOT, conjugated into the
    x or y basis on both qubits. The core is symmetric in its two qubits, so
    the CNOTs are laid on whichever direction the device supports natively.
    """
    ctrl, tgt = _orientation(q_c, q_j, topo)
    ops: list[Op] = []
    for axis in ("x", "y"):
        pre, post = g.basis_change_for_axis(axis)
        ops += [Op(p, (q,)) for p in pre for q in (ctrl, tgt)]
        ops.append(Op(g.CNOT, (ctrl, tgt)))
        ops += [Op(r, (tgt,)) for r in g.rz_synthesis(tau)]
        ops.append(Op(g.CNOT, (ctrl, tgt)))
        ops += [Op(p, (q,)) for p in post for q in (ctrl, tgt)]
    return ops


def pair_circuit(tau: float, central: str, bath_j: str, assignment: QubitAssignment) -> Circuit:
    q_c, q_j = assignment[central], assignment[bath_j]
    try:
        ops = pair_ops(tau, q_c, q_j, assignment.topology)
    except TopologyError as exc:
        raise TopologyError(f"roles {central} and {bath_j}: {exc}") from None
    return Circuit(assignment.n_qubits, tuple(ops), {central: q_c, bath_j: q_j})


def trotter_circuit(plan: TrotterPlan, assignment: QubitAssignment, central: str = "central") -> Circuit:
    """``plan.steps`` repetitions of the pair sequence, each with tau / steps."""
    dt = plan.tau / plan.steps
    q_c = assignment[central]
    one_step: list[Op] = []
    roles = {central: q_c}
    for role in plan.pair_order:
        one_step += pair_circuit(dt, central, role, assignment).ops
        roles[role] = assignment[role]
    return Circuit(assignment.n_qubits, tuple(one_step) * plan.steps, roles)


def logical_assignment(L: int) -> QubitAssignment:
    """Central on qubit 0, bath j on qubit j, all-to-all coupling."""
    mapping = {"central": 0, **{r: j for j, r in enumerate(bath_roles(L), start=1)}}
    return QubitAssignment(mapping, 0.0, DeviceTopology.fully_connected(L + 1))


def trotter_unitary(plan: TrotterPlan, L: int) -> np.ndarray:
    return unitary_of(trotter_circuit(plan, logical_assignment(L)))


def trotter_error(plan: TrotterPlan, L: int) -> float:
    """Spectral norm of U_trotter - U_exact after global-phase alignment."""
    if not 1 <= L <= 4:
        raise ValueError(f"trotter_error supports L in 1..4, got {L}")
    if not plan.pair_order:
        plan = TrotterPlan(plan.tau, plan.steps, tuple(bath_roles(L)))
    u = trotter_unitary(plan, L)
    exact = evolution_operator(build_hamiltonian(L), plan.tau)
    # Frobenius-optimal phase: arg tr(U_exact^dag U)
    ph = np.trace(exact.conj().T @ u)
    u = u * (np.conj(ph) / abs(ph)) if abs(ph) > 0 else align_global_phase(u, exact)
    return float(np.linalg.norm(u - exact, 2))
