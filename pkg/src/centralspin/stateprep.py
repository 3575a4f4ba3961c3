"""Preparation circuits for the three initial conditions.

The circuits use only H, X, Z, the phase gate, the U3-derived gates
``A_phi`` and ``B``, CNOT and SWAP. They are judged solely by the state they
produce from ``|0...0>``.
"""
from __future__ import annotations

from math import acos, pi, sqrt

from . import gates as g
from .circuit import Circuit, Op
from .states import ExcitedCentral, InitSpec, ThreePES, TwoPES, bath_roles
from .topology import QubitAssignment


class PrepError(ValueError):
    pass


def a_phi_gate(phi: float) -> g.Gate:
    """U3(2 arccos(1/sqrt 3), phi, 0): sends |0> to (|0> + e^{i phi} sqrt 2 |1>)/sqrt 3."""
    return g.U3(2 * acos(1 / sqrt(3)), phi, 0.0)


B_GATE = g.U3(pi / 4, 0.0, 0.0)
B_DAG = g.U3(-pi / 4, 0.0, 0.0)


def required_roles(spec: InitSpec) -> list[str]:
    return ["central", *bath_roles(spec.L)]


def prep_pairs(spec: InitSpec) -> list[tuple[str, str, int]]:
    """CNOT usage of the preparation circuit, as (role, role, count)."""
    if isinstance(spec, TwoPES):
        return [("bath1", "bath2", 1)]
    if isinstance(spec, ThreePES):
        # stage one runs on the central qubit, then SWAPs bath2 out to its home
        return [("central", "bath1", 1), ("central", "bath3", 1), ("bath1", "bath3", 1), ("central", "bath2", 3)]
    return []


def _need(assignment: QubitAssignment, roles):
    missing = [r for r in roles if r not in assignment]
    if missing:
        raise PrepError(f"assignment lacks role(s) {missing} for this initial condition")


def prep_circuit(spec: InitSpec, assignment: QubitAssignment, n_qubits: int | None = None) -> Circuit:
    roles = required_roles(spec)
    _need(assignment, roles)
    n = n_qubits or assignment.n_qubits
    role_map = {r: assignment[r] for r in roles}
    c = assignment["central"]

    if isinstance(spec, ExcitedCentral):
        ops = [Op(g.X, (c,))]
    elif isinstance(spec, TwoPES):
        b1, b2 = assignment["bath1"], assignment["bath2"]
        ops = [
            Op(g.H, (b1,)),
            Op(g.Phase(spec.phi), (b1,)),
            Op(g.X, (b2,)),
            Op(g.CNOT, (b1, b2)),
        ]
    elif isinstance(spec, ThreePES):
        ops = _three_pes_ops(spec.chi, c, assignment["bath1"], assignment["bath2"], assignment["bath3"])
    else:
        raise PrepError(f"unknown initial condition {spec!r}")
    return Circuit(n, tuple(ops), role_map)


def _three_pes_ops(chi: float, hub: int, a: int, spare: int, b: int) -> list[Op]:
    """Build the 3PES on (a, hub, b), then move the hub's share to ``spare``.

    The hub carries the middle particle with weight 2/3. In the branch where
    the hub is down, a controlled Hadamard (B-conjugated CNOT) splits the
    excitation between ``a`` and ``b``.
    """
    return [
        Op(a_phi_gate(chi), (hub,)),  # hub: (|0> + e^{i chi} sqrt2 |1>)/sqrt3
        Op(g.Z, (hub,)),  # minus sign on the middle particle
        Op(g.X, (hub,)),  # so the controlled gate fires on the hub-down branch
        Op(B_GATE, (a,)),
        Op(g.CNOT, (hub, a)),
        Op(B_DAG, (a,)),
        Op(g.X, (hub,)),
        # b flips iff hub and a are both down
        Op(g.X, (b,)),
        Op(g.CNOT, (hub, b)),
        Op(g.CNOT, (a, b)),
        Op(g.SWAP, (hub, spare)),
    ]
