"""Directed, error-weighted coupling graphs and the passes that respect them."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from pathlib import Path
from typing import NamedTuple

from . import gates as g
from .circuit import Circuit, Op, lower_ops


class TopologyError(ValueError):
    pass


class InfeasibleAssignment(TopologyError):
    pass


@dataclass(frozen=True)
class DeviceTopology:
    n_qubits: int
    edges: dict[tuple[int, int], float]
    readout: tuple[float, ...] = ()
    name: str = ""

    def __post_init__(self):
        edges = {(int(c), int(t)): float(e) for (c, t), e in dict(self.edges).items()}
        for (c, t), e in edges.items():
            if c == t:
                raise TopologyError(f"self-edge on qubit {c}")
            if not (0 <= c < self.n_qubits and 0 <= t < self.n_qubits):
                raise TopologyError(f"edge ({c}, {t}) outside 0..{self.n_qubits - 1}")
            if not 0.0 <= e <= 1.0:
                raise TopologyError(f"edge ({c}, {t}) error {e} not in [0, 1]")
        readout = tuple(float(r) for r in self.readout) or (0.0,) * self.n_qubits
        if len(readout) != self.n_qubits or not all(0.0 <= r <= 1.0 for r in readout):
            raise TopologyError(f"readout must hold {self.n_qubits} probabilities in [0, 1]")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "readout", readout)

    def has_edge(self, control: int, target: int) -> bool:
        return (control, target) in self.edges

    def coupled(self, a: int, b: int) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def pair_error(self, a: int, b: int) -> float:
        """Error weight of a CNOT between ``a`` and ``b`` in its cheapest native direction."""
        errs = [self.edges[e] for e in ((a, b), (b, a)) if e in self.edges]
        if not errs:
            raise TopologyError(f"qubits {a} and {b} are not coupled")
        return min(errs)

    def degree(self, q: int) -> int:
        return sum(self.coupled(q, o) for o in range(self.n_qubits) if o != q)

    @classmethod
    def fully_connected(cls, n_qubits: int, error: float = 0.0) -> DeviceTopology:
        edges = {(a, b): error for a in range(n_qubits) for b in range(n_qubits) if a != b}
        return cls(n_qubits, edges, name=f"all-to-all-{n_qubits}")

    @classmethod
    def from_dict(cls, data: dict) -> DeviceTopology:
        try:
            edges = {(e["control"], e["target"]): e.get("error", 0.0) for e in data["edges"]}
            return cls(int(data["n_qubits"]), edges, tuple(data.get("readout", ())), data.get("name", ""))
        except (KeyError, TypeError) as exc:
            raise TopologyError(f"malformed topology document: missing or bad field {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_qubits": self.n_qubits,
            "edges": [{"control": c, "target": t, "error": e} for (c, t), e in sorted(self.edges.items())],
            "readout": list(self.readout),
        }


def load_topology(path=None) -> DeviceTopology:
    """Read a topology JSON file; ``None`` gives the bundled five-qubit chip."""
    if path is None:
        text = resources.files("centralspin").joinpath("data/qx4.json").read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise TopologyError(f"cannot read topology file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TopologyError(f"topology file {path or 'qx4.json'} is not valid JSON: {exc}") from exc
    return DeviceTopology.from_dict(data)


def default_topology() -> DeviceTopology:
    return load_topology(None)


class Violation(NamedTuple):
    index: int
    op: Op
    kind: str  # "wrong-direction" or "no-coupling"


@dataclass
class LegalityReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def legal(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.legal

    def __str__(self):
        if self.legal:
            return "legal"
        return "; ".join(f"op {v.index} {v.op!r}: {v.kind}" for v in self.violations)


def validate(circuit: Circuit, topo: DeviceTopology) -> LegalityReport:
    """List two-qubit ops that are not native on ``topo``.

    A SWAP is native only when both CNOT directions exist on the pair.
    """
    if circuit.n_qubits > topo.n_qubits:
        raise TopologyError(f"circuit needs {circuit.n_qubits} qubits, device has {topo.n_qubits}")
    report = LegalityReport()
    for i, op in enumerate(circuit.ops):
        if op.gate.n_qubits != 2:
            continue
        a, b = op.qubits
        if not topo.coupled(a, b):
            report.violations.append(Violation(i, op, "no-coupling"))
        elif op.gate.name == "CNOT" and not topo.has_edge(a, b):
            report.violations.append(Violation(i, op, "wrong-direction"))
        elif op.gate.name == "SWAP" and not (topo.has_edge(a, b) and topo.has_edge(b, a)):
            report.violations.append(Violation(i, op, "wrong-direction"))
    return report


def reverse_cnot_rewrite(circuit: Circuit, topo: DeviceTopology) -> Circuit:
    """Legalize CNOT directions with Hadamard conjugation.

    Non-native SWAPs are first lowered to three CNOTs; every CNOT a->b that
    only exists as b->a becomes H_a H_b CNOT(b->a) H_a H_b.
    """
    for op in circuit.ops:
        if op.gate.n_qubits == 2 and not topo.coupled(*op.qubits):
            raise TopologyError(f"cannot rewrite {op!r}: qubits {op.qubits[0]} and {op.qubits[1]} are not coupled")
    if validate(circuit, topo).legal:
        return circuit
    out = []
    for op in circuit.ops:
        if op.gate.name == "SWAP" and validate(Circuit(circuit.n_qubits, (op,)), topo).legal:
            out.append(op)
            continue
        for low in lower_ops([op], topo.has_edge) if op.gate.name == "SWAP" else [op]:
            if low.gate.name == "CNOT" and not topo.has_edge(*low.qubits):
                a, b = low.qubits
                out += [Op(g.H, (a,)), Op(g.H, (b,)), Op(g.CNOT, (b, a)), Op(g.H, (a,)), Op(g.H, (b,))]
            else:
                out.append(low)
    return circuit.with_ops(out)


class RolePair(NamedTuple):
    role_a: str
    role_b: str
    cnot_count: int


@dataclass(frozen=True)
class QubitAssignment:
    """Injective map from logical roles to physical qubits.

    ``topology`` is kept so circuit builders can pick native CNOT directions.
    """

    mapping: dict[str, int]
    cost: float = 0.0
    topology: DeviceTopology | None = None

    def __post_init__(self):
        if len(set(self.mapping.values())) != len(self.mapping):
            raise TopologyError(f"assignment is not injective: {self.mapping}")

    def __getitem__(self, role: str) -> int:
        try:
            return self.mapping[role]
        except KeyError:
            raise KeyError(f"role {role!r} is not assigned (have {sorted(self.mapping)})") from None

    def __contains__(self, role: str) -> bool:
        return role in self.mapping

    @property
    def n_qubits(self) -> int:
        if self.topology is not None:
            return self.topology.n_qubits
        return max(self.mapping.values()) + 1


def assignment_cost(pairs, mapping: dict[str, int], topo: DeviceTopology) -> float:
    return sum(n * topo.pair_error(mapping[a], mapping[b]) for a, b, n in pairs)


def _roles_in_order(pairs) -> list[str]:
    roles: list[str] = []
    for a, b, _ in pairs:
        for r in (a, b):
            if r not in roles:
                roles.append(r)
    return roles


def _feasible_maps(roles, pairs, topo):
    for phys in permutations(range(topo.n_qubits), len(roles)):
        m = dict(zip(roles, phys))
        if all(topo.coupled(m[a], m[b]) for a, b, _ in pairs):
            yield phys, m


def choose_assignment(required_pairs, topo: DeviceTopology) -> QubitAssignment:
    """Exhaustively find the injective role map of least total CNOT error.

    ``required_pairs`` holds ``(role_a, role_b, cnot_count)`` triples. Roles are
    ordered by first appearance; among equal-cost maps the lexicographically
    smallest tuple of physical indices wins.
    """
    pairs = [RolePair(*p) for p in required_pairs]
    roles = _roles_in_order(pairs)
    if len(roles) > topo.n_qubits:
        raise InfeasibleAssignment(f"{len(roles)} roles do not fit on {topo.n_qubits} qubits")
    best = None
    for phys, m in _feasible_maps(roles, pairs, topo):
        cost = assignment_cost(pairs, m, topo)
        if best is None or cost < best[0] - 1e-12:
            best = (cost, m)
    if best is None:
        # smallest infeasible prefix names the pair that breaks it
        for k in range(1, len(pairs) + 1):
            prefix = pairs[:k]
            if next(_feasible_maps(_roles_in_order(prefix), prefix, topo), None) is None:
                a, b, _ = pairs[k - 1]
                raise InfeasibleAssignment(f"no injective placement couples {a} and {b} alongside the earlier pairs")
        raise AssertionError("unreachable")
    return QubitAssignment(best[1], best[0], topo)
