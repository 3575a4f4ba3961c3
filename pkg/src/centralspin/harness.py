"""Population-vs-time sweeps over the exact, ideal-Trotter and noisy backends."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, fields, replace
from math import sqrt
from pathlib import Path

import numpy as np

from .circuit import Circuit, simulate
from .exact import build_hamiltonian, exact_evolve, population_closed_form
from .noise import NoiseParams, noisy_expectation, noisy_run
from .qasm import export_qasm
from .qsim import excited_population, sample_counts
from .states import ExcitedCentral, InitSpec, ThreePES, TwoPES, bath_roles, target_state
from .stateprep import prep_circuit, prep_pairs
from .topology import (
    DeviceTopology,
    QubitAssignment,
    choose_assignment,
    load_topology,
    reverse_cnot_rewrite,
    validate,
)
from .trotter import TrotterPlan, trotter_circuit

BACKENDS = ("exact", "trotter", "noisy")
INIT_KINDS = {"two_pes": TwoPES, "three_pes": ThreePES, "excited_central": ExcitedCentral}
CSV_HEADER = ["tau", "phase", "L", "steps", "backend", "estimate", "stderr"]
DEFAULT_PHASES = [0.0, np.pi / 4, np.pi / 2, 3 * np.pi / 4, np.pi]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TauGrid:
    start: float = 0.0
    stop: float = 3.0
    points: int = 31

    def __post_init__(self):
        if self.points < 1:
            raise ConfigError(f"tau_grid.points must be >= 1, got {self.points}")
        if self.stop < self.start:
            raise ConfigError(f"tau_grid.stop ({self.stop}) is below tau_grid.start ({self.start})")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class ExperimentConfig:
    init: str = "two_pes"
    phases: tuple[float, ...] = tuple(DEFAULT_PHASES)
    L: int = 2
    tau_grid: TauGrid = field(default_factory=TauGrid)
    steps: int = 1
    backend: str = "trotter"
    shots: int = 0
    noise: NoiseParams = field(default_factory=NoiseParams)
    seed: int = 0
    topology_path: str | None = None
    pair_order: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.init not in INIT_KINDS:
            raise ConfigError(f"init must be one of {sorted(INIT_KINDS)}, got {self.init!r}")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if self.shots < 0:
            raise ConfigError(f"shots must be >= 0, got {self.shots}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))
        if self.init != "excited_central" and not self.phases:
            raise ConfigError("phases must not be empty")
        if self.init == "two_pes" and self.L != 2 or self.init == "three_pes" and self.L != 3:
            object.__setattr__(self, "L", INIT_KINDS[self.init].L)
        if self.init == "excited_central" and not 1 <= self.L <= 4:
            raise ConfigError(f"L must be in 1..4 for excited_central, got {self.L}")
        if self.pair_order is not None:
            order = tuple(self.pair_order)
            if sorted(order) != sorted(bath_roles(self.L)):
                raise ConfigError(f"pair_order must be a permutation of {bath_roles(self.L)}, got {list(order)}")
            object.__setattr__(self, "pair_order", order)

    def spec(self, phase: float) -> InitSpec:
        if self.init == "excited_central":
            return ExcitedCentral(self.L)
        return INIT_KINDS[self.init](phase)

    def sweep_phases(self) -> tuple[float, ...]:
        return (0.0,) if self.init == "excited_central" else tuple(sorted(self.phases))

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        d = dict(d)
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config field(s): {sorted(unknown)}")
        try:
            if "tau_grid" in d:
                d["tau_grid"] = TauGrid(**d["tau_grid"])
            if "noise" in d:
                d["noise"] = NoiseParams.from_dict(d["noise"])
        except TypeError as exc:
            raise ConfigError(f"bad tau_grid or noise field: {exc}") from exc
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return cls(**d)

    def to_dict(self) -> dict:
        return {
            "init": self.init,
            "phases": list(self.phases),
            "L": self.L,
            "tau_grid": {"start": self.tau_grid.start, "stop": self.tau_grid.stop, "points": self.tau_grid.points},
            "steps": self.steps,
            "backend": self.backend,
            "shots": self.shots,
            "noise": self.noise.to_dict(),
            "seed": self.seed,
            "topology_path": self.topology_path,
            "pair_order": list(self.pair_order) if self.pair_order else None,
        }


def load_config(path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return ExperimentConfig.from_dict(data)


@dataclass(frozen=True)
class ResultRow:
    tau: float
    phase: float
    L: int
    steps: int
    backend: str
    estimate: float
    stderr: float


def required_pairs(spec: InitSpec, steps: int = 1) -> list[tuple[str, str, int]]:
    """CNOT demand of prep + evolution; each pair gate costs four CNOTs per step."""
    return [("central", r, 4 * steps) for r in bath_roles(spec.L)] + prep_pairs(spec)


def assign(spec: InitSpec, steps: int, topo: DeviceTopology) -> QubitAssignment:
    return choose_assignment(required_pairs(spec, steps), topo)


def compose_circuit(
    spec: InitSpec,
    tau: float,
    steps: int,
    topo: DeviceTopology,
    assignment: QubitAssignment | None = None,
    pair_order=None,
) -> Circuit:
    """Prep followed by Trotter evolution, legalized for ``topo``."""
    assignment = assignment or assign(spec, steps, topo)
    order = tuple(pair_order) if pair_order else tuple(bath_roles(spec.L))
    circ = prep_circuit(spec, assignment, topo.n_qubits) + trotter_circuit(TrotterPlan(tau, steps, order), assignment)
    circ = reverse_cnot_rewrite(circ, topo)
    report = validate(circ, topo)
    if not report.legal:
        raise AssertionError(f"composed circuit is not legal: {report}")
    return circ


def point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _binomial_stderr(p: float, shots: int) -> float:
    return sqrt(max(p * (1 - p), 0.0) / shots)


def run(config: ExperimentConfig) -> list[ResultRow]:
    """One row per (phase, tau), ordered by phase then tau."""
    taus = config.tau_grid.values()
    topo = load_topology(config.topology_path) if config.backend != "exact" else None
    rows = []
    index = 0
    for phase in config.sweep_phases():
        spec = config.spec(phase)
        assignment = assign(spec, config.steps, topo) if topo is not None else None
        for tau in taus:
            est, err = _evaluate(config, spec, float(tau), topo, assignment, point_seed(config.seed, index))
            rows.append(ResultRow(float(tau), phase, spec.L, config.steps, config.backend, est, err))
            index += 1
    return rows


def _evaluate(config, spec, tau, topo, assignment, seed) -> tuple[float, float]:
    if config.backend == "exact":
        state = exact_evolve(target_state(spec), tau, build_hamiltonian(spec.L))
        central = 0
    else:
        circ = compose_circuit(spec, tau, config.steps, topo, assignment, config.pair_order)
        central = circ.role_map["central"]
        if config.backend == "noisy":
            if config.shots == 0:
                return noisy_expectation(circ, config.noise, central, seed)
            frac = noisy_run(circ, config.noise, config.shots, seed).excited_fraction(central)
            return frac, _binomial_stderr(frac, config.shots)
        state = simulate(circ)
    if config.shots == 0:
        return excited_population(state, central), 0.0
    frac = sample_counts(state, config.shots, seed).excited_fraction(central)
    return frac, _binomial_stderr(frac, config.shots)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(rows, path) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in rows:
                w.writerow([_fmt(r.tau), _fmt(r.phase), r.L, r.steps, r.backend, _fmt(r.estimate), _fmt(r.stderr)])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


class CsvFormatError(ValueError):
    pass


def read_csv(path) -> list[ResultRow]:
    rows = []
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise CsvFormatError(f"line 1: expected header {','.join(CSV_HEADER)}, got {header}")
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != len(CSV_HEADER):
                raise CsvFormatError(f"line {lineno}: expected {len(CSV_HEADER)} fields, got {len(rec)}")
            try:
                rows.append(
                    ResultRow(float(rec[0]), float(rec[1]), int(rec[2]), int(rec[3]), rec[4], float(rec[5]), float(rec[6]))
                )
            except ValueError as exc:
                raise CsvFormatError(f"line {lineno}: {exc}") from None
    return rows


def export_circuit(config: ExperimentConfig, tau: float, phase: float, path=None) -> str:
    """Write the legalized prep + evolution circuit for one sweep point as OpenQASM."""
    topo = load_topology(config.topology_path)
    circ = compose_circuit(config.spec(phase), tau, config.steps, topo, pair_order=config.pair_order)
    text = export_qasm(circ)
    if path is not None:
        Path(path).write_text(text)
    return text


def contrast(config_a: ExperimentConfig, config_b: ExperimentConfig, with_stderr: bool = False):
    """Difference of mean central-spin estimates between two runs.

    The configs are meant to differ only in phase; with ``with_stderr`` the
    pooled standard error is returned too.
    """
    ra, rb = run(config_a), run(config_b)
    value = float(np.mean([r.estimate for r in ra]) - np.mean([r.estimate for r in rb]))
    if not with_stderr:
        return value
    se = sqrt(sum(r.stderr**2 for r in ra) / len(ra) ** 2 + sum(r.stderr**2 for r in rb) / len(rb) ** 2)
    return value, se


def single_point(config: ExperimentConfig, tau: float, phase: float, **changes) -> ExperimentConfig:
    return replace(config, phases=(phase,), tau_grid=TauGrid(tau, tau, 1), **changes)


def oracle_rows(config: ExperimentConfig) -> list[dict]:
    out = []
    for phase in config.sweep_phases():
        spec = config.spec(phase)
        for tau in config.tau_grid.values():
            out.append({"tau": float(tau), "phase": phase, "L": spec.L, "population": population_closed_form(spec, tau)})
    return out


def compare_rows(config: ExperimentConfig) -> list[dict]:
    exact = run(replace(config, backend="exact", shots=0))
    trot = run(replace(config, backend="trotter", shots=0))
    return [
        {"tau": e.tau, "phase": e.phase, "L": e.L, "steps": t.steps, "exact": e.estimate, "trotter": t.estimate,
         "delta": t.estimate - e.estimate}
        for e, t in zip(exact, trot)
    ]


def write_table(rows: list[dict], fh) -> None:
    if not rows:
        return
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(list(rows[0]))
    for r in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in r.values()])
