"""Monte-Carlo Pauli-trajectory noise: depolarizing gate errors plus readout flips.

Trajectories are simulated in batches: a batch is an array of shape
``(B, 2, ..., 2)`` advanced gate by gate. Batch ``k`` draws from its own
generator seeded by ``(seed, k)``, so results do not depend on how batches
are scheduled.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit
from .gates import matrix_of
from .qsim import MeasurementCounts

BATCH = 4096


@dataclass(frozen=True)
class NoiseParams:
    p1: float = 0.001
    p2: float = 0.03
    readout_flip_0to1: float | Sequence[float] = 0.03
    readout_flip_1to0: float | Sequence[float] = 0.05
    trajectories: int = 1000

    def __post_init__(self):
        for name in ("p1", "p2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 0.5:
                raise ValueError(f"noise.{name} must lie in [0, 0.5], got {v}")
        for name in ("readout_flip_0to1", "readout_flip_1to0"):
            v = np.atleast_1d(getattr(self, name))
            if np.any(v < 0) or np.any(v > 0.5):
                raise ValueError(f"noise.{name} must lie in [0, 0.5], got {getattr(self, name)}")
            if v.size > 1:
                object.__setattr__(self, name, tuple(float(x) for x in v))
        if self.trajectories < 1:
            raise ValueError(f"noise.trajectories must be >= 1, got {self.trajectories}")

    @classmethod
    def noiseless(cls, trajectories: int = 1) -> NoiseParams:
        return cls(0.0, 0.0, 0.0, 0.0, trajectories)

    @classmethod
    def from_dict(cls, d: dict) -> NoiseParams:
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown noise field(s): {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("readout_flip_0to1", "readout_flip_1to0"):
            if isinstance(d[k], tuple):
                d[k] = list(d[k])
        return d

    def flip_probs(self, n_qubits: int) -> tuple[np.ndarray, np.ndarray]:
        f01 = np.broadcast_to(np.asarray(self.readout_flip_0to1, float), (n_qubits,))
        f10 = np.broadcast_to(np.asarray(self.readout_flip_1to0, float), (n_qubits,))
        return f01, f10


_P = [
    None,
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def _apply(psi: np.ndarray, m: np.ndarray, axes: list[int]) -> np.ndarray:
    k = len(axes)
    g = m.reshape((2,) * (2 * k))
    out = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


@dataclass
class _Batch:
    n: int
    psi: np.ndarray
    rng: np.random.Generator
    gate_cache: dict = field(default_factory=dict)

    def axis(self, q: int) -> int:
        return 1 + self.n - 1 - q

    def gate(self, op):
        m = self.gate_cache.get(op.gate)
        if m is None:
            m = self.gate_cache[op.gate] = matrix_of(op.gate)
        # batch axis 0 is untouched; control is the high bit of the local index
        self.psi = _apply(self.psi, m, [self.axis(q) for q in op.qubits])

    def depolarize(self, qubits: tuple[int, ...], p: float):
        if p <= 0:
            return
        size = self.psi.shape[0]
        hit = np.nonzero(self.rng.random(size) < p)[0]
        if hit.size == 0:
            return
        k = len(qubits)
        # uniform over the 4^k - 1 non-identity Pauli strings
        code = self.rng.integers(1, 4**k, size=hit.size)
        for i, q in enumerate(qubits):
            which = (code >> (2 * i)) & 3
            for pauli in (1, 2, 3):
                rows = hit[which == pauli]
                if rows.size:
                    self.psi[rows] = _apply(self.psi[rows], _P[pauli], [self.axis(q)])


def _run_batch(circuit: Circuit, noise: NoiseParams, size: int, rng) -> np.ndarray:
    n = circuit.n_qubits
    psi = np.zeros((size,) + (2,) * n, dtype=complex)
    psi.reshape(size, -1)[:, 0] = 1.0
    b = _Batch(n, psi, rng)
    for op in circuit.ops:
        b.gate(op)
        b.depolarize(op.qubits, noise.p2 if op.gate.n_qubits == 2 else noise.p1)
    return np.abs(b.psi.reshape(size, -1)) ** 2


def _batches(total: int):
    start = 0
    k = 0
    while start < total:
        size = min(BATCH, total - start)
        yield k, start, size
        start += size
        k += 1


def trajectory_probabilities(circuit: Circuit, noise: NoiseParams, seed: int):
    """Yield ``(batch_rng, probs)`` with one row of outcome probabilities per trajectory."""
    for k, _, size in _batches(noise.trajectories):
        rng = np.random.default_rng([int(seed), k])
        yield rng, _run_batch(circuit, noise, size, rng)


def _flip_readout(outcomes: np.ndarray, n: int, noise: NoiseParams, rng) -> np.ndarray:
    f01, f10 = noise.flip_probs(n)
    if not (np.any(f01) or np.any(f10)):
        return outcomes
    bits = (outcomes[:, None] >> np.arange(n)) & 1
    p_flip = np.where(bits == 1, f10, f01)
    flips = rng.random(bits.shape) < p_flip
    return outcomes ^ (flips.astype(np.int64) << np.arange(n)).sum(axis=1)


def noisy_run(circuit: Circuit, noise: NoiseParams, shots: int, seed: int) -> MeasurementCounts:
    """Sample ``shots`` readouts pooled over ``noise.trajectories`` noisy trajectories.

    Shots are spread as evenly as possible, earlier trajectories taking the
    remainder. After each gate, with probability ``p2`` (two-qubit) or ``p1``
    (single-qubit), a uniformly random non-identity Pauli hits the gate's qubits.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    n = circuit.n_qubits
    T = noise.trajectories
    per, extra = divmod(shots, T)
    tally = np.zeros(2**n, dtype=np.int64)
    for (k, start, size), (rng, probs) in zip(_batches(T), trajectory_probabilities(circuit, noise, seed)):
        counts_per = per + (np.arange(start, start + size) < extra)
        reps = np.repeat(np.arange(size), counts_per)
        if reps.size == 0:
            continue
        cdf = np.cumsum(probs, axis=1)
        cdf[:, -1] = 1.0
        u = rng.random(reps.size)
        outcomes = _inverse_cdf(cdf, reps, u)
        outcomes = _flip_readout(outcomes, n, noise, rng)
        tally += np.bincount(outcomes, minlength=2**n)
    counts = {int(k): int(c) for k, c in enumerate(tally) if c}
    return MeasurementCounts(n, shots, counts)


def _inverse_cdf(cdf: np.ndarray, rows: np.ndarray, u: np.ndarray) -> np.ndarray:
    out = np.empty(u.size, dtype=np.int64)
    step = max(1, (1 << 22) // cdf.shape[1])
    for s in range(0, u.size, step):
        sl = slice(s, s + step)
        out[sl] = (u[sl, None] >= cdf[rows[sl]]).sum(axis=1)
    return out


def noisy_expectation(circuit: Circuit, noise: NoiseParams, qubit: int, seed: int) -> tuple[float, float]:
    """Trajectory-averaged probability that ``qubit`` reads 1, with its standard error.

    Readout flips enter analytically: p_read = p (1 - f10) + (1 - p) f01.
    """
    f01, f10 = noise.flip_probs(circuit.n_qubits)
    mask = (np.arange(2**circuit.n_qubits) >> qubit) & 1 == 1
    pops = np.concatenate([probs[:, mask].sum(axis=1) for _, probs in trajectory_probabilities(circuit, noise, seed)])
    read = pops * (1 - f10[qubit]) + (1 - pops) * f01[qubit]
    err = float(read.std(ddof=1) / np.sqrt(read.size)) if read.size > 1 else 0.0
    return float(np.clip(read.mean(), 0.0, 1.0)), err
