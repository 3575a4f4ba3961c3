"""Digital simulation of the XX central-spin model on a small superconducting chip.

A statevector simulator, topology-aware circuit builder and experiment harness
for spin-1/2 baths coupled to a central spin, checked against exact evolution.
"""
from .circuit import Circuit, Op, simulate, unitary_of
from .exact import (
    build_hamiltonian,
    dark_residual,
    dicke_equivalence,
    exact_evolve,
    population_closed_form,
)
from .harness import ExperimentConfig, ResultRow, run
from .noise import NoiseParams, noisy_run
from .qsim import StateVector, excited_population, new_basis_state, sample_counts
from .states import ExcitedCentral, ThreePES, TwoPES, target_state
from .stateprep import prep_circuit
from .topology import DeviceTopology, choose_assignment, default_topology, reverse_cnot_rewrite, validate
from .trotter import TrotterPlan, trotter_circuit, trotter_error

__version__ = "0.1.0"
