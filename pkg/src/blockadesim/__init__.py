"""Steady-state simulator for multiphoton blockade with two cascade three-level atoms.

The package is organized in four layers:

* :mod:`blockadesim.qspace`  -- composite-basis bookkeeping and operator algebra
* :mod:`blockadesim.model`   -- physical parameters, Hamiltonian, decay channels
* :mod:`blockadesim.steady`  -- Liouvillian, steady-state solver, RK4 oracle,
  photon statistics, detuning sweeps
* :mod:`blockadesim.dressed` -- excitation-manifold matrices, closed-form
  spectra, transition strengths, ladder anharmonicity diagnostics

:mod:`blockadesim.cli` provides the ``sim`` command with figure presets.
"""

from .dressed import (
    DressedSpectrum,
    EnergyDifferences,
    ManifoldHamiltonian,
    analytic_eigenstates,
    analytic_eigenvalues,
    analytic_spectrum,
    eigenstate_residuals,
    energy_differences,
    manifold_hamiltonian,
    peak_splitting,
    transition_strengths,
)
from .model import (
    CollapseSet,
    SystemParams,
    build_collapse_set,
    build_hamiltonian,
    couplings,
)
from .qspace import BasisSpec, QOperator, annihilation, atomic_sigma
from .steady import (
    LiouvilleProblem,
    Observables,
    build_liouvillian,
    evolve_oracle,
    observables,
    solve_steady_state,
    steady_observables,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "QOperator",
    "annihilation",
    "atomic_sigma",
    "SystemParams",
    "CollapseSet",
    "couplings",
    "build_hamiltonian",
    "build_collapse_set",
    "LiouvilleProblem",
    "Observables",
    "build_liouvillian",
    "solve_steady_state",
    "evolve_oracle",
    "observables",
    "steady_observables",
    "sweep",
    "ManifoldHamiltonian",
    "DressedSpectrum",
    "EnergyDifferences",
    "manifold_hamiltonian",
    "analytic_spectrum",
    "analytic_eigenvalues",
    "analytic_eigenstates",
    "eigenstate_residuals",
    "transition_strengths",
    "energy_differences",
    "peak_splitting",
    "__version__",
]
