"""Physical parameters, Hamiltonian, and decay channels of the two-atom cavity model.

All rates and frequencies are measured in units of the cavity decay rate
``kappa``, which is pinned to 1.  The drive detuning convention is
``delta_m = delta_cav = delta_p`` and ``delta_e = delta_p + delta_c``, i.e. the
pump detuning shifts every excited manifold while ``delta_c`` only moves the
upper atomic level.

Each decay channel ``(C, r)`` enters the master equation in standard Lindblad
form ``r * (C rho C† - (C†C rho + rho C†C) / 2)``, so ``r`` is the full
population decay rate of that channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .qspace import BasisSpec, QOperator, annihilation, atomic_sigma, number

KAPPA = 1.0


@dataclass(frozen=True)
class SystemParams:
    """Model parameters in units of kappa.

    g        atom-cavity coupling of atom 1 (atom 1 sits at an antinode)
    phi_z    atom-separation phase; atom 2 couples with g * cos(phi_z)
    eta      pump Rabi frequency on the g <-> m transition
    omega_c  control Rabi frequency on the m <-> e transition
    delta_p  pump detuning (also the cavity and m-level detuning)
    gamma_m  spontaneous decay rate of level m
    gamma_e  spontaneous decay rate of level e
    n_max    Fock cutoff of the cavity mode
    delta_c  extra one-photon detuning of level e (default 0)
    kappa    cavity decay rate, fixed at 1 as the unit
    """

    g: float
    phi_z: float
    eta: float
    omega_c: float
    delta_p: float
    gamma_m: float
    gamma_e: float
    n_max: int = 6
    delta_c: float = 0.0
    kappa: float = KAPPA

    def __post_init__(self):
        if self.kappa != KAPPA:
            raise ValueError("kappa is the unit of all rates and must stay 1")
        for name in ("g", "eta", "omega_c", "gamma_m", "gamma_e"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    @property
    def basis(self) -> BasisSpec:
        return BasisSpec(self.n_max)


@dataclass(frozen=True)
class CollapseSet:
    """Decay channels as (operator, rate) pairs on a common basis."""

    basis: BasisSpec
    channels: tuple[tuple[QOperator, float], ...]

    def __post_init__(self):
        for op, rate in self.channels:
            if rate < 0:
                raise ValueError("collapse rates must be non-negative")
            if op.basis != self.basis:
                raise ValueError("collapse operators must share the CollapseSet basis")


def couplings(params: SystemParams) -> tuple[float, float, float, float]:
    """Per-atom couplings and their sum/difference: (g1, g2, g_plus, g_minus).

    Atom 1 is fixed at an antinode (g1 = g); atom 2 carries the separation
    phase, g2 = g cos(phi_z).  Hence g± = g (1 ± cos(phi_z)).
    """
    g1 = params.g
    g2 = params.g * math.cos(params.phi_z)
    return g1, g2, g1 + g2, g1 - g2


def pump_transition_operator(basis: BasisSpec) -> QOperator:
    """Sum over atoms of (sigma_mg + sigma_gm); the pump couples through this."""
    op = atomic_sigma(basis, 1, "m", "g") + atomic_sigma(basis, 1, "g", "m")
    return op + atomic_sigma(basis, 2, "m", "g") + atomic_sigma(basis, 2, "g", "m")


def detuning_operator(basis: BasisSpec) -> QOperator:
    """Coefficient of delta_p in the Hamiltonian: a†a + sum_i (sigma_mm + sigma_ee)."""
    op = number(basis)
    for atom in (1, 2):
        op = op + atomic_sigma(basis, atom, "m", "m") + atomic_sigma(basis, atom, "e", "e")
    return op


def total_excitation(basis: BasisSpec) -> QOperator:
    """Weighted excitation number a†a + sum_i (sigma_mm + 2 sigma_ee).

    Commutes with the Hamiltonian when both drives are off.
    """
    op = number(basis)
    for atom in (1, 2):
        op = op + atomic_sigma(basis, atom, "m", "m") + 2.0 * atomic_sigma(basis, atom, "e", "e")
    return op


def build_hamiltonian(params: SystemParams) -> QOperator:
    """Rotating-frame Hamiltonian (units of kappa, hbar = 1).

    H = delta_p (a†a + sum_i sigma_mm) + (delta_p + delta_c) sum_i sigma_ee
        + sum_i g_i (a sigma_mg + a† sigma_gm)
        + eta sum_i (sigma_mg + sigma_gm)
        + omega_c sum_i (sigma_me + sigma_em)
    """
    basis = params.basis
    g1, g2, _, _ = couplings(params)
    a = annihilation(basis)
    a_dag = a.dag()

    h = params.delta_p * number(basis).mat.copy()
    for atom, gi in ((1, g1), (2, g2)):
        sigma_mg = atomic_sigma(basis, atom, "m", "g").mat
        sigma_gm = atomic_sigma(basis, atom, "g", "m").mat
        sigma_me = atomic_sigma(basis, atom, "m", "e").mat
        sigma_em = atomic_sigma(basis, atom, "e", "m").mat
        h = h + params.delta_p * atomic_sigma(basis, atom, "m", "m").mat
        h = h + (params.delta_p + params.delta_c) * atomic_sigma(basis, atom, "e", "e").mat
        h = h + gi * (a.mat @ sigma_mg + a_dag.mat @ sigma_gm)
        h = h + params.eta * (sigma_mg + sigma_gm)
        h = h + params.omega_c * (sigma_me + sigma_em)
    return QOperator(basis, h)


def build_collapse_set(params: SystemParams) -> CollapseSet:
    """Cavity and atomic decay channels.

    Channels: (a, kappa), (sigma_gm^i, gamma_m) and (sigma_me^i, gamma_e) for
    i = 1, 2.  Zero-rate channels are dropped.
    """
    basis = params.basis
    channels: list[tuple[QOperator, float]] = [(annihilation(basis), params.kappa)]
    if params.gamma_m > 0:
        channels.append((atomic_sigma(basis, 1, "g", "m"), params.gamma_m))
        channels.append((atomic_sigma(basis, 2, "g", "m"), params.gamma_m))
    if params.gamma_e > 0:
        channels.append((atomic_sigma(basis, 1, "m", "e"), params.gamma_e))
        channels.append((atomic_sigma(basis, 2, "m", "e"), params.gamma_e))
    return CollapseSet(basis, tuple(channels))
