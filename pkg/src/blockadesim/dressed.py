"""Fixed-excitation manifold Hamiltonians and their closed-form spectra.

With both drives treated perturbatively, the atom-cavity block decomposes into
manifolds of total excitation number n.  This module builds the exact manifold
matrices for arbitrary collective couplings ``g_plus = g1 + g2`` and
``g_minus = g1 - g2``, and exposes closed-form eigenvalues, eigenstates, and
energy-difference diagnostics for the two special cases

* ``in_phase``  : g1 = g2 = g   (g_plus = 2g, g_minus = 0)
* ``out_phase`` : g1 = -g2 = g  (g_plus = 0,  g_minus = 2g)

Manifold basis ordering (row order of the matrices), photon count in ket:

* n = 1: |GG,1>, |MG+,0>, |MG-,0>, |EG+,0>, |EG-,0>
* n = 2: |GG,2>, |MG+,1>, |MG-,1>, |EG+,1>, |EG-,1>, |EM+,0>, |EM-,0>, |MM,0>, |EE,0>
* n = 3: same slots with one more photon everywhere

where MG+- etc. are the symmetric/antisymmetric two-atom combinations.

The closed-form eigenvector tables are kept verbatim; a few entries are known
to be internally inconsistent (they do not satisfy H v = lambda v).  They are
reported, not corrected: :func:`eigenstate_residuals` quantifies every entry
and :data:`KNOWN_INCONSISTENT_STATES` lists the generically failing labels.
Callers needing reliable vectors should use the numeric eigenvectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import pump_transition_operator
from .qspace import BasisSpec, basis_ket

CASES = ("in_phase", "out_phase")

SQ2 = math.sqrt(2.0)
SQ6 = math.sqrt(6.0)


class UnsupportedCase(ValueError):
    """Closed forms exist only for the in-phase and out-phase cases."""


class DegenerateLimit(ValueError):
    """A closed-form eigenstate expression is singular at these parameters."""


MANIFOLD_SLOTS = {
    1: ("GG", "MG+", "MG-", "EG+", "EG-"),
    2: ("GG", "MG+", "MG-", "EG+", "EG-", "EM+", "EM-", "MM", "EE"),
    3: ("GG", "MG+", "MG-", "EG+", "EG-", "EM+", "EM-", "MM", "EE"),
}

# photons carried by each slot relative to the manifold number n
_SLOT_PHOTON_OFFSET = {
    "GG": 0, "MG+": 1, "MG-": 1, "EG+": 1, "EG-": 1,
    "EM+": 2, "EM-": 2, "MM": 2, "EE": 2,
}

# two-atom content of each slot: list of (level1, level2, amplitude)
_SLOT_ATOMS = {
    "GG": (("g", "g", 1.0),),
    "MG+": (("m", "g", 1 / SQ2), ("g", "m", 1 / SQ2)),
    "MG-": (("m", "g", 1 / SQ2), ("g", "m", -1 / SQ2)),
    "EG+": (("e", "g", 1 / SQ2), ("g", "e", 1 / SQ2)),
    "EG-": (("e", "g", 1 / SQ2), ("g", "e", -1 / SQ2)),
    "EM+": (("e", "m", 1 / SQ2), ("m", "e", 1 / SQ2)),
    "EM-": (("e", "m", 1 / SQ2), ("m", "e", -1 / SQ2)),
    "MM": (("m", "m", 1.0),),
    "EE": (("e", "e", 1.0),),
}


def _validate_case(case: str) -> None:
    if case not in CASES:
        raise UnsupportedCase(f"case must be one of {CASES}, got {case!r}")


def case_couplings(case: str, g: float) -> tuple[float, float]:
    """(g_plus, g_minus) for one of the two special phase cases."""
    _validate_case(case)
    if case == "in_phase":
        return 2.0 * g, 0.0
    return 0.0, 2.0 * g


@dataclass(frozen=True)
class ManifoldHamiltonian:
    """Real symmetric matrix of one excitation manifold."""

    n_photons: int
    matrix: np.ndarray
    basis_labels: tuple[str, ...]
    g_plus: float
    g_minus: float
    omega_c: float

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


@dataclass(frozen=True)
class AuxConstants:
    """Scalar combinations entering the two- and three-photon eigenvalues.

    alpha, x are in kappa^2; beta, y in kappa^4; gamma_aux, z in kappa^2.
    """

    alpha: float
    beta: float
    gamma_aux: float
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class DressedSpectrum:
    """Numeric (and, for the special cases, analytic) spectrum of one manifold."""

    n_photons: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    analytic_eigenvalues: np.ndarray | None
    aux: AuxConstants | None
    g_plus: float | None
    g_minus: float | None
    omega_c: float | None


@dataclass(frozen=True)
class LabeledState:
    """One closed-form eigenstate: label, eigenvalue, normalized vector."""

    label: str
    eigenvalue: float
    vector: np.ndarray


@dataclass(frozen=True)
class EigenstateResidual:
    """Residual ||H v - lambda v|| of one closed-form eigenstate."""

    label: str
    eigenvalue: float
    residual: float
    consistent: bool


@dataclass(frozen=True)
class EnergyDifferences:
    """Anharmonicity diagnostics of the dressed ladder (units of kappa).

    dE2ph_*      : two-photon-step mismatch at the one-photon resonances
    dE3ph_*      : third-photon mismatch at the outer two-photon resonances
    dE3ph_prime_*: third-photon mismatch at the inner two-photon resonances
    """

    dE2ph_plus: float
    dE2ph_minus: float
    dE3ph_plus: float
    dE3ph_minus: float
    dE3ph_prime_plus: float
    dE3ph_prime_minus: float


def manifold_hamiltonian(
    n: int, g_plus: float, g_minus: float, omega_c: float
) -> ManifoldHamiltonian:
    """Exact manifold matrix for arbitrary collective couplings."""
    gp, gm, oc = float(g_plus), float(g_minus), float(omega_c)
    if n == 1:
        m = np.zeros((5, 5))
        m[0, 1] = gp / SQ2
        m[0, 2] = gm / SQ2
        m[1, 3] = oc
        m[2, 4] = oc
    elif n == 2:
        m = np.zeros((9, 9))
        m[0, 1] = gp
        m[0, 2] = gm
        m[1, 3] = oc
        m[1, 7] = gp / SQ2
        m[2, 4] = oc
        m[2, 7] = -gm / SQ2
        m[3, 5] = gp / 2.0
        m[3, 6] = -gm / 2.0
        m[4, 5] = -gm / 2.0
        m[4, 6] = gp / 2.0
        m[5, 7] = SQ2 * oc
        m[5, 8] = SQ2 * oc
    elif n == 3:
        m = np.zeros((9, 9))
        m[0, 1] = SQ6 * gp / 2.0
        m[0, 2] = SQ6 * gm / 2.0
        m[1, 3] = oc
        m[1, 7] = gp
        m[2, 4] = oc
        m[2, 7] = -gm
        m[3, 5] = SQ2 * gp / 2.0
        m[3, 6] = -SQ2 * gm / 2.0
        m[4, 5] = -SQ2 * gm / 2.0
        m[4, 6] = SQ2 * gp / 2.0
        m[5, 7] = SQ2 * oc
        m[5, 8] = SQ2 * oc
    else:
        raise ValueError(f"manifold number must be 1, 2, or 3, got {n}")
    labels = tuple(
        f"|{slot},{n - _SLOT_PHOTON_OFFSET[slot]}>" for slot in MANIFOLD_SLOTS[n]
    )
    return ManifoldHamiltonian(n, m + m.T, labels, gp, gm, oc)


def aux_constants(g: float, omega_c: float) -> AuxConstants:
    """Eigenvalue building blocks shared by both phase cases."""
    g2, o2 = g * g, omega_c * omega_c
    return AuxConstants(
        alpha=7.0 * g2 + 5.0 * o2,
        beta=25.0 * g2 * g2 + 6.0 * g2 * o2 + 9.0 * o2 * o2,
        gamma_aux=-5.0 * g2 + 3.0 * o2,
        x=12.0 * g2 + 5.0 * o2,
        y=64.0 * g2 * g2 + 24.0 * g2 * o2 + 9.0 * o2 * o2,
        z=-8.0 * g2 + 3.0 * o2,
    )


def analytic_eigenvalues(n: int, g: float, omega_c: float) -> dict[str, float]:
    """Closed-form eigenvalues by label; identical for both phase cases."""
    aux = aux_constants(g, omega_c)
    if n == 1:
        r = math.sqrt(2.0 * g * g + omega_c * omega_c)
        return {"0": 0.0, "1+": omega_c, "1-": -omega_c, "2+": r, "2-": -r}
    if n == 2:
        l1 = math.sqrt(g * g + omega_c * omega_c)
        l2 = math.sqrt((aux.alpha - math.sqrt(aux.beta)) / 2.0)
        l3 = math.sqrt((aux.alpha + math.sqrt(aux.beta)) / 2.0)
    elif n == 3:
        l1 = math.sqrt(2.0 * g * g + omega_c * omega_c)
        l2 = math.sqrt((aux.x - math.sqrt(aux.y)) / 2.0)
        l3 = math.sqrt((aux.x + math.sqrt(aux.y)) / 2.0)
    else:
        raise ValueError(f"manifold number must be 1, 2, or 3, got {n}")
    return {
        "0": 0.0, "0+": 0.0, "0-": 0.0,
        "1+": l1, "1-": -l1, "2+": l2, "2-": -l2, "3+": l3, "3-": -l3,
    }


def numeric_spectrum(mh: ManifoldHamiltonian) -> DressedSpectrum:
    """Eigendecomposition of a manifold matrix (ascending eigenvalues)."""
    eigvals, eigvecs = np.linalg.eigh(mh.matrix)
    return DressedSpectrum(
        n_photons=mh.n_photons,
        eigenvalues=eigvals,
        eigenvectors=eigvecs,
        analytic_eigenvalues=None,
        aux=None,
        g_plus=mh.g_plus,
        g_minus=mh.g_minus,
        omega_c=mh.omega_c,
    )


def analytic_spectrum(case: str, n: int, g: float, omega_c: float) -> DressedSpectrum:
    """Numeric diagonalization paired with the closed-form eigenvalue list."""
    _validate_case(case)
    if g <= 0:
        raise ValueError("g must be positive")
    gp, gm = case_couplings(case, g)
    mh = manifold_hamiltonian(n, gp, gm, omega_c)
    base = numeric_spectrum(mh)
    analytic = np.sort(np.array(list(analytic_eigenvalues(n, g, omega_c).values())))
    return DressedSpectrum(
        n_photons=base.n_photons,
        eigenvalues=base.eigenvalues,
        eigenvectors=base.eigenvectors,
        analytic_eigenvalues=analytic,
        aux=aux_constants(g, omega_c),
        g_plus=gp,
        g_minus=gm,
        omega_c=float(omega_c),
    )


def ground_spectrum() -> DressedSpectrum:
    """The trivial zero-excitation manifold (single state |GG,0>)."""
    return DressedSpectrum(
        n_photons=0,
        eigenvalues=np.zeros(1),
        eigenvectors=np.eye(1),
        analytic_eigenvalues=np.zeros(1),
        aux=None,
        g_plus=None,
        g_minus=None,
        omega_c=None,
    )


# ---------------------------------------------------------------------------
# closed-form eigenstate tables
# ---------------------------------------------------------------------------

def _states_one_photon(case: str, g: float, oc: float) -> dict[str, tuple[float, list[float]]]:
    r = math.sqrt(2.0 * g * g + oc * oc)
    if case == "in_phase":
        return {
            "0": (0.0, [-oc / (SQ2 * g), 0, 0, 1, 0]),
            "1+": (oc, [0, 0, 1, 0, 1]),
            "1-": (-oc, [0, 0, -1, 0, 1]),
            "2+": (r, [SQ2 * g / oc, r / oc, 0, 1, 0]),
            "2-": (-r, [SQ2 * g / oc, -r / oc, 0, 1, 0]),
        }
    return {
        "0": (0.0, [-oc / (SQ2 * g), 0, 0, 0, 1]),
        "1+": (oc, [0, 1, 0, 1, 0]),
        "1-": (-oc, [0, -1, 0, 1, 0]),
        "2+": (r, [SQ2 * g / oc, 0, r / oc, 0, 1]),
        "2-": (-r, [SQ2 * g / oc, 0, -r / oc, 0, 1]),
    }


def _states_two_photon(case: str, g: float, oc: float) -> dict[str, tuple[float, list[float]]]:
    aux = aux_constants(g, oc)
    sb = math.sqrt(aux.beta)
    gam = aux.gamma_aux
    lam1 = math.sqrt(g * g + oc * oc)
    lam2 = math.sqrt((aux.alpha - sb) / 2.0)
    lam3 = math.sqrt((aux.alpha + sb) / 2.0)
    states: dict[str, tuple[float, list[float]]] = {}
    if case == "in_phase":
        states["0+"] = (0.0, [oc**2 / (SQ2 * g**2), 0, 0, -SQ2 * oc / g, 0, 0, 0, 0, 1])
        states["0-"] = (0.0, [(oc**2 - g**2) / (SQ2 * g**2), 0, 0, -SQ2 * oc / g, 0, 0, 0, 1, 0])
        states["0"] = (0.0, [0, 0, -g / oc, 0, 0, 0, 1, 0, 0])
        for s, lbl in ((1.0, "1+"), (-1.0, "1-")):
            states[lbl] = (s * lam1, [0, 0, oc / g, 0, s * lam1 / g, 0, 1, 0, 0])
        for s, lbl in ((1.0, "2+"), (-1.0, "2-")):
            v = [0.0] * 9
            v[0] = s * (gam + sb) / (3 * SQ2 * oc**2)
            v[1] = -s * math.sqrt(aux.alpha - sb) * (gam + sb) / (12 * g * oc**2)
            v[3] = -((gam - 6 * g**2) + sb) / (6 * SQ2 * g * oc)
            v[5] = s * math.sqrt(aux.alpha - sb) / (2 * oc)
            v[7] = (-gam + 6 * oc**2 - sb) / (6 * oc**2)
            v[8] = 1.0
            states[lbl] = (s * lam2, v)
        for s, lbl in ((1.0, "3+"), (-1.0, "3-")):
            v = [0.0] * 9
            v[0] = (-gam + sb) / (3 * SQ2 * oc**2)
            v[1] = s * math.sqrt(aux.alpha + sb) * (-gam + sb) / (12 * g * oc**2)
            v[3] = ((-gam + 6 * g**2) + sb) / (6 * SQ2 * g * oc)
            v[5] = s * math.sqrt(aux.alpha + sb) / (2 * oc)
            v[7] = (-gam + 6 * oc**2 + sb) / (6 * oc**2)
            v[8] = 1.0
            states[lbl] = (s * lam3, v)
        return states
    # out_phase table; the "0+", "0-", "1+", "1-", "2+", "2-" entries below are
    # known to be internally inconsistent as written (see KNOWN_INCONSISTENT_STATES)
    states["0+"] = (0.0, [-oc**2 / (SQ2 * g), 0, 0, 0, SQ2 * oc / g, 0, 0, 0, 1])
    states["0-"] = (0.0, [(g**2 - oc**2) / (SQ2 * g), 0, 0, 0, SQ2 * oc / g, 0, 0, 1, 0])
    states["0"] = (0.0, [0, g / oc, 0, 0, 0, 0, 1, 0, 0])
    for s, lbl in ((1.0, "1+"), (-1.0, "1-")):
        states[lbl] = (s * lam1, [0, -oc / g, 0, -s * (g**2 + oc**2) / g, 0, 0, 1, 0, 0])
    for s, lbl in ((1.0, "2+"), (-1.0, "2-")):
        v = [0.0] * 9
        v[0] = (gam + math.sqrt(aux.alpha)) / (3 * SQ2 * oc**2)
        v[2] = s * math.sqrt(aux.alpha - sb) * (gam + sb) / (12 * g * oc**2)
        v[4] = (gam - 6 * g**2 + sb) / (6 * SQ2 * g * oc)
        v[5] = s * math.sqrt(aux.alpha - sb) / (2 * oc)
        v[7] = (-gam + 6 * oc**2 - sb) / (6 * oc**2)
        v[8] = 1.0
        states[lbl] = (s * lam2, v)
    for s, lbl in ((1.0, "3+"), (-1.0, "3-")):
        v = [0.0] * 9
        v[0] = -(-gam + sb) / (3 * SQ2 * oc**2)
        v[2] = -s * math.sqrt(aux.alpha + sb) * (-gam + sb) / (12 * g * oc**2)
        v[4] = -(-gam + 6 * g**2 + sb) / (6 * SQ2 * g * oc)
        v[5] = s * math.sqrt(aux.alpha + sb) / (2 * oc)
        v[7] = (-gam + 6 * oc**2 + sb) / (6 * oc**2)
        v[8] = 1.0
        states[lbl] = (s * lam3, v)
    return states


def _states_three_photon_out(g: float, oc: float) -> dict[str, tuple[float, list[float]]]:
    aux = aux_constants(g, oc)
    sy = math.sqrt(aux.y)
    z = aux.z
    lam1 = math.sqrt(2 * g**2 + oc**2)
    lam2 = math.sqrt((aux.x - sy) / 2.0)
    lam3 = math.sqrt((aux.x + sy) / 2.0)
    states: dict[str, tuple[float, list[float]]] = {}
    states["0+"] = (0.0, [-oc**2 / (SQ6 * g**2), 0, 0, 0, oc / g, 0, 0, 0, 1])
    states["0-"] = (0.0, [(2 * g**2 - oc**2) / (SQ6 * g**2), 0, 0, 0, oc / g, 0, 0, 1, 0])
    states["0"] = (0.0, [0, SQ2 * g / oc, 0, 0, 0, 0, 1, 0, 0])
    for s, lbl in ((1.0, "1+"), (-1.0, "1-")):
        states[lbl] = (
            s * lam1,
            [0, oc / (SQ2 * g), 0, s * lam1 / (SQ2 * g), 0, 0, -1, 0, 0],
        )
    for s, lbl in ((1.0, "2+"), (-1.0, "2-")):
        v = [0.0] * 9
        v[0] = s * (z + sy) / (2 * SQ6 * oc**2)
        v[2] = s * math.sqrt(aux.x - sy) * (z + sy) / (12 * SQ2 * g * oc**2)
        v[4] = ((z - 12 * g**2) + sy) / (12 * g * oc)
        v[5] = s * math.sqrt(aux.x - sy) / (2 * oc)
        v[7] = (-z + 6 * oc**2 - sy) / (6 * oc**2)
        v[8] = 1.0
        states[lbl] = (s * lam2, v)
    for s, lbl in ((1.0, "3+"), (-1.0, "3-")):
        v = [0.0] * 9
        v[0] = (z - sy) / (2 * SQ6 * oc**2)
        v[2] = s * math.sqrt(aux.x + sy) * (z - sy) / (12 * SQ2 * g * oc**2)
        v[4] = ((z - 12 * g**2) - sy) / (12 * g * oc)
        v[5] = s * math.sqrt(aux.x + sy) / (2 * oc)
        v[7] = (-z + 6 * oc**2 + sy) / (6 * oc**2)
        v[8] = 1.0
        states[lbl] = (s * lam3, v)
    return states


def _swap_phase_case(vec: list[float] | np.ndarray) -> np.ndarray:
    """Exact map between the two phase cases for the 9-slot manifolds.

    Exchanging the symmetric and antisymmetric one-excited-atom slots and
    negating the doubly-excited slots conjugates the out-phase manifold matrix
    into the in-phase one (and vice versa).
    """
    w = np.array(vec, dtype=float)
    w[[1, 2]] = w[[2, 1]]
    w[[3, 4]] = w[[4, 3]]
    w[5:] *= -1.0
    return w


def analytic_eigenstates(case: str, n: int, g: float, omega_c: float) -> tuple[LabeledState, ...]:
    """Closed-form eigenstates of one manifold, normalized.

    Raises :class:`DegenerateLimit` for g <= 0 or omega_c <= 0 where the
    expressions contain singular 1/g or 1/omega_c factors; use numeric
    eigenvectors there.  Entries listed in :data:`KNOWN_INCONSISTENT_STATES`
    are returned verbatim even though they fail the eigen-residual check.
    """
    _validate_case(case)
    if g <= 0 or omega_c <= 0:
        raise DegenerateLimit(
            "closed-form eigenstates are singular at g = 0 or omega_c = 0; "
            "use numeric eigenvectors instead"
        )
    if n == 1:
        table = _states_one_photon(case, g, omega_c)
    elif n == 2:
        table = _states_two_photon(case, g, omega_c)
    elif n == 3:
        table = _states_three_photon_out(g, omega_c)
        if case == "in_phase":
            table = {
                lbl: (lam, list(_swap_phase_case(vec))) for lbl, (lam, vec) in table.items()
            }
    else:
        raise ValueError(f"manifold number must be 1, 2, or 3, got {n}")
    out = []
    for label, (lam, vec) in table.items():
        v = np.array(vec, dtype=float)
        v = v / np.linalg.norm(v)
        out.append(LabeledState(label, lam, v))
    return tuple(out)


# labels whose closed-form vectors fail H v = lambda v for generic parameters
KNOWN_INCONSISTENT_STATES: dict[tuple[str, int], frozenset[str]] = {
    ("in_phase", 1): frozenset(),
    ("out_phase", 1): frozenset(),
    ("in_phase", 2): frozenset({"2+"}),
    ("out_phase", 2): frozenset({"0+", "0-", "1+", "1-", "2+", "2-"}),
    ("in_phase", 3): frozenset({"2-"}),
    ("out_phase", 3): frozenset({"2-"}),
}


def eigenstate_residuals(
    case: str, n: int, g: float, omega_c: float, tol: float = 1e-8
) -> tuple[EigenstateResidual, ...]:
    """Residual report for every closed-form eigenstate of one manifold."""
    gp, gm = case_couplings(case, g)
    mh = manifold_hamiltonian(n, gp, gm, omega_c)
    records = []
    for state in analytic_eigenstates(case, n, g, omega_c):
        residual = float(
            np.linalg.norm(mh.matrix @ state.vector - state.eigenvalue * state.vector)
        )
        records.append(
            EigenstateResidual(state.label, state.eigenvalue, residual, residual < tol)
        )
    return tuple(records)


# ---------------------------------------------------------------------------
# embedding into the composite space and transition strengths
# ---------------------------------------------------------------------------

def manifold_kets(n: int, basis: BasisSpec) -> np.ndarray:
    """Columns are the manifold basis kets expressed in the composite basis."""
    if n == 0:
        return basis_ket(basis, "g", "g", 0).reshape(-1, 1)
    if n not in MANIFOLD_SLOTS:
        raise ValueError(f"manifold number must be 0..3, got {n}")
    if basis.n_max < n:
        raise ValueError(f"basis cutoff {basis.n_max} too small for manifold {n}")
    cols = []
    for slot in MANIFOLD_SLOTS[n]:
        n_photon = n - _SLOT_PHOTON_OFFSET[slot]
        vec = np.zeros(basis.dim, dtype=complex)
        for l1, l2, amp in _SLOT_ATOMS[slot]:
            vec += amp * basis_ket(basis, l1, l2, n_photon)
        cols.append(vec)
    return np.column_stack(cols)


def transition_strengths(
    spectrum_from: DressedSpectrum,
    spectrum_to: DressedSpectrum,
    g_plus: float,
    g_minus: float,
) -> np.ndarray:
    """Pump matrix elements between dressed states of adjacent manifolds.

    Entry [f, i] is <to_f| sum_i (sigma_mg + sigma_gm) |from_i> per unit pump
    amplitude.  The operator itself is coupling-independent; g_plus/g_minus
    are validated against the spectra they produced.
    """
    n_from, n_to = spectrum_from.n_photons, spectrum_to.n_photons
    if n_to != n_from + 1:
        raise ValueError(
            f"manifolds must be adjacent (n and n+1), got {n_from} and {n_to}"
        )
    for spec in (spectrum_from, spectrum_to):
        if spec.g_plus is not None and not math.isclose(spec.g_plus, g_plus):
            raise ValueError("g_plus does not match the spectrum's couplings")
        if spec.g_minus is not None and not math.isclose(spec.g_minus, g_minus):
            raise ValueError("g_minus does not match the spectrum's couplings")
    basis = BasisSpec(max(n_to, 1))
    kets_from = manifold_kets(n_from, basis)
    kets_to = manifold_kets(n_to, basis)
    pump = pump_transition_operator(basis).mat
    block = kets_to.conj().T @ pump @ kets_from
    return spectrum_to.eigenvectors.conj().T @ block @ spectrum_from.eigenvectors


def pair_numeric_to_labels(
    mh: ManifoldHamiltonian, states: tuple[LabeledState, ...]
) -> dict[str, tuple[float, np.ndarray]]:
    """Attach analytic labels to numeric eigenvectors by maximal overlap.

    Degenerate eigenvalues (the zero modes) make energy ordering ambiguous, so
    within each eigenvalue cluster the numeric vector with the largest overlap
    against the closed-form vector takes the label.
    """
    eigvals, eigvecs = np.linalg.eigh(mh.matrix)
    scale = max(1.0, float(np.max(np.abs(eigvals))))
    taken: set[int] = set()
    out: dict[str, tuple[float, np.ndarray]] = {}
    # assign best-overlapping labels first so degenerate clusters resolve cleanly
    order = []
    for state in states:
        cluster = [
            i for i in range(len(eigvals)) if abs(eigvals[i] - state.eigenvalue) < 1e-8 * scale
        ]
        overlaps = {i: abs(np.dot(eigvecs[:, i], state.vector)) for i in cluster}
        order.append((state, overlaps))
    order.sort(key=lambda item: -max(item[1].values(), default=0.0))
    for state, overlaps in order:
        free = {i: ov for i, ov in overlaps.items() if i not in taken}
        if not free:
            continue
        best = max(free, key=free.get)
        taken.add(best)
        out[state.label] = (float(eigvals[best]), eigvecs[:, best].copy())
    return out


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def energy_differences(case: str, g: float, omega_c: float) -> EnergyDifferences:
    """Ladder anharmonicities from the closed forms (case-independent values)."""
    _validate_case(case)
    lam1 = analytic_eigenvalues(1, g, omega_c)
    lam2 = analytic_eigenvalues(2, g, omega_c)
    lam3 = analytic_eigenvalues(3, g, omega_c)
    return EnergyDifferences(
        dE2ph_plus=lam2["3+"] - 2.0 * lam1["2+"],
        dE2ph_minus=lam2["3-"] - 2.0 * lam1["2-"],
        dE3ph_plus=lam3["3+"] - 1.5 * lam2["3+"],
        dE3ph_minus=lam3["3-"] - 1.5 * lam2["3-"],
        dE3ph_prime_plus=lam3["2+"] - 1.5 * lam2["2+"],
        dE3ph_prime_minus=lam3["2-"] - 1.5 * lam2["2-"],
    )


def peak_splitting(g: float, omega_c: float) -> float:
    """Separation of the two one-photon peaks in the excitation spectrum."""
    return 2.0 * math.sqrt(2.0 * g * g + omega_c * omega_c)
