"""Liouvillian construction, steady-state solver, RK4 oracle, and photon statistics.

Vectorization uses the column-stacking convention: ``vec(rho)`` stacks the
columns of ``rho`` (Fortran order), so ``vec(A rho B) = (B.T kron A) vec(rho)``
and the diagonal of ``rho`` sits at vec indices ``k * (dim + 1)``.

The steady state solves ``L vec(rho) = 0`` with one row of ``L`` replaced by
the trace constraint; the result is verified a posteriori (residual,
Hermiticity, trace, positivity).  An independent fixed-step RK4 integrator is
provided as an oracle for the linear solve.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.sparse.csgraph import reverse_cuthill_mckee

from .model import (
    CollapseSet,
    SystemParams,
    build_collapse_set,
    build_hamiltonian,
    detuning_operator,
)
from .qspace import BasisSpec, QOperator

logger = logging.getLogger(__name__)

# below this superoperator dimension a dense solve is faster than sparse LU
DENSE_SOLVE_MAX_DIM = 2500

DEFAULT_MEAN_N_FLOOR = 1e-8
TRUNCATION_WARN_LEVEL = 1e-6


class SteadyStateError(RuntimeError):
    """Base class for steady-state solver failures."""


class NullSpaceDegenerate(SteadyStateError):
    """The Liouvillian admits more than one steady state."""


class SingularSolve(SteadyStateError):
    """The trace-constrained linear system could not be factorized."""


class StepUnstable(RuntimeError):
    """RK4 integration lost trace normalization beyond tolerance."""


class UndefinedCorrelation(ValueError):
    """g2/g3 requested for a state with mean photon number below the floor."""


@dataclass
class LiouvilleProblem:
    """Sparse master-equation generator acting on vectorized density matrices.

    ``superop`` is the raw generator (no trace row inserted); ``trace_row`` is
    the row that the solver replaces with the trace constraint.
    """

    superop: sp.csr_matrix
    basis: BasisSpec
    trace_row: int = 0

    @property
    def dim(self) -> int:
        return self.basis.dim


@dataclass(frozen=True)
class Observables:
    """Photon statistics of one steady state.

    ``g2``/``g3`` are NaN when the mean photon number is below the configured
    floor; ``correlations_defined`` records that condition.
    """

    mean_n: float
    g2: float
    g3: float
    top_fock_pop: float
    purity: float
    correlations_defined: bool


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stacked vector of a matrix."""
    return np.asarray(rho).reshape(-1, order="F")


def unvectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    return np.asarray(vec).reshape((dim, dim), order="F")


def master_rhs(hamiltonian: QOperator, collapse: CollapseSet, rho: np.ndarray) -> np.ndarray:
    """Operator-level right-hand side -i[H, rho] + sum_r r D[C] rho.

    Dense reference implementation used to cross-check the vectorized
    superoperator.
    """
    h = hamiltonian.mat
    out = -1j * (h @ rho - rho @ h)
    for op, rate in collapse.channels:
        c = op.mat
        cdc = c.conj().T @ c
        out = out + rate * (c @ rho @ c.conj().T - 0.5 * (cdc @ rho + rho @ cdc))
    return out


def build_liouvillian(hamiltonian: QOperator, collapse: CollapseSet) -> LiouvilleProblem:
    """Assemble the sparse superoperator for H and a set of decay channels."""
    if hamiltonian.basis != collapse.basis:
        raise ValueError("Hamiltonian and collapse set live on different bases")
    dim = hamiltonian.dim
    ident = sp.identity(dim, dtype=complex, format="csr")
    h_s = sp.csr_matrix(hamiltonian.mat)
    lio = -1j * (sp.kron(ident, h_s) - sp.kron(h_s.T, ident))
    for op, rate in collapse.channels:
        c = sp.csr_matrix(op.mat)
        cdc = (c.conj().T @ c).tocsr()
        lio = lio + rate * (
            sp.kron(c.conj(), c) - 0.5 * sp.kron(ident, cdc) - 0.5 * sp.kron(cdc.T, ident)
        )
    return LiouvilleProblem(lio.tocsr(), hamiltonian.basis)


def _trace_indices(dim: int) -> np.ndarray:
    return np.arange(dim) * (dim + 1)


def _constrained_system(problem: LiouvilleProblem, trace_row: int):
    """Replace one row of the generator with the trace constraint."""
    d2 = problem.superop.shape[0]
    mask = np.ones(d2)
    mask[trace_row] = 0.0
    keep = sp.diags(mask)
    cols = _trace_indices(problem.dim)
    trace = sp.csr_matrix(
        (np.ones(problem.dim), (np.full(problem.dim, trace_row), cols)), shape=(d2, d2)
    )
    lhs = (keep @ problem.superop + trace).tocsc()
    rhs = np.zeros(d2, dtype=complex)
    rhs[trace_row] = 1.0
    return lhs, rhs


def _solve_linear(lhs: sp.csc_matrix, rhs: np.ndarray) -> np.ndarray:
    if lhs.shape[0] < DENSE_SOLVE_MAX_DIM:
        try:
            return np.linalg.solve(lhs.toarray(), rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularSolve(f"dense factorization failed: {exc}") from exc
    # a bandwidth-reducing pre-permutation keeps the LU fill manageable when
    # the control drive links all three atomic levels
    pattern = (abs(lhs) + abs(lhs).T).tocsr()
    perm = reverse_cuthill_mckee(pattern, symmetric_mode=True)
    permuted = lhs[perm][:, perm].tocsc()
    try:
        factor = spla.splu(permuted, permc_spec="NATURAL")
    except RuntimeError as exc:
        raise SingularSolve(f"sparse factorization failed: {exc}") from exc
    solution = np.empty_like(rhs)
    solution[perm] = factor.solve(rhs[perm])
    return solution


def _null_space_dimension(problem: LiouvilleProblem, tol_scale: float = 1e-10) -> int:
    """Count near-zero singular values of the generator (small systems only)."""
    dense = problem.superop.toarray()
    svals = np.linalg.svd(dense, compute_uv=False)
    cutoff = tol_scale * max(svals[0], 1.0)
    return int(np.count_nonzero(svals < cutoff))


def solve_steady_state(
    problem: LiouvilleProblem,
    *,
    check_unique: bool = False,
    residual_rtol: float = 1e-10,
    neg_eig_tol: float = 1e-9,
) -> np.ndarray:
    """Solve L rho = 0 with unit trace; returns a Hermitian positive matrix.

    Raises :class:`SingularSolve` when factorization fails,
    :class:`NullSpaceDegenerate` when the residual is large or (with
    ``check_unique``) a second steady state is detected, and
    :class:`SteadyStateError` when the solution has negativity beyond
    ``neg_eig_tol``.
    """
    dim = problem.dim
    lhs, rhs = _constrained_system(problem, problem.trace_row)
    try:
        vec = _solve_linear(lhs, rhs)
    except SingularSolve:
        if problem.superop.shape[0] <= 1500 and _null_space_dimension(problem) >= 2:
            raise NullSpaceDegenerate(
                "generator has a degenerate null space; steady state is not unique"
            ) from None
        raise

    residual_vec = problem.superop @ vec
    residual = math.sqrt(float(np.sum(residual_vec.real**2 + residual_vec.imag**2)))
    data = problem.superop.data
    scale = math.sqrt(float(np.sum(data.real**2 + data.imag**2)))  # Frobenius norm
    if residual > residual_rtol * scale:
        raise NullSpaceDegenerate(
            f"steady-state residual {residual:.3e} exceeds {residual_rtol:.1e} * ||L|| = "
            f"{residual_rtol * scale:.3e}; null space may be degenerate"
        )

    rho = unvectorize(vec, dim)
    rho = 0.5 * (rho + rho.conj().T)

    if check_unique:
        # a second row replacement picks a different member of any degenerate
        # solution family; agreement certifies uniqueness
        alt_row = (dim // 2) * (dim + 1)
        if alt_row == problem.trace_row:
            alt_row = (dim - 1) * (dim + 1)
        lhs_alt, rhs_alt = _constrained_system(problem, alt_row)
        vec_alt = _solve_linear(lhs_alt, rhs_alt)
        rho_alt = unvectorize(vec_alt, dim)
        rho_alt = 0.5 * (rho_alt + rho_alt.conj().T)
        if trace_distance(rho, rho_alt) > 1e-8:
            raise NullSpaceDegenerate(
                "two trace-row replacements give different steady states"
            )

    eigvals, eigvecs = np.linalg.eigh(rho)
    if eigvals.min() < -neg_eig_tol:
        raise SteadyStateError(
            f"steady state has negative eigenvalue {eigvals.min():.3e} beyond "
            f"tolerance {neg_eig_tol:.1e}"
        )
    if eigvals.min() < 0.0:
        clipped = np.clip(eigvals, 0.0, None)
        rho = (eigvecs * clipped) @ eigvecs.conj().T
        rho = rho / np.trace(rho).real
    return rho


def trace_distance(rho_a: np.ndarray, rho_b: np.ndarray) -> float:
    """(1/2) * trace norm of the difference."""
    diff = rho_a - rho_b
    diff = 0.5 * (diff + diff.conj().T)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def suggest_dt(hamiltonian: QOperator, collapse: CollapseSet) -> float:
    """Conservative RK4 step: 0.01 / max(|H| entries, channel rates)."""
    scale = float(np.max(np.abs(hamiltonian.mat)))
    for _, rate in collapse.channels:
        scale = max(scale, rate)
    return 0.01 / max(scale, 1.0)


def evolve_oracle(
    problem: LiouvilleProblem,
    rho0: np.ndarray,
    t_final: float,
    dt: float,
    *,
    trace_tol: float = 1e-6,
) -> np.ndarray:
    """Integrate d rho / dt = L rho with fixed-step RK4 from rho0 to t_final.

    Hermiticity is enforced by symmetrization after every step (the largest
    correction is logged); a trace drift beyond ``trace_tol`` raises
    :class:`StepUnstable`.
    """
    dim = problem.dim
    lio = problem.superop
    if t_final < 0 or dt <= 0:
        raise ValueError("t_final must be >= 0 and dt > 0")
    if t_final == 0:
        return np.array(rho0, dtype=complex)

    n_steps = max(1, int(round(t_final / dt)))
    step = t_final / n_steps
    trace0 = np.trace(rho0).real
    vec = vectorize(np.asarray(rho0, dtype=complex))
    max_herm_dev = 0.0
    for _ in range(n_steps):
        k1 = lio @ vec
        k2 = lio @ (vec + 0.5 * step * k1)
        k3 = lio @ (vec + 0.5 * step * k2)
        k4 = lio @ (vec + step * k3)
        vec = vec + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = unvectorize(vec, dim)
        herm_dev = float(np.max(np.abs(rho - rho.conj().T)))
        max_herm_dev = max(max_herm_dev, herm_dev)
        rho = 0.5 * (rho + rho.conj().T)
        drift = abs(np.trace(rho).real - trace0)
        # `not (<=)` also catches NaN from a blown-up step
        if not drift <= trace_tol:
            raise StepUnstable(
                f"trace drifted by {drift:.3e} (> {trace_tol:.1e}); reduce dt"
            )
        vec = vectorize(rho)
    logger.debug("evolve_oracle: max Hermiticity deviation %.3e", max_herm_dev)
    return unvectorize(vec, dim)


def field_populations(rho: np.ndarray, basis: BasisSpec) -> np.ndarray:
    """Photon-number distribution obtained by tracing out both atoms."""
    diag = np.real(np.diag(rho))
    return diag.reshape(9, basis.n_field).sum(axis=0)


def observables(
    rho: np.ndarray, basis: BasisSpec, floor: float = DEFAULT_MEAN_N_FLOOR
) -> Observables:
    """Equal-time photon statistics from a unit-trace density matrix."""
    trace = np.trace(rho).real
    if abs(trace - 1.0) > 1e-8:
        raise ValueError(f"density matrix trace {trace} is not 1")
    pops = field_populations(rho, basis)
    ns = np.arange(basis.n_field, dtype=float)
    mean_n = float(np.dot(ns, pops))
    defined = mean_n >= floor
    if defined:
        m2 = float(np.dot(ns * (ns - 1.0), pops))
        m3 = float(np.dot(ns * (ns - 1.0) * (ns - 2.0), pops))
        g2 = m2 / mean_n**2
        g3 = m3 / mean_n**3
    else:
        g2 = math.nan
        g3 = math.nan
    purity = float(np.sum(np.abs(rho) ** 2))
    return Observables(
        mean_n=mean_n,
        g2=g2,
        g3=g3,
        top_fock_pop=float(pops[-1]),
        purity=purity,
        correlations_defined=defined,
    )


def require_correlations(obs: Observables) -> Observables:
    """Raise :class:`UndefinedCorrelation` unless g2/g3 are defined."""
    if not obs.correlations_defined:
        raise UndefinedCorrelation(
            f"mean photon number {obs.mean_n:.3e} below the correlation floor"
        )
    return obs


@lru_cache(maxsize=16)
def _sweep_pieces(base_params: SystemParams):
    """Detuning-independent pieces: L(delta_p) = L0 + delta_p * LN."""
    basis = base_params.basis
    h0 = build_hamiltonian(base_params)
    collapse = build_collapse_set(base_params)
    lio0 = build_liouvillian(h0, collapse).superop
    n_det = sp.csr_matrix(detuning_operator(basis).mat)
    ident = sp.identity(basis.dim, dtype=complex, format="csr")
    lio_n = (-1j * (sp.kron(ident, n_det) - sp.kron(n_det.T, ident))).tocsr()
    return basis, lio0, lio_n


def steady_problem(params: SystemParams) -> LiouvilleProblem:
    """LiouvilleProblem for one parameter point, reusing cached sweep pieces."""
    base = replace(params, delta_p=0.0)
    basis, lio0, lio_n = _sweep_pieces(base)
    lio = lio0 if params.delta_p == 0.0 else (lio0 + params.delta_p * lio_n).tocsr()
    return LiouvilleProblem(lio, basis)


def steady_observables(
    params: SystemParams,
    floor: float = DEFAULT_MEAN_N_FLOOR,
    *,
    check_unique: bool = False,
) -> Observables:
    """Solve one parameter point and reduce to photon statistics."""
    problem = steady_problem(params)
    rho = solve_steady_state(problem, check_unique=check_unique)
    return observables(rho, problem.basis, floor)


class SweepPointError(RuntimeError):
    """A steady-state solve failed at one sweep point."""

    def __init__(self, delta_p: float, message: str):
        super().__init__(f"delta_p={delta_p:g}: {message}")
        self.delta_p = delta_p
        self.message = message

    def __reduce__(self):
        return (SweepPointError, (self.delta_p, self.message))


def _sweep_point(args: tuple[SystemParams, float]) -> Observables:
    params, delta_p = args
    try:
        return steady_observables(replace(params, delta_p=delta_p))
    except Exception as exc:  # attach the offending detuning
        raise SweepPointError(delta_p, str(exc)) from exc


def default_workers() -> int:
    """Worker count from the SIM_WORKERS environment variable (default 1)."""
    try:
        return max(1, int(os.environ.get("SIM_WORKERS", "1")))
    except ValueError:
        return 1


def sweep(
    params: SystemParams,
    delta_p_grid,
    workers: int = 1,
) -> list[tuple[float, Observables]]:
    """Steady-state observables over a detuning grid, order preserving.

    Points are independent; with ``workers > 1`` they are solved in a process
    pool.  Results are identical regardless of the worker count.
    """
    grid = [float(x) for x in delta_p_grid]
    if not grid:
        raise ValueError("delta_p grid must not be empty")
    tasks = [(params, dp) for dp in grid]
    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, tasks, chunksize=8))
    else:
        results = [_sweep_point(task) for task in tasks]
    return list(zip(grid, results))
