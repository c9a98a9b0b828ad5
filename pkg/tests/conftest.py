import os

# pin BLAS to one thread per process: the factorizations here are small, and
# spinning BLAS pools starve the sweep worker processes.  The env vars cover
# freshly spawned workers; threadpoolctl covers this process when numpy was
# already imported by a pytest plugin.
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ.setdefault(_var, "1")

import numpy as np
import pytest

try:
    from threadpoolctl import threadpool_limits

    _BLAS_LIMIT = threadpool_limits(limits=1)
except ImportError:  # best effort; the env vars above still apply
    _BLAS_LIMIT = None

from blockadesim.model import SystemParams, build_collapse_set, build_hamiltonian
from blockadesim.steady import LiouvilleProblem, evolve_oracle, suggest_dt, vectorize


def relax_to_steady(
    problem: LiouvilleProblem,
    rho0: np.ndarray,
    dt: float,
    block: float = 5.0,
    tol: float = 1e-10,
    max_time: float = 400.0,
) -> np.ndarray:
    """Integrate in blocks until ||L rho||_inf falls below tol."""
    rho = np.array(rho0, dtype=complex)
    elapsed = 0.0
    while elapsed < max_time:
        rho = evolve_oracle(problem, rho, block, dt)
        elapsed += block
        if np.abs(problem.superop @ vectorize(rho)).max() < tol:
            return rho
    raise AssertionError(f"no steady state reached within t={max_time}")


def random_oracle_params(rng: np.random.Generator, phi_z: float) -> SystemParams:
    """Small, well-damped parameter draws for oracle comparisons."""
    return SystemParams(
        g=rng.uniform(0.5, 2.5),
        phi_z=phi_z,
        eta=rng.uniform(0.1, 0.4),
        omega_c=rng.uniform(0.0, 2.0),
        delta_p=rng.uniform(-2.0, 2.0),
        gamma_m=rng.uniform(0.5, 1.5),
        gamma_e=rng.uniform(0.2, 0.6),
        n_max=2,
    )


def oracle_dt(params: SystemParams) -> float:
    return suggest_dt(build_hamiltonian(params), build_collapse_set(params))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
