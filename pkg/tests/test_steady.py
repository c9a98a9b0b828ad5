import math
from dataclasses import replace

import numpy as np
import pytest
import scipy.sparse as sp

from blockadesim.model import SystemParams, build_collapse_set, build_hamiltonian
from blockadesim.qspace import BasisSpec, QOperator, basis_ket, number
from blockadesim.steady import (
    CollapseSet,
    NullSpaceDegenerate,
    Observables,
    SingularSolve,
    StepUnstable,
    SweepPointError,
    UndefinedCorrelation,
    build_liouvillian,
    evolve_oracle,
    field_populations,
    master_rhs,
    observables,
    require_correlations,
    solve_steady_state,
    steady_observables,
    steady_problem,
    sweep,
    trace_distance,
    unvectorize,
    vectorize,
)

from conftest import oracle_dt, random_oracle_params, relax_to_steady


def small_params(**overrides) -> SystemParams:
    base = dict(
        g=2.0, phi_z=0.0, eta=0.3, omega_c=1.0, delta_p=0.5,
        gamma_m=1.0, gamma_e=0.2, n_max=2,
    )
    base.update(overrides)
    return SystemParams(**base)


def test_vectorization_convention():
    rng = np.random.default_rng(3)
    rho = rng.normal(size=(4, 4))
    vec = vectorize(rho)
    # column stacking: vec index i + j * dim holds rho[i, j]
    assert vec[1 + 2 * 4] == rho[1, 2]
    assert np.array_equal(unvectorize(vec, 4), rho)


def test_zero_generator():
    basis = BasisSpec(n_max=1)
    zero_h = QOperator(basis, np.zeros((basis.dim, basis.dim)))
    problem = build_liouvillian(zero_h, CollapseSet(basis, ()))
    assert problem.superop.nnz == 0


def test_field_block_spectrum_hand_oracle():
    # hand-built one-channel field superoperator on {|0>, |1>}:
    # kappa (a . a+ - (a+a . + . a+a)/2) has vec-basis spectrum
    # {0, -kappa/2, -kappa/2, -kappa}
    kappa = 1.0
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    ident = np.eye(2)
    ada = a.T @ a
    lio4 = kappa * (
        np.kron(a.conj(), a)
        - 0.5 * np.kron(ident, ada)
        - 0.5 * np.kron(ada.T, ident)
    )
    expected = np.array([-kappa, -kappa / 2, -kappa / 2, 0.0])
    assert np.allclose(np.sort(np.linalg.eigvals(lio4).real), expected, atol=1e-12)

    # the composite-space generator carries the same spectrum, once per
    # two-atom configuration pair (9^2 copies)
    p = small_params(g=0.0, eta=0.0, omega_c=0.0, delta_p=0.0,
                     gamma_m=0.0, gamma_e=0.0, n_max=1)
    problem = build_liouvillian(build_hamiltonian(p), build_collapse_set(p))
    eigs = np.sort(np.linalg.eigvals(problem.superop.toarray()).real)
    assert np.allclose(eigs, np.repeat(expected, 81), atol=1e-10)


def test_liouvillian_matches_operator_rhs(rng):
    p = small_params()
    h = build_hamiltonian(p)
    cs = build_collapse_set(p)
    problem = build_liouvillian(h, cs)
    dim = p.basis.dim
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = raw @ raw.conj().T
    rho /= np.trace(rho)
    lhs = unvectorize(problem.superop @ vectorize(rho), dim)
    rhs = master_rhs(h, cs, rho)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_generator_is_trace_free(rng):
    p = small_params()
    problem = steady_problem(p)
    dim = p.basis.dim
    for _ in range(5):
        raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        herm = raw + raw.conj().T
        image = unvectorize(problem.superop @ vectorize(herm), dim)
        assert abs(np.trace(image)) < 1e-10 * np.linalg.norm(herm)


def test_no_pump_steady_state_is_ground():
    p = small_params(eta=0.0)
    problem = steady_problem(p)
    rho = solve_steady_state(problem, check_unique=True)
    expected = np.zeros_like(rho)
    idx = p.basis.index("g", "g", 0)
    expected[idx, idx] = 1.0
    assert np.max(np.abs(rho - expected)) < 1e-12


def test_steady_state_properties_and_residual(rng):
    for phi_z in (0.0, math.pi):
        p = random_oracle_params(rng, phi_z)
        problem = steady_problem(p)
        rho = solve_steady_state(problem)
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-10
        assert abs(np.trace(rho).real - 1.0) < 1e-10
        assert np.linalg.eigvalsh(rho).min() > -1e-9
        assert np.abs(problem.superop @ vectorize(rho)).max() < 1e-9


def test_steady_state_agrees_with_rk4_oracle(rng):
    for phi_z in (0.0, math.pi):
        for _ in range(5):
            p = random_oracle_params(rng, phi_z)
            problem = steady_problem(p)
            rho_direct = solve_steady_state(problem)
            ket = basis_ket(p.basis, "g", "g", 0)
            rho_t = relax_to_steady(problem, np.outer(ket, ket.conj()), oracle_dt(p))
            assert trace_distance(rho_direct, rho_t) <= 1e-6


def test_degenerate_null_space_detected():
    # with the control off and no e decay, the doubly excited atomic sector is
    # dark: a second steady state exists
    p = small_params(omega_c=0.0, gamma_e=0.0, n_max=1)
    problem = steady_problem(p)
    with pytest.raises((NullSpaceDegenerate, SingularSolve)):
        solve_steady_state(problem, check_unique=True)


def test_sweep_propagates_point_errors():
    p = small_params(omega_c=0.0, gamma_e=0.0, n_max=1)
    with pytest.raises(SweepPointError) as excinfo:
        sweep(p, [0.25])
    assert excinfo.value.delta_p == 0.25
    assert "0.25" in str(excinfo.value)


def test_evolve_zero_generator_is_identity_map(rng):
    basis = BasisSpec(n_max=1)
    zero_h = QOperator(basis, np.zeros((basis.dim, basis.dim)))
    problem = build_liouvillian(zero_h, CollapseSet(basis, ()))
    raw = rng.normal(size=(basis.dim, basis.dim))
    rho0 = raw @ raw.T
    rho0 = rho0 / np.trace(rho0)
    rho = evolve_oracle(problem, rho0, 2.0, 0.01)
    assert np.max(np.abs(rho - rho0)) < 1e-12


def test_pure_cavity_decay_law():
    # rate-kappa cavity channel: <n>(t) = exp(-kappa t) from |1><1|
    p = small_params(g=0.0, eta=0.0, omega_c=0.0, delta_p=0.0,
                     gamma_m=0.0, gamma_e=0.0, n_max=1)
    problem = steady_problem(p)
    ket = basis_ket(p.basis, "g", "g", 1)
    rho = evolve_oracle(problem, np.outer(ket, ket.conj()), 1.0, 1e-3)
    mean_n = observables(rho, p.basis).mean_n
    assert mean_n == pytest.approx(math.exp(-1.0), rel=1e-6)


def test_unstable_step_raises():
    p = small_params(g=20.0, delta_p=30.0)
    problem = steady_problem(p)
    ket = basis_ket(p.basis, "g", "g", 0)
    with pytest.raises(StepUnstable):
        evolve_oracle(problem, np.outer(ket, ket.conj()), 10.0, 0.5)


def fock_state_density(basis: BasisSpec, n: int) -> np.ndarray:
    ket = basis_ket(basis, "g", "g", n)
    return np.outer(ket, ket.conj())


def test_observables_fock_examples():
    basis = BasisSpec(n_max=3)
    obs2 = observables(fock_state_density(basis, 2), basis)
    assert obs2.mean_n == pytest.approx(2.0)
    assert obs2.g2 == pytest.approx(0.5)
    obs3 = observables(fock_state_density(basis, 3), basis)
    assert obs3.g3 == pytest.approx(6.0 / 27.0)
    assert obs3.purity == pytest.approx(1.0)


def test_observables_coherent_state():
    basis = BasisSpec(n_max=10)
    alpha = 0.3
    ns = np.arange(basis.n_field)
    amps = np.exp(-abs(alpha) ** 2 / 2) * alpha**ns / np.sqrt(
        [math.factorial(int(n)) for n in ns]
    )
    ket = np.zeros(basis.dim, dtype=complex)
    for n in ns:
        ket[basis.index("g", "g", int(n))] = amps[n]
    rho = np.outer(ket, ket.conj())
    rho /= np.trace(rho)
    obs = observables(rho, basis)
    assert obs.g2 == pytest.approx(1.0, abs=1e-6)
    assert obs.g3 == pytest.approx(1.0, abs=1e-6)


def test_observables_undefined_below_floor():
    basis = BasisSpec(n_max=2)
    obs = observables(fock_state_density(basis, 0), basis)
    assert not obs.correlations_defined
    assert math.isnan(obs.g2) and math.isnan(obs.g3)
    with pytest.raises(UndefinedCorrelation):
        require_correlations(obs)
    defined = observables(fock_state_density(basis, 1), basis)
    assert require_correlations(defined) is defined


def test_observables_requires_unit_trace():
    basis = BasisSpec(n_max=1)
    with pytest.raises(ValueError):
        observables(2.0 * fock_state_density(basis, 0), basis)


def test_field_populations_sum_to_one():
    p = small_params()
    rho = solve_steady_state(steady_problem(p))
    pops = field_populations(rho, p.basis)
    assert pops.sum() == pytest.approx(1.0, abs=1e-10)
    assert np.all(pops >= -1e-12)


def test_sweep_single_point_matches_single_solve():
    p = small_params()
    [(dp, obs)] = sweep(p, [0.75])
    direct = steady_observables(replace(p, delta_p=0.75))
    assert dp == 0.75
    assert obs == direct


def test_sweep_order_and_parallel_determinism():
    p = small_params()
    grid = np.linspace(-2.0, 2.0, 6)
    serial = sweep(p, grid, workers=1)
    parallel = sweep(p, grid, workers=2)
    assert [dp for dp, _ in serial] == list(grid)
    for (dp_a, obs_a), (dp_b, obs_b) in zip(serial, parallel):
        assert dp_a == dp_b
        assert obs_a == obs_b  # bitwise-identical floats


def test_sweep_rejects_empty_grid():
    with pytest.raises(ValueError):
        sweep(small_params(), [])


def test_spectrum_even_in_detuning():
    # with delta_c = 0 the excitation spectrum is even in delta_p
    p = small_params(g=20.0, eta=0.2, omega_c=0.0, gamma_e=0.01, n_max=6)
    for dp in (10.0, 24.495, 28.284):
        plus = steady_observables(replace(p, delta_p=dp))
        minus = steady_observables(replace(p, delta_p=-dp))
        assert plus.mean_n == pytest.approx(minus.mean_n, rel=5e-3)
        assert plus.g2 == pytest.approx(minus.g2, rel=5e-3)
