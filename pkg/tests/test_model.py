import math

import numpy as np
import pytest

from blockadesim.dressed import MANIFOLD_SLOTS, manifold_hamiltonian, manifold_kets
from blockadesim.model import (
    CollapseSet,
    SystemParams,
    build_collapse_set,
    build_hamiltonian,
    couplings,
    total_excitation,
)
from blockadesim.qspace import BasisSpec, QOperator, basis_ket
from blockadesim.steady import master_rhs


def params(**overrides) -> SystemParams:
    base = dict(
        g=20.0, phi_z=0.0, eta=0.2, omega_c=0.0, delta_p=0.0,
        gamma_m=1.0, gamma_e=0.01, n_max=2,
    )
    base.update(overrides)
    return SystemParams(**base)


def test_couplings_special_cases():
    g1, g2, gp, gm = couplings(params(phi_z=0.0))
    assert (g1, g2, gp, gm) == (20.0, 20.0, 40.0, 0.0)
    g1, g2, gp, gm = couplings(params(phi_z=math.pi))
    assert g1 == 20.0
    assert g2 == pytest.approx(-20.0)
    assert gp == pytest.approx(0.0, abs=1e-12)
    assert gm == pytest.approx(40.0)
    _, g2, gp, gm = couplings(params(phi_z=math.pi / 2))
    assert g2 == pytest.approx(0.0, abs=1e-12)
    assert gp == pytest.approx(20.0)
    assert gm == pytest.approx(20.0)


def test_param_validation():
    with pytest.raises(ValueError):
        params(g=-1.0)
    with pytest.raises(ValueError):
        params(kappa=2.0)
    with pytest.raises(ValueError):
        params(n_max=0)


def test_zero_parameters_zero_hamiltonian():
    p = params(g=0.0, eta=0.0, omega_c=0.0, delta_p=0.0, n_max=1)
    h = build_hamiltonian(p)
    assert np.max(np.abs(h.mat)) == 0.0


def test_vacuum_rabi_block():
    # eta = omega_c = delta = 0, phi_z = 0: the {|GG,1>, |MG+,0>} block is
    # off-diagonal with amplitude g_plus / sqrt(2) = sqrt(2) g
    p = params(eta=0.0)
    h = build_hamiltonian(p)
    basis = p.basis
    gg1 = basis_ket(basis, "g", "g", 1)
    mg_plus = (basis_ket(basis, "m", "g", 0) + basis_ket(basis, "g", "m", 0)) / np.sqrt(2)
    block = np.array(
        [
            [gg1.conj() @ h.mat @ gg1, gg1.conj() @ h.mat @ mg_plus],
            [mg_plus.conj() @ h.mat @ gg1, mg_plus.conj() @ h.mat @ mg_plus],
        ]
    )
    expected = np.sqrt(2.0) * 20.0 * np.array([[0, 1], [1, 0]])
    assert np.max(np.abs(block - expected)) < 1e-12


@pytest.mark.parametrize("n_manifold", [1, 2, 3])
def test_hamiltonian_projection_matches_manifold_matrices(n_manifold, rng):
    # with drive and detuning removed, the full Hamiltonian restricted to a
    # fixed-excitation manifold must reproduce the dedicated manifold matrix
    for _ in range(5):
        g = rng.uniform(0.5, 30.0)
        phi_z = rng.uniform(0.0, 2 * math.pi)
        omega_c = rng.uniform(0.0, 30.0)
        p = params(g=g, phi_z=phi_z, omega_c=omega_c, eta=0.0, delta_p=0.0, n_max=3)
        h = build_hamiltonian(p)
        kets = manifold_kets(n_manifold, p.basis)
        projected = kets.conj().T @ h.mat @ kets
        _, _, gp, gm = couplings(p)
        expected = manifold_hamiltonian(n_manifold, gp, gm, omega_c).matrix
        assert projected.shape[0] == len(MANIFOLD_SLOTS[n_manifold])
        assert np.max(np.abs(projected - expected)) < 1e-12


def test_hamiltonian_hermitian_random_draws(rng):
    for _ in range(100):
        p = params(
            g=rng.uniform(0.0, 40.0),
            phi_z=rng.uniform(0.0, 2 * math.pi),
            eta=rng.uniform(0.0, 3.0),
            omega_c=rng.uniform(0.0, 40.0),
            delta_p=rng.uniform(-50.0, 50.0),
            delta_c=rng.uniform(-5.0, 5.0),
            n_max=1,
        )
        h = build_hamiltonian(p)
        assert np.max(np.abs(h.mat - h.mat.conj().T)) < 1e-12


def test_control_off_decouples_upper_level():
    # with omega_c = 0 no matrix element changes the e occupation of either
    # atom: H is block diagonal in the e sectors, and the e-free block is the
    # two-atom Tavis-Cummings model on g/m
    p = params(omega_c=0.0, eta=0.5, delta_p=3.0, n_max=2)
    h = build_hamiltonian(p)
    basis = p.basis

    def e_count(idx):
        l1, l2, _ = basis.labels(idx)
        return (l1 == "e") + (l2 == "e")

    for row in range(basis.dim):
        for col in range(basis.dim):
            if e_count(row) != e_count(col):
                assert h.mat[row, col] == 0.0
    # the e-free block carries every drive/coupling element of H
    no_e = [idx for idx in range(basis.dim) if e_count(idx) == 0]
    off_diag = h.mat.copy()
    np.fill_diagonal(off_diag, 0.0)
    assert np.max(np.abs(off_diag)) == np.max(np.abs(off_diag[np.ix_(no_e, no_e)]))


def test_collapse_set_contents():
    p = params(gamma_m=0.0, gamma_e=0.0)
    cs = build_collapse_set(p)
    assert len(cs.channels) == 1
    assert cs.channels[0][1] == 1.0
    cs_full = build_collapse_set(params())
    assert len(cs_full.channels) == 5
    rates = [rate for _, rate in cs_full.channels]
    assert rates == [1.0, 1.0, 1.0, 0.01, 0.01]
    with pytest.raises(ValueError):
        CollapseSet(p.basis, ((cs.channels[0][0], -1.0),))


def test_dissipator_traceless(rng):
    p = params(n_max=2)
    basis = p.basis
    zero_h = QOperator(basis, np.zeros((basis.dim, basis.dim)))
    cs = build_collapse_set(p)
    mixed = np.eye(basis.dim) / basis.dim
    assert abs(np.trace(master_rhs(zero_h, cs, mixed))) < 1e-12
    raw = rng.normal(size=(basis.dim, basis.dim)) + 1j * rng.normal(size=(basis.dim, basis.dim))
    rho = raw @ raw.conj().T
    rho /= np.trace(rho)
    assert abs(np.trace(master_rhs(build_hamiltonian(p), cs, rho))) < 1e-12


def test_cavity_channel_action_on_one_photon():
    # rate-kappa channel: d rho/dt = kappa (|0><0| - |1><1|) on the field
    p = params(g=0.0, eta=0.0, gamma_m=0.0, gamma_e=0.0, n_max=1)
    basis = p.basis
    zero_h = QOperator(basis, np.zeros((basis.dim, basis.dim)))
    cs = build_collapse_set(p)
    ket1 = basis_ket(basis, "g", "g", 1)
    ket0 = basis_ket(basis, "g", "g", 0)
    drho = master_rhs(zero_h, cs, np.outer(ket1, ket1.conj()))
    expected = np.outer(ket0, ket0.conj()) - np.outer(ket1, ket1.conj())
    assert np.max(np.abs(drho - expected)) < 1e-14


def test_hamiltonian_conserves_weighted_excitation_without_drives():
    p = params(eta=0.0, omega_c=0.0, g=7.0, delta_p=2.0, n_max=2)
    h = build_hamiltonian(p)
    n_exc = total_excitation(p.basis)
    comm = h.mat @ n_exc.mat - n_exc.mat @ h.mat
    assert np.max(np.abs(comm)) < 1e-12
    # either drive breaks the conservation
    p = params(eta=0.5, omega_c=0.0, g=7.0, n_max=2)
    h = build_hamiltonian(p)
    comm = h.mat @ n_exc.mat - n_exc.mat @ h.mat
    assert np.max(np.abs(comm)) > 0.1
