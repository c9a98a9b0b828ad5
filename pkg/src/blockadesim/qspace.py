"""Basis bookkeeping and operator algebra for two three-level atoms plus one cavity mode.

The composite Hilbert space is atom1 (x) atom2 (x) field, with the field index
running fastest.  Atom levels are labelled ``g``, ``m``, ``e`` (indices 0, 1, 2)
and the field is a Fock ladder truncated at ``n_max`` photons, so the total
dimension is ``9 * (n_max + 1)``.  All operators are dense complex matrices;
only the Liouville-space superoperators (see :mod:`blockadesim.steady`) are
sparse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LEVELS = ("g", "m", "e")
_LEVEL_INDEX = {name: i for i, name in enumerate(LEVELS)}


@dataclass(frozen=True)
class BasisSpec:
    """Product-basis layout: index = (level1 * 3 + level2) * (n_max + 1) + n."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def n_field(self) -> int:
        return self.n_max + 1

    @property
    def dim(self) -> int:
        return 9 * self.n_field

    def index(self, level1: str, level2: str, n: int) -> int:
        """Flat basis index of the ket |level1, level2, n>."""
        if level1 not in _LEVEL_INDEX or level2 not in _LEVEL_INDEX:
            raise ValueError(f"atom levels must be one of {LEVELS}")
        if not 0 <= n <= self.n_max:
            raise ValueError(f"photon number {n} outside [0, {self.n_max}]")
        return (_LEVEL_INDEX[level1] * 3 + _LEVEL_INDEX[level2]) * self.n_field + n

    def labels(self, index: int) -> tuple[str, str, int]:
        """Inverse of :meth:`index`."""
        if not 0 <= index < self.dim:
            raise ValueError(f"index {index} outside [0, {self.dim})")
        pair, n = divmod(index, self.n_field)
        l1, l2 = divmod(pair, 3)
        return LEVELS[l1], LEVELS[l2], n


@dataclass(frozen=True)
class QOperator:
    """Immutable dense operator tagged with its basis."""

    basis: BasisSpec
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        if mat.shape != (self.basis.dim, self.basis.dim):
            raise ValueError(
                f"matrix shape {mat.shape} does not match basis dimension {self.basis.dim}"
            )
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def dag(self) -> "QOperator":
        return QOperator(self.basis, self.mat.conj().T)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return np.max(np.abs(self.mat - self.mat.conj().T)) < tol

    def _check_same_basis(self, other: "QOperator") -> None:
        if self.basis != other.basis:
            raise ValueError(
                f"operator bases differ: n_max {self.basis.n_max} vs {other.basis.n_max}"
            )

    def __matmul__(self, other: "QOperator") -> "QOperator":
        self._check_same_basis(other)
        return QOperator(self.basis, self.mat @ other.mat)

    def __add__(self, other: "QOperator") -> "QOperator":
        self._check_same_basis(other)
        return QOperator(self.basis, self.mat + other.mat)

    def __sub__(self, other: "QOperator") -> "QOperator":
        self._check_same_basis(other)
        return QOperator(self.basis, self.mat - other.mat)

    def __mul__(self, scalar: complex) -> "QOperator":
        return QOperator(self.basis, scalar * self.mat)

    __rmul__ = __mul__

    def __neg__(self) -> "QOperator":
        return QOperator(self.basis, -self.mat)


def dagger(op: QOperator) -> QOperator:
    """Hermitian adjoint."""
    return op.dag()


def compose(a: QOperator, b: QOperator) -> QOperator:
    """Operator product a @ b."""
    return a @ b


def add_scaled(a: QOperator, c: complex, b: QOperator) -> QOperator:
    """a + c * b."""
    a._check_same_basis(b)
    return QOperator(a.basis, a.mat + c * b.mat)


def expectation(op: QOperator, rho: np.ndarray) -> complex:
    """trace(op @ rho) for a density matrix given as a plain array."""
    rho = np.asarray(rho)
    if rho.shape != op.mat.shape:
        raise ValueError(f"state shape {rho.shape} does not match operator {op.mat.shape}")
    # trace(A @ B) without forming the product
    return complex(np.sum(op.mat.T * rho))


def identity(basis: BasisSpec) -> QOperator:
    return QOperator(basis, np.eye(basis.dim))


def annihilation(basis: BasisSpec) -> QOperator:
    """Cavity annihilation operator: a|..., n> = sqrt(n)|..., n-1>, identity on atoms."""
    nf = basis.n_field
    a_field = np.diag(np.sqrt(np.arange(1, nf, dtype=float)), k=1)
    return QOperator(basis, np.kron(np.eye(9), a_field))


def creation(basis: BasisSpec) -> QOperator:
    return annihilation(basis).dag()


def number(basis: BasisSpec) -> QOperator:
    """Photon number operator a†a."""
    nf = basis.n_field
    return QOperator(basis, np.kron(np.eye(9), np.diag(np.arange(nf, dtype=float))))


def atomic_sigma(basis: BasisSpec, atom: int, j: str, k: str) -> QOperator:
    """|j><k| on the selected atom (1 or 2), identity elsewhere."""
    if atom not in (1, 2):
        raise ValueError(f"atom index must be 1 or 2, got {atom}")
    if j not in _LEVEL_INDEX or k not in _LEVEL_INDEX:
        raise ValueError(f"levels must be one of {LEVELS}")
    e_jk = np.zeros((3, 3))
    e_jk[_LEVEL_INDEX[j], _LEVEL_INDEX[k]] = 1.0
    i3 = np.eye(3)
    nf_eye = np.eye(basis.n_field)
    if atom == 1:
        mat = np.kron(np.kron(e_jk, i3), nf_eye)
    else:
        mat = np.kron(np.kron(i3, e_jk), nf_eye)
    return QOperator(basis, mat)


def fock_projector(basis: BasisSpec, n: int) -> QOperator:
    """Projector onto the field level |n><n| (identity on atoms)."""
    if not 0 <= n <= basis.n_max:
        raise ValueError(f"photon number {n} outside [0, {basis.n_max}]")
    proj = np.zeros((basis.n_field, basis.n_field))
    proj[n, n] = 1.0
    return QOperator(basis, np.kron(np.eye(9), proj))


def basis_ket(basis: BasisSpec, level1: str, level2: str, n: int) -> np.ndarray:
    """Unit vector of the product ket |level1, level2, n>."""
    vec = np.zeros(basis.dim, dtype=complex)
    vec[basis.index(level1, level2, n)] = 1.0
    return vec
