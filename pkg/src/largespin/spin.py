"""Angular-momentum matrices and the coherent large-spin Hamiltonian.

Basis vectors are ordered by descending magnetic quantum number,
M = J, J-1, ..., -J, so the fully polarized state is the first basis vector.
Units: hbar = 1, energies in units of the tunnel amplitude T_c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class SpinSize:
    """Spin quantum number stored as the integer ``two_j = 2J``."""

    two_j: int

    def __post_init__(self):
        if int(self.two_j) != self.two_j:
            raise ValueError(f"two_j must be an integer, got {self.two_j!r}")
        if self.two_j < 1:
            raise ValueError(
                f"two_j must be >= 1 (J >= 1/2), got {self.two_j}; "
                "a one-dimensional spin has no dynamics"
            )
        object.__setattr__(self, "two_j", int(self.two_j))

    @classmethod
    def from_j(cls, j) -> "SpinSize":
        """Build from J given as a number or string such as ``"1/2"``."""
        two_j = 2 * Fraction(str(j).strip())
        if two_j.denominator != 1:
            raise ValueError(f"J must be a multiple of 1/2, got {j!r}")
        return cls(int(two_j))

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers in basis order (descending)."""
        return self.j - np.arange(self.dim)

    def __str__(self):
        return f"{self.two_j}/2" if self.two_j % 2 else str(self.two_j // 2)


@dataclass(frozen=True)
class SpinOperators:
    spin: SpinSize
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jplus: np.ndarray
    jminus: np.ndarray

    @property
    def dim(self) -> int:
        return self.spin.dim

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)


@dataclass(frozen=True)
class SystemParams:
    """Bias ``epsilon`` and tunnel amplitude ``tc`` of H = eps*Jz + 2*Tc*Jx."""

    spin: SpinSize
    epsilon: float
    tc: float = 1.0

    def __post_init__(self):
        if not self.tc > 0:
            raise ValueError(f"tc must be positive, got {self.tc}")
        if not np.isfinite(self.epsilon):
            raise ValueError(f"epsilon must be finite, got {self.epsilon}")

    @property
    def delta(self) -> float:
        """Level spacing sqrt(4 Tc^2 + eps^2) of the coherent spin."""
        return float(np.sqrt(4.0 * self.tc**2 + self.epsilon**2))


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def build_spin_operators(spin: SpinSize | int) -> SpinOperators:
    """Dense J_x, J_y, J_z, J_+, J_- for spin size ``spin``.

    An integer argument is read as ``two_j``.
    """
    if not isinstance(spin, SpinSize):
        spin = SpinSize(spin)
    j = spin.j
    m = spin.m_values()
    jz = np.diag(m).astype(complex)
    # <M+1| J+ |M> sits one row above the diagonal in descending order
    ladder = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    jplus = np.diag(ladder, k=1).astype(complex)
    jminus = jplus.conj().T.copy()
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    return SpinOperators(
        spin=spin,
        jx=_frozen(jx),
        jy=_frozen(jy),
        jz=_frozen(jz),
        jplus=_frozen(jplus),
        jminus=_frozen(jminus),
    )


def _check_dim(ops: SpinOperators, matrix: np.ndarray, what: str = "matrix"):
    if matrix.shape != (ops.dim, ops.dim):
        raise ValueError(
            f"{what} has shape {matrix.shape}, expected {(ops.dim, ops.dim)} "
            f"for J={ops.spin}"
        )


def hamiltonian(params: SystemParams, ops: SpinOperators) -> np.ndarray:
    """Coherent part eps*J_z + 2*T_c*J_x (bath terms excluded)."""
    if params.spin != ops.spin:
        raise ValueError(
            f"operators built for J={ops.spin} but params are for J={params.spin}"
        )
    return params.epsilon * ops.jz + 2.0 * params.tc * ops.jx


def rotation_y(ops: SpinOperators, angle: float = np.pi / 2) -> np.ndarray:
    """Unitary exp(i * angle * J_y), via the eigenbasis of the Hermitian J_y."""
    w, v = np.linalg.eigh(ops.jy)
    return (v * np.exp(1j * angle * w)) @ v.conj().T


def dicke_rotate(ops: SpinOperators, matrix: np.ndarray, angle: float = np.pi / 2) -> np.ndarray:
    """Conjugate ``matrix`` by U = exp(i*angle*J_y): returns U @ matrix @ U^dagger.

    With the default quarter turn this maps the zero-bias Hamiltonian
    2*T_c*J_x onto the Dicke form with the field along z.
    """
    matrix = np.asarray(matrix)
    _check_dim(ops, matrix)
    u = rotation_y(ops, angle)
    return u @ matrix @ u.conj().T
