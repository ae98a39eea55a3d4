"""Born-Markov master equation for a large spin and its spin-1/2 Bloch form.

Both equations have constant coefficients once the bath rates are fixed,
so they are linear (affine for the Bloch vector) in the state. Trajectories
are computed with the classical fixed-step Runge-Kutta scheme; for linear
generators the RK4 step is a fixed matrix and is applied as such.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import IntegrationError
from .rates import BathSpec, RateSet, compute_rates
from .spin import SpinOperators, SpinSize, SystemParams, build_spin_operators, dicke_rotate, hamiltonian

MAX_SAMPLES = 5000
POSITIVITY_TOL = 1e-6
DEFAULT_DT = 0.002


class PositivityWarning(UserWarning):
    """The density matrix acquired a negative eigenvalue below tolerance."""


class InstabilityWarning(UserWarning):
    """The master-equation generator has a growing mode."""


@dataclass
class Trajectory:
    """Sampled expectation values of J_x, J_y, J_z and state-health diagnostics."""

    times: np.ndarray
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    trace_err: np.ndarray
    herm_err: np.ndarray
    min_eig: np.ndarray
    spin: float = 0.5
    meta: dict = field(default_factory=dict)

    COLUMNS = ("t", "jx", "jy", "jz", "trace_err", "herm_err", "min_eig")

    def __post_init__(self):
        n = len(self.times)
        for name in self.COLUMNS[1:]:
            if len(getattr(self, name)) != n:
                raise ValueError(f"series {name!r} has length {len(getattr(self, name))}, expected {n}")
        if n > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    def columns(self) -> dict:
        return {"t": self.times, **{k: getattr(self, k) for k in self.COLUMNS[1:]}}

    @property
    def normalized_jz(self) -> np.ndarray:
        return self.jz / self.spin


# -- states -----------------------------------------------------------------


def validate_density_matrix(rho: np.ndarray, tol: float = 1e-10, psd_tol: float = 1e-12) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho).real:.12g}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -psd_tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def initial_state_spin_up(spin: SpinSize) -> np.ndarray:
    """Pure state |J, M=J>."""
    rho = np.zeros((spin.dim, spin.dim), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def initial_state_x_up(spin: SpinSize, ops: SpinOperators | None = None) -> np.ndarray:
    """Pure J_x eigenstate with eigenvalue J, obtained by rotating |J, J> about y."""
    ops = ops or build_spin_operators(spin)
    rho = dicke_rotate(ops, initial_state_spin_up(spin), angle=-np.pi / 2)
    return 0.5 * (rho + rho.conj().T)


def expectations(rhos: np.ndarray, ops: SpinOperators):
    """<J_x>, <J_y>, <J_z> for a single state or a stack of states."""
    return tuple(np.einsum("...ij,ji->...", rhos, op).real for op in (ops.jx, ops.jy, ops.jz))


# -- master equation --------------------------------------------------------


def _check_rates(params: SystemParams, rates: RateSet):
    if abs(rates.delta - params.delta) > 1e-12 * params.delta:
        raise ValueError(
            f"rates were evaluated at delta={rates.delta!r} but params have delta={params.delta!r}"
        )


def dissipation_operator(params: SystemParams, ops: SpinOperators, rates: RateSet) -> np.ndarray:
    """System operator X such that the bath terms read -[J_z, X rho - rho X^dagger].

    X = a J_z + b J_x - c J_y with
    a = (eps^2 Gamma + 4 Tc^2 Gamma_c) / Delta^2,
    b = 2 Tc eps (Gamma - Gamma_c) / Delta^2,
    c = 2 Tc Gamma_s / Delta.
    """
    _check_rates(params, rates)
    eps, tc, delta = params.epsilon, params.tc, params.delta
    a = (eps**2 * rates.gamma + 4 * tc**2 * rates.gamma_c) / delta**2
    b = 2 * tc * eps * (rates.gamma - rates.gamma_c) / delta**2
    c = 2 * tc * rates.gamma_s / delta
    return a * ops.jz + b * ops.jx - c * ops.jy


def master_rhs(rho: np.ndarray, params: SystemParams, ops: SpinOperators, rates: RateSet) -> np.ndarray:
    """d rho / dt of the large-spin Born-Markov master equation."""
    rho = np.asarray(rho)
    if rho.shape != (ops.dim, ops.dim):
        raise ValueError(f"rho has shape {rho.shape}, expected {(ops.dim, ops.dim)}")
    h = hamiltonian(params, ops)
    x = dissipation_operator(params, ops, rates)
    jz = ops.jz
    k = x @ rho - rho @ x.conj().T
    return 1j * (rho @ h - h @ rho) - (jz @ k - k @ jz)


def liouvillian(params: SystemParams, ops: SpinOperators, rates: RateSet) -> np.ndarray:
    """Matrix of ``master_rhs`` acting on row-major flattened density matrices.

    Uses vec(A rho B) = (A kron B^T) vec(rho) for C-order flattening.
    """
    h = hamiltonian(params, ops)
    x = dissipation_operator(params, ops, rates)
    xd = x.conj().T
    jz = ops.jz
    eye = np.eye(ops.dim)
    return (
        1j * (np.kron(eye, h.T) - np.kron(h, eye))
        - np.kron(jz @ x, eye)
        + np.kron(x, jz.T)
        + np.kron(jz, xd.T)
        - np.kron(eye, (xd @ jz).T)
    )


def spectral_abscissa(generator: np.ndarray) -> float:
    """Largest real part among the eigenvalues of a generator.

    Zero (to rounding) for a stable master equation, which always has a
    stationary mode; positive when some mode grows without bound.
    """
    return float(np.linalg.eigvals(generator).real.max())


# -- Bloch equations --------------------------------------------------------


def _require_half(params: SystemParams):
    if params.spin.two_j != 1:
        raise ValueError(
            f"Bloch equations close only for J=1/2, got J={params.spin}; use the master equation"
        )


def bloch_generator(params: SystemParams, rates: RateSet):
    """Matrix ``m`` and constant ``c`` with d<J>/dt = m @ <J> + c for J = 1/2."""
    _require_half(params)
    _check_rates(params, rates)
    eps, tc, delta = params.epsilon, params.tc, params.delta
    g, gc, gs = rates.gamma, rates.gamma_c, rates.gamma_s
    relax = (eps**2 * g.real + 4 * tc**2 * gc.real) / delta**2
    m = np.array(
        [
            [-relax, -eps, 2 * tc * eps / delta**2 * (g.real - gc.real)],
            [eps, -relax, -(2 * tc + 2 * tc / delta * gs.real)],
            [0.0, 2 * tc, 0.0],
        ]
    )
    c = np.array([tc / delta * gs.imag, tc * eps / delta**2 * (g.imag - gc.imag), 0.0])
    return m, c


def bloch_rhs(v, params: SystemParams, rates: RateSet) -> np.ndarray:
    """Time derivative of (<J_x>, <J_y>, <J_z>) for a spin 1/2."""
    m, c = bloch_generator(params, rates)
    return m @ np.asarray(v, dtype=float) + c


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    ops = build_spin_operators(1)
    return np.array(expectations(rho, ops))


def bloch_density_matrix(v) -> np.ndarray:
    """Spin-1/2 density matrix I/2 + 2 (v . J) with <J_i> = v_i."""
    ops = build_spin_operators(1)
    v = np.asarray(v)
    return 0.5 * np.eye(2) + 2 * (v[..., 0, None, None] * ops.jx + v[..., 1, None, None] * ops.jy + v[..., 2, None, None] * ops.jz)


# -- integration ------------------------------------------------------------


def _step_count(t_end: float, dt: float) -> int:
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not t_end > 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    n = int(round(t_end / dt))
    if n < 1 or abs(n * dt - t_end) > 1e-9 * t_end:
        raise ValueError(f"t_end={t_end} is not an integer multiple of dt={dt}")
    return n


def default_sample_every(n_steps: int, max_samples: int = MAX_SAMPLES) -> int:
    return max(1, math.ceil(n_steps / max_samples))


def _sample_indices(n_steps, sample_every):
    if sample_every is None:
        sample_every = default_sample_every(n_steps)
    if sample_every < 1:
        raise ValueError(f"sample_every must be >= 1, got {sample_every}")
    idx = list(range(0, n_steps + 1, sample_every))
    if idx[-1] != n_steps:
        idx.append(n_steps)
    return np.array(idx)


def check_step_size(params: SystemParams, dt: float, factor: float = 0.01):
    """Reject steps that under-resolve the coherent precession (dt > factor / Delta)."""
    limit = factor / params.delta
    if dt > limit * (1 + 1e-12):
        raise ValueError(f"dt={dt} exceeds {limit:.6g} = {factor}/Delta; reduce the step")


def integrate(rhs, y0, t_end: float, dt: float, sample_every: int | None = None):
    """Fixed-step RK4 for dy/dt = rhs(y); returns sample times and sampled states.

    Aborts with :class:`IntegrationError` as soon as the state is not finite.
    """
    n_steps = _step_count(t_end, dt)
    idx = _sample_indices(n_steps, sample_every)
    y0 = np.asarray(y0)
    y = np.array(y0, dtype=np.result_type(y0, float))
    out = np.empty((len(idx),) + y.shape, dtype=y.dtype)
    out[0] = y
    k = 1
    for step in range(1, n_steps + 1):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"non-finite state at t={step * dt:g}", time=step * dt)
        if k < len(idx) and step == idx[k]:
            out[k] = y
            k += 1
    return idx * dt, out


def rk4_step_increment(generator: np.ndarray, dt: float) -> np.ndarray:
    """Increment Q of one RK4 step y -> (I + Q) y for dy/dt = G y.

    Q = sum_{k=1..4} (dt G)^k / k!. It is kept apart from the identity so
    that its small entries are not rounded against 1.
    """
    a = dt * np.asarray(generator)
    term = a
    q = a.copy()
    for k in range(2, 5):
        term = term @ a / k
        q = q + term
    return q


def _increment_power(q: np.ndarray, n: int) -> np.ndarray:
    """Q_n with (I + Q)^n = I + Q_n, by binary powering in increment form."""
    result = None
    base = q
    while n:
        if n & 1:
            # (I + A)(I + B) = I + (A + B + A B)
            result = base if result is None else result + base + result @ base
        n >>= 1
        if n:
            base = base + base + base @ base
    return result


def integrate_linear(generator: np.ndarray, y0, t_end: float, dt: float, sample_every: int | None = None):
    """RK4 trajectory of dy/dt = G y, advancing whole sampling blocks at once.

    Equivalent to :func:`integrate` with ``rhs = lambda y: G @ y`` up to
    rounding, at the cost of one matrix-vector product per sample.
    """
    n_steps = _step_count(t_end, dt)
    idx = _sample_indices(n_steps, sample_every)
    q = rk4_step_increment(generator, dt)
    y0 = np.asarray(y0)
    y = np.array(y0, dtype=np.result_type(y0, q))
    out = np.empty((len(idx),) + y.shape, dtype=y.dtype)
    out[0] = y
    blocks = {}
    for k in range(1, len(idx)):
        n = int(idx[k] - idx[k - 1])
        if n not in blocks:
            blocks[n] = _increment_power(q, n)
        y = y + blocks[n] @ y
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"non-finite state at t={idx[k] * dt:g}", time=idx[k] * dt)
        out[k] = y
    return idx * dt, out


def _diagnostics(rhos: np.ndarray):
    trace_err = np.abs(np.trace(rhos, axis1=-2, axis2=-1) - 1)
    adj = np.conj(np.swapaxes(rhos, -1, -2))
    herm_err = np.max(np.abs(rhos - adj), axis=(-2, -1))
    min_eig = np.linalg.eigvalsh(0.5 * (rhos + adj))[..., 0]
    return trace_err, herm_err, min_eig


def _warn_positivity(min_eig, times):
    bad = np.flatnonzero(min_eig < -POSITIVITY_TOL)
    if bad.size:
        i = bad[0]
        warnings.warn(
            f"density matrix eigenvalue {min_eig[i]:.3g} at t={times[i]:g} "
            f"(minimum {min_eig.min():.3g}); Redfield-type evolution is not positivity preserving",
            PositivityWarning,
            stacklevel=3,
        )


def evolve_master(
    params: SystemParams,
    bath: BathSpec | None = None,
    rho0: np.ndarray | None = None,
    t_end: float = 20.0,
    dt: float = DEFAULT_DT,
    sample_every: int | None = None,
    rates: RateSet | None = None,
    check_dt: bool = True,
) -> Trajectory:
    """Integrate the master equation from ``rho0`` (default |J, J>)."""
    if rates is None:
        if bath is None:
            raise ValueError("either bath or rates is required")
        rates = compute_rates(params, bath)
    if check_dt:
        check_step_size(params, dt)
    ops = build_spin_operators(params.spin)
    rho0 = initial_state_spin_up(params.spin) if rho0 is None else validate_density_matrix(rho0)
    if rho0.shape != (ops.dim, ops.dim):
        raise ValueError(f"rho0 has shape {rho0.shape}, expected {(ops.dim, ops.dim)}")
    gen = liouvillian(params, ops, rates)
    growth = spectral_abscissa(gen)
    if growth > 1e-9:
        warnings.warn(
            f"master equation has a growing mode (rate {growth:.3g}) for J={params.spin}, "
            f"eps={params.epsilon}; the coupling is too strong for the Born-Markov treatment",
            InstabilityWarning,
            stacklevel=2,
        )
    times, vecs = integrate_linear(gen, rho0.ravel(), t_end, dt, sample_every)
    rhos = vecs.reshape(-1, ops.dim, ops.dim)
    jx, jy, jz = expectations(rhos, ops)
    trace_err, herm_err, min_eig = _diagnostics(rhos)
    _warn_positivity(min_eig, times)
    return Trajectory(
        times, jx, jy, jz, trace_err, herm_err, min_eig,
        spin=params.spin.j, meta={"method": "master", "dt": dt, "growth_rate": growth},
    )


def evolve_bloch(
    params: SystemParams,
    bath: BathSpec | None = None,
    v0=None,
    t_end: float = 20.0,
    dt: float = DEFAULT_DT,
    sample_every: int | None = None,
    rates: RateSet | None = None,
    check_dt: bool = True,
) -> Trajectory:
    """Integrate the spin-1/2 Bloch equations from ``v0`` (default spin up, (0, 0, 1/2))."""
    _require_half(params)
    if rates is None:
        if bath is None:
            raise ValueError("either bath or rates is required")
        rates = compute_rates(params, bath)
    if check_dt:
        check_step_size(params, dt)
    v0 = np.array([0.0, 0.0, 0.5]) if v0 is None else np.asarray(v0, dtype=float)
    m, c = bloch_generator(params, rates)
    # affine system made linear by carrying a constant 1 as fourth component
    gen = np.zeros((4, 4))
    gen[:3, :3] = m
    gen[:3, 3] = c
    times, ys = integrate_linear(gen, np.append(v0, 1.0), t_end, dt, sample_every)
    v = ys[:, :3]
    trace_err, herm_err, min_eig = _diagnostics(bloch_density_matrix(v))
    return Trajectory(
        times, v[:, 0], v[:, 1], v[:, 2], trace_err, herm_err, min_eig,
        spin=0.5, meta={"method": "bloch", "dt": dt},
    )
