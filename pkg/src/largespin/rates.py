"""Ohmic bath and the complex rates entering the large-spin master equation.

The bath enters through the spectral function

    rho(w) = 2 * alpha * w * exp(-w / omega_c)

and three complex rates evaluated at the level spacing Delta:

    Gamma_c = (pi/2) rho(Delta) coth(beta Delta/2)
              - (i/2) PV int rho(w) [1/(w+Delta) + 1/(w-Delta)] dw
    Gamma_s = (1/2) PV int rho(w) coth(beta w/2) [1/(w+Delta) - 1/(w-Delta)] dw
              - i (pi/2) rho(Delta)
    Gamma   = lim_{Delta -> 0} Gamma_c

Every principal-value integral except the finite-temperature real part of
Gamma_s has a closed form in the exponential integral; those are the
``"analytic"`` path. The ``"quadrature"`` path integrates numerically and
serves as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .quadrature import half_line_integral, pv_integral
from .spin import SystemParams

WEAK_COUPLING_LIMIT = 0.1
METHODS = ("analytic", "quadrature")


@dataclass(frozen=True)
class BathSpec:
    """Ohmic bath: coupling ``alpha``, cutoff ``omega_c``, and k_B T.

    ``temperature == 0`` is treated exactly (coth factors equal to one).
    """

    alpha: float
    omega_c: float
    temperature: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "omega_c", "temperature"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not self.omega_c > 0:
            raise ValueError(f"omega_c must be > 0, got {self.omega_c}")
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")

    @property
    def beyond_weak_coupling(self) -> bool:
        """True when alpha exceeds the range where the Born-Markov treatment is trusted."""
        return self.alpha > WEAK_COUPLING_LIMIT

    @property
    def beta(self) -> float:
        return np.inf if self.temperature == 0 else 1.0 / self.temperature

    def with_alpha(self, alpha: float) -> "BathSpec":
        return BathSpec(alpha, self.omega_c, self.temperature)


@dataclass(frozen=True)
class RateSet:
    gamma: complex
    gamma_c: complex
    gamma_s: complex
    delta: float

    def as_array(self) -> np.ndarray:
        return np.array([self.gamma, self.gamma_c, self.gamma_s])


def spectral_density(omega, bath: BathSpec):
    """rho(w) = 2 alpha w exp(-w/omega_c) for w >= 0."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("spectral density is defined for omega >= 0 only")
    out = 2.0 * bath.alpha * omega * np.exp(-omega / bath.omega_c)
    return out if out.ndim else float(out)


def coth_half(omega, temperature: float):
    """coth(omega / (2 k_B T)); identically 1 at zero temperature."""
    omega = np.asarray(omega, dtype=float)
    if temperature == 0:
        return np.ones_like(omega) if omega.ndim else 1.0
    x = omega / (2.0 * temperature)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(x > 20, 1.0, np.where(x < 1e-4, 1.0 / x + x / 3.0, 1.0 / np.tanh(x)))
    return out if out.ndim else float(out)


def thermal_spectral_density(omega, bath: BathSpec):
    """rho(w) coth(beta w / 2), continuous at w = 0 where it equals 4 alpha k_B T."""
    omega = np.asarray(omega, dtype=float)
    if bath.temperature == 0:
        return spectral_density(omega, bath)
    t = bath.temperature
    x = omega / (2.0 * t)
    damp = np.exp(-omega / bath.omega_c)
    with np.errstate(divide="ignore", invalid="ignore"):
        regular = 2.0 * bath.alpha * omega * damp * coth_half(omega, t)
    # small-x Laurent series times w, with the 1/w pole cancelled analytically
    series = bath.alpha * damp * (4.0 * t + omega**2 / (3.0 * t))
    out = np.where(x < 1e-4, series, regular)
    return out if out.ndim else float(out)


def exp_integral_ei(x):
    """Exponential integral Ei(x) (principal value for x > 0; Ei(x) = -E1(-x) for x < 0)."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise ValueError("Ei(x) has a logarithmic singularity at x = 0")
    out = special.expi(x)
    return out if out.ndim else float(out)


def _ei_pair(delta, omega_c):
    # (exp(x) Ei(-x), exp(-x) Ei(x)) with x = delta / omega_c
    x = delta / omega_c
    return np.exp(x) * exp_integral_ei(-x), np.exp(-x) * exp_integral_ei(x)


def pv_shift_sum(delta: float, bath: BathSpec, method: str = "analytic") -> float:
    """PV int_0^inf rho(w) [1/(w + Delta) + 1/(w - Delta)] dw."""
    _check_method(method)
    if method == "analytic":
        lo, hi = _ei_pair(delta, bath.omega_c)
        return 2.0 * bath.alpha * (2.0 * bath.omega_c + delta * (lo - hi))
    rho = lambda w: spectral_density(w, bath)
    return _nonsingular(rho, delta, bath.omega_c) + pv_integral(rho, delta, bath.omega_c)


def pv_shift_difference(delta: float, bath: BathSpec, method: str = "analytic") -> float:
    """PV int_0^inf rho(w) coth(beta w/2) [1/(w + Delta) - 1/(w - Delta)] dw.

    The closed form exists only at zero temperature.
    """
    _check_method(method)
    if method == "analytic":
        if bath.temperature != 0:
            raise ValueError("no closed form at finite temperature; use method='quadrature'")
        lo, hi = _ei_pair(delta, bath.omega_c)
        return 2.0 * bath.alpha * delta * (lo + hi)
    g = lambda w: thermal_spectral_density(w, bath)
    return _nonsingular(g, delta, bath.omega_c) - pv_integral(g, delta, bath.omega_c)


def _nonsingular(g, delta, omega_c):
    return half_line_integral(lambda w: g(w) / (w + delta), omega_c, 50.0 * max(omega_c, delta), inner=delta)


def _check_method(method):
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def _check_delta(delta):
    if not delta > 0:
        raise ValueError(f"delta must be > 0, got {delta}; use compute_gamma for the delta -> 0 limit")


def compute_gamma_c(delta: float, bath: BathSpec, method: str = "analytic") -> complex:
    _check_delta(delta)
    real = 0.5 * np.pi * spectral_density(delta, bath) * coth_half(delta, bath.temperature)
    imag = -0.5 * pv_shift_sum(delta, bath, method)
    return complex(real, imag)


def compute_gamma_s(delta: float, bath: BathSpec, method: str | None = None) -> complex:
    """Gamma_s at level spacing ``delta``.

    ``method=None`` picks the closed form at zero temperature and quadrature
    otherwise.
    """
    _check_delta(delta)
    if method is None:
        method = "analytic" if bath.temperature == 0 else "quadrature"
    real = 0.5 * pv_shift_difference(delta, bath, method)
    imag = -0.5 * np.pi * spectral_density(delta, bath)
    return complex(real, imag)


def compute_gamma(bath: BathSpec, method: str = "analytic") -> complex:
    """Delta -> 0 limit of Gamma_c: 2 pi alpha k_B T - 2 i alpha omega_c."""
    _check_method(method)
    real = 2.0 * np.pi * bath.alpha * bath.temperature
    if method == "analytic":
        imag = -2.0 * bath.alpha * bath.omega_c
    else:
        # rho(w) * 2/w is regular at w = 0
        imag = -0.5 * half_line_integral(
            lambda w: 4.0 * bath.alpha * np.exp(-w / bath.omega_c), bath.omega_c
        )
    return complex(real, imag)


def compute_rates(params: SystemParams, bath: BathSpec, method: str = "analytic") -> RateSet:
    delta = params.delta
    gamma_s_method = "quadrature" if bath.temperature != 0 else method
    return RateSet(
        gamma=compute_gamma(bath, method),
        gamma_c=compute_gamma_c(delta, bath, method),
        gamma_s=compute_gamma_s(delta, bath, gamma_s_method),
        delta=delta,
    )
