"""Closed-form equilibria, the perturbative beat predictor, and trajectory measurements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import signal

from .exceptions import AnalysisError
from .quadrature import half_line_integral, pv_integral
from .rates import BathSpec, RateSet, exp_integral_ei, spectral_density
from .spin import SystemParams


@dataclass(frozen=True)
class EquilibriumValues:
    jz_inf: float
    jx_inf: float
    jy_inf: float = 0.0


def _require_half(params):
    if params.spin.two_j != 1:
        raise ValueError(f"closed-form equilibria are for J=1/2, got J={params.spin}")


def equilibrium_bloch(params: SystemParams, rates: RateSet) -> EquilibriumValues:
    """Stationary point of the spin-1/2 Bloch equations; <J_y> vanishes there."""
    _require_half(params)
    eps, tc, d = params.epsilon, params.tc, params.delta
    g, gc, gs = rates.gamma, rates.gamma_c, rates.gamma_s
    relax = (eps**2 * g + 4 * tc**2 * gc).real
    diff = g - gc
    shifted = d + gs.real
    denom = d * relax * shifted - eps**2 * d**2 * diff.real
    if denom == 0 or not np.isfinite(denom):
        raise ValueError(
            "degenerate parameter point: the equilibrium denominator vanishes "
            f"(eps={eps}, tc={tc}, rates={rates})"
        )
    jz = (eps * relax * diff.imag + eps * d**3 * gs.imag) / (2 * denom)
    jx = (tc * d**2 * gs.imag * shifted + eps**2 * tc * diff.real * diff.imag) / denom
    return EquilibriumValues(float(jz), float(jx))


def equilibrium_thermodynamic(params: SystemParams, temperature: float) -> EquilibriumValues:
    """Thermal spin-1/2 values -eps/(2 Delta) tanh(beta Delta/2), -Tc/Delta tanh(beta Delta/2)."""
    _require_half(params)
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    d = params.delta
    th = 1.0 if temperature == 0 else np.tanh(d / (2 * temperature))
    return EquilibriumValues(float(-params.epsilon / (2 * d) * th), float(-params.tc / d * th))


# -- quantum beats ----------------------------------------------------------


@dataclass(frozen=True)
class BeatPrediction:
    omega_0: float
    omega_b: float
    e2_plus: float
    e2_minus: float
    e2_zero: float


def _check_beat_regime(params: SystemParams, bath: BathSpec):
    if params.epsilon != 0:
        raise ValueError(f"beat prediction requires zero bias, got epsilon={params.epsilon}")
    if bath.temperature != 0:
        raise ValueError(f"beat prediction requires zero temperature, got {bath.temperature}")


def level_shifts(tc: float, bath: BathSpec, method: str = "quadrature"):
    """Second-order shifts of the |+> and |-> levels (energies +-2 Tc).

    E_pm = -(1/2) PV int rho(w) / (w -+ 2 Tc) dw.
    """
    rho = lambda w: spectral_density(w, bath)
    gap = 2.0 * tc
    if method == "quadrature":
        e_plus = -0.5 * pv_integral(rho, gap, bath.omega_c)
        e_minus = -0.5 * half_line_integral(lambda w: rho(w) / (w + gap), bath.omega_c)
    elif method == "analytic":
        y = gap / bath.omega_c
        e_plus = -bath.alpha * (bath.omega_c - gap * np.exp(-y) * exp_integral_ei(y))
        e_minus = -bath.alpha * (bath.omega_c + gap * np.exp(y) * exp_integral_ei(-y))
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(e_plus), float(e_minus)


def beat_frequency(alpha: float, omega_c: float, tc: float = 1.0) -> float:
    """Closed-form beat frequency of an unbiased spin one at zero temperature.

    alpha*omega_c + alpha*Tc [exp(y) Ei(-y) - exp(-y) Ei(y)] with y = 2 Tc / omega_c.
    """
    y = 2.0 * tc / omega_c
    bracket = np.exp(y) * exp_integral_ei(-y) - np.exp(-y) * exp_integral_ei(y)
    return float(alpha * omega_c + alpha * tc * bracket)


def beat_prediction(params: SystemParams, bath: BathSpec, method: str = "quadrature") -> BeatPrediction:
    """Carrier and beat frequencies from the second-order level shifts.

    Valid for zero bias and zero temperature; the derivation is for J = 1.
    """
    _check_beat_regime(params, bath)
    e_plus, e_minus = level_shifts(params.tc, bath, method)
    e_zero = e_plus + e_minus
    return BeatPrediction(
        omega_0=2 * params.tc + 0.5 * (e_plus - e_minus),
        omega_b=-0.5 * e_zero,
        e2_plus=e_plus,
        e2_minus=e_minus,
        e2_zero=e_zero,
    )


def predicted_beat_trace(pred: BeatPrediction, times) -> np.ndarray:
    """Undamped <J_z>(t) = cos(omega_0 t) cos(omega_b t)."""
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be nonnegative")
    return np.cos(pred.omega_0 * times) * np.cos(pred.omega_b * times)


# -- trajectory measurements ------------------------------------------------


def extract_decay_time(traj, level: float | None = 0.0, mode: str = "level") -> float:
    """First time the normalized <J_z>/J falls through ``level``, linearly interpolated.

    ``mode="1/e"`` ignores ``level`` and uses final + (initial - final)/e.
    """
    z = np.asarray(traj.normalized_jz)
    t = np.asarray(traj.times)
    if mode == "1/e":
        level = z[-1] + (z[0] - z[-1]) / np.e
    elif mode != "level":
        raise ValueError(f"mode must be 'level' or '1/e', got {mode!r}")
    above = z > level
    crossing = np.flatnonzero(above[:-1] & ~above[1:])
    if not above[0] or crossing.size == 0:
        raise AnalysisError(f"<J_z>/J never crosses {level:g} from above")
    i = crossing[0]
    return float(t[i] + (z[i] - level) / (z[i] - z[i + 1]) * (t[i + 1] - t[i]))


def _parabolic_vertex(y0, y1, y2):
    den = y0 - 2 * y1 + y2
    return 0.0 if den == 0 else 0.5 * (y0 - y2) / den


def beat_nodes(times, values, min_depth: float = 0.5, min_separation: float = 5.0):
    """Times of the envelope nodes of a carrier oscillation with slow modulation.

    The rectified signal is sampled at its carrier maxima, a single
    exponential envelope fitted to those maxima is divided out, and minima
    deeper than ``min_depth`` of the envelope scale are refined by a
    parabola through the squared envelope (smooth at a node).
    """
    times = np.asarray(times, dtype=float)
    rect = np.abs(np.asarray(values, dtype=float))
    peaks, _ = signal.find_peaks(rect)
    if len(peaks) < 5:
        raise AnalysisError("too few carrier oscillations to resolve an envelope")
    tp, ap = times[peaks], rect[peaks]
    slope, offset = np.polyfit(tp, np.log(np.maximum(ap, 1e-300)), 1, w=ap)
    env = ap / np.exp(offset + slope * tp)
    scale = np.percentile(env, 90)
    minima, _ = signal.find_peaks(-env, prominence=(1 - min_depth) * scale)
    minima = [i for i in minima if env[i] < min_depth * scale]
    sq = env**2
    nodes = []
    for i in minima:
        if i == 0 or i == len(env) - 1:
            continue
        step = _parabolic_vertex(sq[i - 1], sq[i], sq[i + 1])
        half = 0.5 * (tp[i + 1] - tp[i - 1])
        nodes.append(tp[i] + step * half)
    nodes = np.array(nodes)
    if len(nodes) >= 2:
        carrier = np.pi / np.mean(np.diff(tp))
        envelope = np.pi / np.mean(np.diff(nodes))
        if carrier < min_separation * envelope:
            raise AnalysisError(
                f"carrier ({carrier:.3g}) and envelope ({envelope:.3g}) frequencies are not "
                f"separated by {min_separation}x; beat pattern degraded"
            )
    return nodes


def extract_beat_frequency(traj, min_depth: float = 0.5) -> float:
    """Envelope angular frequency pi / (mean spacing of beat nodes) of <J_z>."""
    nodes = beat_nodes(traj.times, traj.jz, min_depth=min_depth)
    if len(nodes) < 2:
        raise AnalysisError(f"found {len(nodes)} beat node(s); need at least two")
    return float(np.pi / np.mean(np.diff(nodes)))
