"""Cauchy principal-value integrals over the positive half line."""

from __future__ import annotations

import numpy as np
from scipy import integrate

from .exceptions import ConvergenceError

EPSREL = 1e-12
LIMIT = 400
TAIL_TOL = 1e-14


def _quad(f, a, b, epsrel=EPSREL, limit=LIMIT):
    if b <= a:
        return 0.0
    out = integrate.quad(f, a, b, epsabs=0.0, epsrel=epsrel, limit=limit, full_output=1)
    value, abserr, info = out[0], out[1], out[2]
    # a fourth element is present only when QUADPACK flags a problem
    if len(out) > 3 and abserr > max(1e3 * epsrel * abs(value), 1e-300):
        raise ConvergenceError(
            f"quadrature on [{a:g}, {b:g}] did not converge "
            f"(estimate {value:.6g}, error {abserr:.3g}, {info['last']} subintervals): {out[3]}"
        )
    return value


def half_line_integral(f, scale, cutoff=None, epsrel=EPSREL, inner=None):
    """Integral of a smooth, exponentially decaying ``f`` over [0, inf).

    The domain is truncated at ``cutoff`` (default ``50 * scale``) and split
    into a few panels so the adaptive rule sees the decay length. ``inner``
    names a much shorter length on which ``f`` varies near 0; panels then
    grow geometrically from it up to ``scale``.
    """
    if cutoff is None:
        cutoff = 50.0 * scale
    small = []
    if inner is not None and 0 < inner < 0.1 * scale:
        small = list(np.geomspace(inner, scale, int(np.ceil(np.log10(scale / inner))) + 1)[:-1])
    edges = [0.0] + [e for e in (*small, scale, 5 * scale, 15 * scale) if e < cutoff] + [cutoff]
    return sum(_quad(f, a, b, epsrel) for a, b in zip(edges[:-1], edges[1:]))


def pv_integral(numerator, pole, upper_scale, cutoff=None, epsrel=EPSREL):
    """Principal value of int_0^inf numerator(w) / (w - pole) dw.

    ``numerator`` must be smooth near ``pole`` and decay at least
    exponentially on the scale ``upper_scale``. A symmetric window of
    half-width ``min(pole, upper_scale)/2`` around the pole is integrated in
    the folded form (g(p+u) - g(p-u))/u, which is regular at u = 0; the
    subtracted g(p)/(w - p) term has zero principal value on that window.
    """
    if not pole > 0:
        raise ValueError(f"pole must be positive, got {pole}")
    if not upper_scale > 0:
        raise ValueError(f"upper_scale must be positive, got {upper_scale}")
    if cutoff is None:
        cutoff = 50.0 * max(upper_scale, pole)
    h = 0.5 * min(pole, upper_scale)

    tail = abs(numerator(cutoff)) / (cutoff - pole) * upper_scale
    if tail > TAIL_TOL * max(1.0, abs(numerator(pole))):
        raise ConvergenceError(
            f"integrand has not decayed at the cutoff {cutoff:g} (tail bound {tail:.3g})"
        )

    def folded(u):
        return (numerator(pole + u) - numerator(pole - u)) / u

    def outer(w):
        return numerator(w) / (w - pole)

    below = _quad(outer, 0.0, pole - h, epsrel)
    window = _quad(folded, 0.0, h, epsrel)
    start = pole + h
    above = half_line_integral(lambda w: outer(w + start), upper_scale, cutoff - start, epsrel, inner=h)
    return below + window + above
