"""Panelized Gauss-Legendre quadrature with order-doubling refinement.

Integrands are assumed vectorized (ndarray in, ndarray out). Panels should be
chosen so the integrand is smooth inside each panel; |f|^p factors are smooth
between sign changes of f, so callers align panel edges with zeros.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError


@lru_cache(maxsize=None)
def _leggauss(order: int):
    return np.polynomial.legendre.leggauss(order)


def panel_nodes(edges, order):
    """All Gauss-Legendre nodes/weights for the panels defined by `edges`."""
    edges = np.asarray(edges, dtype=float)
    t, w = _leggauss(order)
    lo = edges[:-1][:, None]
    hi = edges[1:][:, None]
    half = 0.5 * (hi - lo)
    x = (0.5 * (hi + lo) + half * t[None, :]).ravel()
    ww = (half * w[None, :]).ravel()
    return x, ww


def integrate_panels(f, edges, order=16):
    x, w = panel_nodes(edges, order)
    return float(np.dot(w, f(x)))


_DEFAULT_TOL = 1e-8


def set_default_tol(tol):
    """Process-wide refinement tolerance (the CLI --tol override)."""
    global _DEFAULT_TOL
    _DEFAULT_TOL = float(tol)


def integrate_refined(f, edges, order=12, tol=None, max_doublings=7):
    """Integrate f over the panels, doubling the per-panel order until the
    relative change drops below `tol`. Returns (value, error_estimate)."""
    if tol is None:
        tol = _DEFAULT_TOL
    prev = integrate_panels(f, edges, order)
    for _ in range(max_doublings):
        order *= 2
        cur = integrate_panels(f, edges, order)
        err = abs(cur - prev)
        scale = max(abs(cur), abs(prev), 1e-300)
        if err <= tol * scale:
            return cur, err
        prev = cur
    raise ConvergenceError(
        f"quadrature refinement stalled: last estimates {prev!r} and {cur!r}"
    )


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, iters=80):
    """Golden-section search for the maximum of a scalar unimodal-ish f."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(iters):
        if b - a < 1e-13 * max(1.0, abs(a) + abs(b)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    xm = 0.5 * (a + b)
    return xm, max(fc, fd, f(xm))


def max_refined(f, edges, order=32):
    """Max of |f| over [edges[0], edges[-1]]: dense grid plus a local polish
    around the grid argmax."""
    x, _ = panel_nodes(edges, order)
    edges = np.asarray(edges, dtype=float)
    x = np.concatenate([x, edges])
    vals = np.abs(f(x))
    i = int(np.argmax(vals))
    xi = x[i]
    span = edges[-1] - edges[0]
    h = max(span / (order * (len(edges) - 1)), 1e-12)
    lo = max(edges[0], xi - 2 * h)
    hi = min(edges[-1], xi + 2 * h)
    _, fm = golden_max(lambda t: float(np.abs(f(np.array([t]))[0])), lo, hi)
    return max(float(vals[i]), fm)
