"""Bessel functions of the first kind, spherical Bessel functions, their
zeros under Dirichlet/Neumann/Robin-type conditions, and the classical
inequality helpers built on them.

Evaluation is self-contained double precision with three regimes:

* ascending power series where its terms decrease from the start,
* Miller's backward recurrence normalized by the even-order sum identity
  (cylindrical) or the (2k+1) j_k^2 identity (spherical) in the mid-range,
* the Hankel large-argument expansion, with the oscillation phase carried
  in extended precision, once x >= max(25, n^2).

Zero finding seeds brackets with McMahon's fixed-order expansion or Olver's
large-order expansion, verifies the sign change, falls back to scanning, and
refines by bisection followed by safeguarded Newton. Robin zeros are
bracketed between the derivative zero and the function zero of the same
index, which is where they are guaranteed to live.

All functions are pure; the zero cache is append-only behind a lock.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, DomainError

__all__ = [
    "ASYMPTOTIC_CONSTANTS",
    "AsymptoticConstants",
    "ZeroSpec",
    "bessel_j",
    "bessel_j_prime",
    "bessel_j_block",
    "bessel_y_block",
    "sph_bessel_j",
    "sph_bessel_j_prime",
    "find_zero",
    "zeros_list",
    "kapteyn_rhs",
    "airy_delta",
    "mcmahon_seed",
    "olver_seed",
]

EULER_GAMMA = 0.5772156649015328606
_PI_L = np.longdouble("3.14159265358979323846264338327950288")

# Regime boundaries. Series terms decrease from k=0 iff x^2/4 <= n+1.
_SERIES_CAP = 6.0
_ASYM_FLOOR = 25.0

_BIG = 1e250
_BIG_INV = 1e-250


# ----------------------------------------------------------------------
# constants used by the large-order seeds and the classical inequalities


def _airy_ai_pair(x):
    """(Ai(x), Ai'(x)) by the Maclaurin series; adequate for |x| <= 8."""
    c1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    c2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)
    x3 = x * x * x
    # f = sum 3^k (1/3)_k x^{3k} / (3k)!,  g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
    tf, f, df = 1.0, 1.0, 0.0
    tg, g, dg = x, x, 1.0
    for k in range(1, 120):
        tf = tf * x3 / ((3 * k) * (3 * k - 1))
        f += tf
        df += tf * (3 * k) / x if x != 0.0 else 0.0
        tg = tg * x3 / ((3 * k + 1) * (3 * k))
        g += tg
        dg += tg * (3 * k + 1) / x if x != 0.0 else 0.0
        if abs(tf) < 1e-18 * (abs(f) + 1.0) and abs(tg) < 1e-18 * (abs(g) + 1.0):
            break
    return c1 * f - c2 * g, c1 * df - c2 * dg


def _airy_zero_seed(k):
    t = 3.0 * math.pi * (4.0 * k - 1.0) / 8.0
    t2 = t * t
    return -(t ** (2.0 / 3.0)) * (1.0 + 5.0 / (48.0 * t2) - 5.0 / (36.0 * t2 * t2))


def airy_delta(k: int) -> float:
    """delta_k = -a_k * 2^(-1/3) with a_k the k-th negative Airy zero; the
    first few are polished by Newton on the Maclaurin-series Ai."""
    if k < 1:
        raise DomainError("extremum index must be >= 1")
    a = _airy_zero_seed(k)
    if k <= 5:
        for _ in range(40):
            ai, aip = _airy_ai_pair(a)
            step = ai / aip
            a -= step
            if abs(step) < 1e-15 * abs(a):
                break
    return -a * 2.0 ** (-1.0 / 3.0)


@dataclass(frozen=True)
class AsymptoticConstants:
    """Constants entering the large-order lower bounds and zero seeds."""

    c1_prime: float  # leading coefficient of J_n(n) ~ c1' n^(-1/3)
    c2_prime: float  # first-maximum offset j'_{n,1} ~ n + c2' n^(1/3)
    c1_lower: float  # safe lower-bound versions used by the inequalities
    c2_lower: float
    c1_sph: float  # spherical analog of c1' (for j_n(n+1/2))
    c2_sph: float  # spherical first-maximum offset lower bound

    def delta(self, k: int) -> float:
        return airy_delta(k)


ASYMPTOTIC_CONSTANTS = AsymptoticConstants(
    c1_prime=math.gamma(1.0 / 3.0) / (2.0 ** (2.0 / 3.0) * 3.0 ** (1.0 / 6.0) * math.pi),
    c2_prime=0.808618,
    c1_lower=0.447,
    c2_lower=0.8086,
    c1_sph=math.sqrt(math.pi / 2.0) * 0.447,
    c2_sph=0.80,
)


# ----------------------------------------------------------------------
# cylindrical J_n


def _check_arg(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("argument must be finite")
    if np.any(x < 0.0):
        raise DomainError("argument must be >= 0")
    return x


def _jn_series(n, x):
    """Ascending series; callers guarantee x^2/4 <= n+1 so terms decrease."""
    out = np.zeros_like(x)
    pos = x > 0.0
    if n == 0:
        out[~pos] = 1.0
    xs = x[pos]
    if xs.size:
        logpref = n * np.log(xs / 2.0) - math.lgamma(n + 1.0)
        q = -0.25 * xs * xs
        term = np.ones_like(xs)
        s = np.ones_like(xs)
        for k in range(1, 80):
            term = term * q / (k * (n + k))
            s += term
            if np.all(np.abs(term) <= 1e-17 * np.abs(s)):
                break
        out[pos] = np.exp(logpref) * s
    return out


def _miller_block(nmax, x):
    """J_k(x) for k = 0..nmax via backward recurrence, normalized with
    J_0 + 2*sum J_{2m} = 1. x: 1-d array of positive arguments."""
    xmax = float(np.max(x))
    base = max(nmax, int(math.ceil(xmax)))
    start = base + int(14.0 * max(1.0, xmax) ** (1.0 / 3.0)) + 22
    inv_x = 1.0 / x
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-305)
    s_even = np.zeros_like(x)
    out = np.zeros((nmax + 1, x.size))
    for k in range(start, 0, -1):
        jm = (2.0 * k) * inv_x * jc - jp
        jp = jc
        jc = jm
        km1 = k - 1
        if km1 <= nmax:
            out[km1] = jc
        if km1 >= 2 and (km1 & 1) == 0:
            s_even += jc
        big = np.abs(jc) > _BIG
        if np.any(big):
            jc = np.where(big, jc * _BIG_INV, jc)
            jp = np.where(big, jp * _BIG_INV, jp)
            s_even = np.where(big, s_even * _BIG_INV, s_even)
            out[:, big] *= _BIG_INV
    norm = jc + 2.0 * s_even
    return out / norm


def _hankel_pq(n, x):
    """P, Q sums of the large-argument expansion, truncated at the smallest
    term. Callers guarantee x >= max(25, n^2)."""
    mu = 4.0 * n * n
    inv8x = 1.0 / (8.0 * x)
    p = np.ones_like(x)
    q = (mu - 1.0) * inv8x
    tp = np.ones_like(x)
    tq = q.copy()
    for k in range(1, 30):
        tp = tp * (-(mu - (4 * k - 3) ** 2) * (mu - (4 * k - 1) ** 2)) * inv8x * inv8x / ((2 * k - 1) * (2 * k))
        p = p + tp
        tq = tq * (-(mu - (4 * k - 1) ** 2) * (mu - (4 * k + 1) ** 2)) * inv8x * inv8x / ((2 * k) * (2 * k + 1))
        q = q + tq
        if np.all(np.abs(tp) <= 1e-17 * np.abs(p)) and np.all(np.abs(tq) <= 1e-17):
            break
    return p, q


def _jn_hankel(n, x):
    p, q = _hankel_pq(n, x)
    chi = x.astype(np.longdouble) - (0.5 * n + 0.25) * _PI_L
    c = np.cos(chi).astype(float)
    s = np.sin(chi).astype(float)
    return np.sqrt(2.0 / (math.pi * x)) * (p * c - q * s)


def bessel_j(n, x):
    """J_n(x) for integer n >= 0 and x >= 0 (scalar or array)."""
    n = int(n)
    if n < 0:
        raise DomainError("order must be >= 0")
    x = _check_arg(x)
    scalar = x.ndim == 0
    xf = np.atleast_1d(x).astype(float).ravel()
    out = np.empty_like(xf)

    cut_s = min(_SERIES_CAP, 2.0 * math.sqrt(n + 1.0))
    cut_a = max(_ASYM_FLOOR, float(n) * float(n))
    m_ser = xf <= cut_s
    m_asy = xf >= cut_a
    m_mid = ~(m_ser | m_asy)

    if np.any(m_ser):
        out[m_ser] = _jn_series(n, xf[m_ser])
    if np.any(m_mid):
        out[m_mid] = _miller_block(n, xf[m_mid])[n]
    if np.any(m_asy):
        out[m_asy] = _jn_hankel(n, xf[m_asy])
    if scalar:
        return float(out.reshape(x.shape))
    return out.reshape(np.shape(x))


def bessel_j_prime(n, x):
    """J_n'(x); uses J_{n-1} - (n/x) J_n, with the x=0 limits handled."""
    n = int(n)
    if n < 0:
        raise DomainError("order must be >= 0")
    x = _check_arg(x)
    scalar = x.ndim == 0
    xf = np.atleast_1d(x).astype(float).ravel()
    if n == 0:
        out = -np.atleast_1d(bessel_j(1, xf))
    else:
        out = np.empty_like(xf)
        pos = xf > 0.0
        xs = xf[pos]
        if xs.size:
            out[pos] = bessel_j(n - 1, xs) - (n / xs) * bessel_j(n, xs)
        out[~pos] = 0.5 if n == 1 else 0.0
    if scalar:
        return float(out.reshape(x.shape))
    return out.reshape(np.shape(x))


def bessel_j_block(nmax, x):
    """J_k(x) for all k = 0..nmax at once; x scalar or 1-d array, x > 0."""
    xf = np.atleast_1d(_check_arg(x)).astype(float).ravel()
    if np.any(xf == 0.0):
        out = np.zeros((nmax + 1, xf.size))
        pos = xf > 0.0
        if np.any(pos):
            out[:, pos] = _miller_block(nmax, xf[pos])
        out[0, ~pos] = 1.0
        return out
    return _miller_block(nmax, xf)


def _jn_second(n, x, j=None, jp=None):
    """J_n''(x) from the defining equation; x > 0."""
    if j is None:
        j = bessel_j(n, x)
    if jp is None:
        jp = bessel_j_prime(n, x)
    return -jp / x - (1.0 - (n * n) / (x * x)) * j


def bessel_y_block_many(nmax, x):
    """Vectorized bessel_y_block over a 1-d array of positive arguments.
    Returns (values (nmax+1, N), valid_counts (N,))."""
    x = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(~np.isfinite(x)) or np.any(x <= 0.0):
        raise DomainError("arguments must be positive and finite")
    xmax = float(np.max(x))
    tail = int(math.ceil(xmax)) + int(14.0 * max(1.0, xmax) ** (1.0 / 3.0)) + 24
    need = max(nmax + 2, tail)
    jj = bessel_j_block(need + 1, x)
    lg = np.log(0.5 * x) + EULER_GAMMA
    s0 = np.zeros_like(x)
    sign = 1.0
    for m in range(1, need // 2 + 1):
        s0 += sign * jj[2 * m] / m
        sign = -sign
    y0 = (2.0 / math.pi) * lg * jj[0] + (4.0 / math.pi) * s0
    s1 = np.zeros_like(x)
    sign = 1.0
    for m in range(1, need // 2):
        s1 += sign * (jj[2 * m - 1] - jj[2 * m + 1]) / (2.0 * m)
        sign = -sign
    y1 = (2.0 / math.pi) * (lg * jj[1] - jj[0] / x) - (4.0 / math.pi) * s1

    out = np.empty((nmax + 1, x.size))
    out[0] = y0
    if nmax >= 1:
        out[1] = y1
    nvalid = np.full(x.size, nmax + 1, dtype=int)
    for k in range(1, nmax):
        dead = nvalid <= k  # columns that overflowed earlier stay at +/-inf
        with np.errstate(invalid="ignore", over="ignore"):
            nxt = (2.0 * k / x) * out[k] - out[k - 1]
        blow = (~dead) & (np.abs(nxt) > 1e280)
        nvalid[blow] = k + 1
        nxt[blow] = np.copysign(np.inf, nxt[blow])
        if np.any(dead):
            nxt[dead] = np.copysign(np.inf, out[k][dead])
        out[k + 1] = nxt
    return out, nvalid


# ----------------------------------------------------------------------
# Y_n, used only by the second-kind radial Mathieu series


def bessel_y_block(nmax, x):
    """Y_k(x) for k = 0..nmax at a scalar x > 0.

    Y_0 and Y_1 come from the Neumann series in J (stable at every x in the
    ranges used here); higher orders by upward recurrence, which is the
    dominant direction for Y. Returns (values, n_valid): entries at index
    >= n_valid overflowed the recurrence and are set to +/-inf.
    """
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError("argument must be positive and finite")
    tail = int(math.ceil(x)) + int(14.0 * max(1.0, x) ** (1.0 / 3.0)) + 24
    need = max(nmax + 2, tail)
    jj = bessel_j_block(need + 1, np.array([x]))[:, 0]
    lg = math.log(0.5 * x) + EULER_GAMMA
    s0 = 0.0
    sign = 1.0
    for m in range(1, need // 2 + 1):
        s0 += sign * jj[2 * m] / m
        sign = -sign
    y0 = (2.0 / math.pi) * lg * jj[0] + (4.0 / math.pi) * s0
    s1 = 0.0
    sign = 1.0
    for m in range(1, need // 2):
        s1 += sign * (jj[2 * m - 1] - jj[2 * m + 1]) / (2.0 * m)
        sign = -sign
    y1 = (2.0 / math.pi) * (lg * jj[1] - jj[0] / x) - (4.0 / math.pi) * s1

    out = np.empty(nmax + 1)
    out[0] = y0
    if nmax >= 1:
        out[1] = y1
    n_valid = nmax + 1
    for k in range(1, nmax):
        nxt = (2.0 * k / x) * out[k] - out[k - 1]
        if abs(nxt) > 1e280:
            out[k + 1:] = math.copysign(math.inf, nxt)
            n_valid = k + 1
            break
        out[k + 1] = nxt
    return out, n_valid


# ----------------------------------------------------------------------
# spherical j_n


def _sph_small(n, x):
    """Ascending series of j_n; callers keep x^2/2 <= 2n+3 so terms
    decrease from the start."""
    ldf = 0.0  # log double factorial (2n+1)!!
    for m in range(1, 2 * n + 2, 2):
        ldf += math.log(m)
    with np.errstate(divide="ignore"):
        pref = np.exp(n * np.log(np.where(x > 0, x, 1.0)) - ldf)
    pref = np.where(x > 0, pref, 1.0 if n == 0 else 0.0)
    q = -0.5 * x * x
    term = np.ones_like(x)
    s = np.ones_like(x)
    for k in range(1, 80):
        term = term * q / (k * (2.0 * n + 2.0 * k + 1.0))
        s += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(s)):
            break
    return pref * s


def _sph_miller_block(nmax, x):
    """j_k(x), k = 0..nmax, normalized by sum (2k+1) j_k(x)^2 = 1."""
    xmax = float(np.max(x))
    base = max(nmax, int(math.ceil(xmax)))
    start = base + int(14.0 * max(1.0, xmax) ** (1.0 / 3.0)) + 22
    inv_x = 1.0 / x
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-155)
    ssq = (2.0 * start + 1.0) * jc * jc
    out = np.zeros((nmax + 1, x.size))
    # rescale threshold whose square still fits in double range
    big_cap = 1e150
    for k in range(start, 0, -1):
        jm = (2.0 * k + 1.0) * inv_x * jc - jp
        jp = jc
        jc = jm
        km1 = k - 1
        if km1 <= nmax:
            out[km1] = jc
        ssq += (2.0 * km1 + 1.0) * jc * jc
        big = np.abs(jc) > big_cap
        if np.any(big):
            jc = np.where(big, jc * 1e-150, jc)
            jp = np.where(big, jp * 1e-150, jp)
            ssq = np.where(big, ssq * 1e-300, ssq)
            out[:, big] *= 1e-150
    # seed sign survives downward recurrence and j_start(x) > 0 in the decay
    # zone, so the positive square root carries the right orientation
    return out / np.sqrt(ssq)


def sph_bessel_j(n, x):
    """Spherical j_n(x) for x >= 0 (x = 0 returned by the continuity limit)."""
    n = int(n)
    if n < 0:
        raise DomainError("order must be >= 0")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("argument must be finite")
    if np.any(x < 0.0):
        raise DomainError("argument must be >= 0")
    scalar = x.ndim == 0
    xf = np.atleast_1d(x).astype(float).ravel()
    out = np.empty_like(xf)

    small = xf < (0.5 if n <= 2 else min(_SERIES_CAP, 2.0 * math.sqrt(n + 1.5)))
    xs = xf[small]
    if xs.size:
        out[small] = _sph_small(n, xs)
    xl = xf[~small]
    if xl.size:
        if n == 0:
            out[~small] = np.sin(xl) / xl
        elif n == 1:
            out[~small] = np.sin(xl) / (xl * xl) - np.cos(xl) / xl
        elif n == 2:
            out[~small] = (3.0 / (xl * xl) - 1.0) * np.sin(xl) / xl - 3.0 * np.cos(xl) / (xl * xl)
        else:
            out[~small] = _sph_miller_block(n, xl)[n]
    if scalar:
        return float(out.reshape(x.shape))
    return out.reshape(np.shape(x))


def sph_bessel_j_prime(n, x):
    """j_n'(x) via j_{n-1} - ((n+1)/x) j_n; x > 0 except the n=1 limit."""
    n = int(n)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xf = np.atleast_1d(x).astype(float).ravel()
    out = np.empty_like(xf)
    pos = xf > 0.0
    xs = xf[pos]
    if n == 0:
        out[pos] = -np.atleast_1d(sph_bessel_j(1, xs))
        out[~pos] = 0.0
    else:
        if xs.size:
            out[pos] = sph_bessel_j(n - 1, xs) - ((n + 1.0) / xs) * sph_bessel_j(n, xs)
        out[~pos] = 1.0 / 3.0 if n == 1 else 0.0
    if scalar:
        return float(out.reshape(x.shape))
    return out.reshape(np.shape(x))


def _sph_second(n, x, j=None, jp=None):
    if j is None:
        j = sph_bessel_j(n, x)
    if jp is None:
        jp = sph_bessel_j_prime(n, x)
    return -2.0 * jp / x - (1.0 - n * (n + 1.0) / (x * x)) * j


# ----------------------------------------------------------------------
# Kapteyn's bound


def kapteyn_rhs(nu, x):
    """x^nu exp(nu sqrt(1-x^2)) / (1 + sqrt(1-x^2))^nu for x in (0, 1)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0) or np.any(x >= 1.0):
        raise DomainError("argument must lie strictly inside (0, 1)")
    if nu <= 0.0:
        raise DomainError("order must be positive")
    u = np.sqrt(1.0 - x * x)
    val = np.exp(nu * (np.log(x) + u - np.log1p(u)))
    if np.ndim(x) == 0:
        return float(val)
    return val


# ----------------------------------------------------------------------
# zeros


@dataclass(frozen=True)
class ZeroSpec:
    """k-th positive zero of J_n / J_n' / J_n' + h J_n (or the spherical
    analogs): kind in {"function", "derivative", "robin"}, family in
    {"cylindrical", "spherical"}."""

    n: int
    k: int
    kind: str = "function"
    family: str = "cylindrical"
    h: float | None = None

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("order must be >= 0")
        if self.k < 1:
            raise DomainError("zero index must be >= 1")
        if self.kind not in ("function", "derivative", "robin"):
            raise DomainError(f"unknown zero kind {self.kind!r}")
        if self.family not in ("cylindrical", "spherical"):
            raise DomainError(f"unknown family {self.family!r}")
        if self.kind == "robin" and not (self.h is not None and self.h > 0.0):
            raise DomainError("robin zeros require h > 0")


def mcmahon_seed(nu, k):
    """Fixed-order, large-k seed for the k-th zero of J_nu."""
    beta = (k + 0.5 * nu - 0.25) * math.pi
    return beta - (4.0 * nu * nu - 1.0) / (8.0 * beta)


def olver_seed(nu, k):
    """Large-order seed for the k-th zero of J_nu."""
    d = airy_delta(k)
    t = nu ** (1.0 / 3.0)
    return (
        nu
        + d * t
        + 0.3 * d * d / t
        + (5.0 - d ** 3) / (350.0 * nu)
        - (479.0 * d ** 4 + 20.0 * d) / (63000.0 * nu * t * t)
    )


def _fam_funcs(family):
    if family == "cylindrical":
        return bessel_j, bessel_j_prime, _jn_second
    return sph_bessel_j, sph_bessel_j_prime, _sph_second


def _refine_root(f, fp, lo, hi):
    """Bisection to ~1e-6 width, then safeguarded Newton to full precision."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    scale = max(1.0, abs(hi))
    for _ in range(100):
        if hi - lo <= 1e-6 * scale:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    x = 0.5 * (lo + hi)
    for _ in range(100):
        fx = f(x)
        dfx = fp(x)
        if dfx == 0.0:
            break
        step = fx / dfx
        xn = x - step
        if not (lo <= xn <= hi):
            xn = 0.5 * (lo + hi)
            if f(xn) * flo < 0.0:
                hi = xn
            else:
                lo = xn
        if abs(xn - x) <= 1e-15 * scale:
            return xn
        x = xn
    return x


_zero_cache: dict[tuple, list] = {}
_zero_lock = threading.Lock()


def _scan_bracket(f, start, step, limit=1e6):
    x0 = start
    f0 = f(x0)
    while f0 == 0.0:
        x0 += 1e-9
        f0 = f(x0)
    x1 = x0 + step
    while x1 < limit:
        f1 = f(x1)
        if f0 * f1 <= 0.0:
            return x0, x1
        x0, f0 = x1, f1
        x1 = x0 + step
    raise BracketError("scan found no sign change (asymptotic seed suspect)")


def _function_zeros(n, kmax, family):
    """First kmax positive zeros of J_n (or j_n), strictly increasing."""
    fn, fpn, _ = _fam_funcs(family)
    nu = n + 0.5 if family == "spherical" else float(n)

    def f(x):
        return fn(n, x)

    def fp(x):
        return fpn(n, x)

    # direct McMahon path once its first correction is comfortably small
    def trusted(k):
        beta = (k + 0.5 * nu - 0.25) * math.pi
        return (4.0 * nu * nu - 1.0) / (8.0 * beta) < 0.6 and k >= 1

    zeros: list[float] = []
    k = 1
    # sequential scan while McMahon cannot be trusted
    start = 0.3 if nu < 0.6 else nu
    step = max(0.5, min(math.pi / 4.0, 0.35 * max(nu, 1.0) ** (1.0 / 3.0)))
    x_from = start
    while k <= kmax and not trusted(k):
        lo, hi = _scan_bracket(f, x_from, step)
        z = _refine_root(f, fp, lo, hi)
        zeros.append(z)
        x_from = z + 0.25 * step
        k += 1
    if k <= kmax:
        ks = np.arange(k, kmax + 1, dtype=float)
        beta = (ks + 0.5 * nu - 0.25) * math.pi
        seeds = beta - (4.0 * nu * nu - 1.0) / (8.0 * beta)
        x = seeds.copy()
        for _ in range(6):
            x = x - fn(n, x) / fpn(n, x)
        # verify each root against its bracket; fall back per-root on failure
        good = np.abs(x - seeds) < 0.45 * math.pi
        for i in np.nonzero(~good)[0]:
            x[i] = _refine_root(f, fp, seeds[i] - 0.45 * math.pi, seeds[i] + 0.45 * math.pi)
        zeros.extend(x.tolist())
    zs = np.asarray(zeros)
    if np.any(np.diff(zs) <= 0.0):
        raise BracketError(f"zero list of order {n} not strictly increasing")
    return zeros


def _derivative_zeros(n, kmax, family):
    fn, fpn, f2n = _fam_funcs(family)
    if n == 0:
        # J_0' = -J_1 (and j_0' = -j_1): reuse the order-1 function zeros
        return _function_zeros(1, kmax, family)
    nu = n + 0.5 if family == "spherical" else float(n)
    fz = _cached_zeros(n, kmax, "function", family, None)

    def f(x):
        return fpn(n, x)

    def fp(x):
        return f2n(n, x)

    out = []
    lo = nu  # the function still rises at nu, so its derivative is positive
    for k in range(1, kmax + 1):
        hi = fz[k - 1]
        out.append(_refine_root(f, fp, lo, hi))
        lo = hi
    return out


def _robin_zeros(n, kmax, family, h):
    fn, fpn, f2n = _fam_funcs(family)
    dz = _cached_zeros(n, kmax, "derivative", family, None)
    fz = _cached_zeros(n, kmax, "function", family, None)

    def f(x):
        return fpn(n, x) + h * fn(n, x)

    def fp(x):
        return f2n(n, x) + h * fpn(n, x)

    out = []
    for k in range(1, kmax + 1):
        if n == 0:
            # the constant Neumann mode is not a positive zero, so the k-th
            # Robin zero sits between the (k-1)-th extremum and the k-th zero
            lo = 1e-6 if k == 1 else dz[k - 2]
        else:
            lo = dz[k - 1]
        out.append(_refine_root(f, fp, lo, fz[k - 1]))
    return out


def _cached_zeros(n, kmax, kind, family, h):
    key = (family, kind, n, h)
    with _zero_lock:
        have = _zero_cache.get(key, [])
        if len(have) >= kmax:
            return have[:kmax]
    if kind == "function":
        zs = _function_zeros(n, kmax, family)
    elif kind == "derivative":
        zs = _derivative_zeros(n, kmax, family)
    else:
        zs = _robin_zeros(n, kmax, family, h)
    with _zero_lock:
        have = _zero_cache.get(key, [])
        if len(zs) > len(have):
            _zero_cache[key] = zs
    return zs[:kmax]


def zeros_list(n, kmax, kind="function", family="cylindrical", h=None):
    """First kmax zeros as an array (cached, strictly increasing in k)."""
    ZeroSpec(n=n, k=kmax, kind=kind, family=family, h=h)  # validate
    return np.asarray(_cached_zeros(n, kmax, kind, family, h))


def find_zero(spec: ZeroSpec) -> float:
    """The zero described by `spec`; see ZeroSpec."""
    zs = _cached_zeros(spec.n, spec.k, spec.kind, spec.family, spec.h)
    return float(zs[spec.k - 1])
