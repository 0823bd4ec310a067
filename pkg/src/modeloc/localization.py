"""L_p norms over domains and coordinate subdomains, localization ratios,
their closed-form upper bounds, and the rectangle no-localization lower
bound.

Norm ratios use the separated structure of the eigenfunctions: radial and
angular factors are integrated on panels aligned with the oscillation zeros
(so |f|^p stays smooth per panel) with Gauss-Legendre order doubling until
1e-8 relative stability. Elliptic-coordinate weights split into two
separable products; everything is accumulated in log scale because the
angular Mathieu factors reach exp(2 p sqrt(q)).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import mathieu
from .bessel import (
    ZeroSpec,
    bessel_j,
    find_zero,
    sph_bessel_j,
    zeros_list,
)
from .errors import DomainError, InvalidIndexError
from .modes import (
    Ball,
    DIRICHLET,
    Disk,
    Ellipse,
    EllipticAnnulus,
    Rectangle,
    annulus_mode,
    ellipse_mode,
)
from .quadrature import integrate_refined, max_refined, panel_nodes

__all__ = [
    "WholeDomain",
    "RadialCore",
    "OuterShell",
    "AngularSector",
    "SectorComplement",
    "BoxRegion",
    "RatioReport",
    "CriticalExponentWarning",
    "NearRationalWarning",
    "lp_norm",
    "measure_fraction",
    "whispering_core_fraction",
    "ball_core_fraction",
    "whispering_ratio",
    "ball_whispering_ratio",
    "focusing_ratio",
    "fp_scaling_probe",
    "SectorBoundConstants",
    "bouncing_bound",
    "bouncing_ratio",
    "bouncing_sweep",
    "epsilon_lower",
    "rectangle_lower_bound",
    "RectangleBoundReport",
    "box_ratio",
]

INF = math.inf


class CriticalExponentWarning(UserWarning):
    """The requested p sits at the exponent where the limit formula is
    undefined."""


class NearRationalWarning(UserWarning):
    """A squared side ratio is (nearly) rational: eigenvalues degenerate and
    the no-localization hypothesis fails."""


# ----------------------------------------------------------------------
# subdomain descriptions


@dataclass(frozen=True)
class WholeDomain:
    pass


@dataclass(frozen=True)
class RadialCore:
    """|x| < fraction * (outer radius)."""

    fraction: float


@dataclass(frozen=True)
class OuterShell:
    """fraction * (outer radius) < |x| < outer radius."""

    inner_fraction: float


@dataclass(frozen=True)
class AngularSector:
    """Elliptic angle within alpha of the minor axis on both sides:
    theta in (alpha, pi-alpha) union (pi+alpha, 2pi-alpha)."""

    alpha: float


@dataclass(frozen=True)
class SectorComplement:
    """Complement of AngularSector inside the same elliptic domain."""

    alpha: float


@dataclass(frozen=True)
class BoxRegion:
    bounds: tuple


@dataclass(frozen=True)
class RatioReport:
    index: tuple
    p: float
    subdomain: object
    ratio: float
    bound: float | None
    measure_fraction: float
    quad_error: float
    eigenvalue: float | None = None
    limit: float | None = None


def whispering_core_fraction(n, alpha):
    """Radius fraction of the core disk that a high-order mode avoids."""
    return (n - n ** (2.0 / 3.0)) / alpha


def ball_core_fraction(n, alpha):
    return ((n + 0.5) - (n + 0.5) ** (2.0 / 3.0)) / alpha


# ----------------------------------------------------------------------
# 1-d radial machinery in the Bessel argument z


def _radial_fn(family, n):
    if family == "cylindrical":
        return lambda z: bessel_j(n, z)
    return lambda z: sph_bessel_j(n, z)


def _radial_edges(family, n, zmax):
    """Panel edges on [0, zmax] aligned with the oscillation zeros."""
    if zmax <= 0.0:
        return np.array([0.0, 0.0])
    kguess = 4
    zs = zeros_list(n, kguess, family=family)
    while zs[-1] < zmax:
        kguess *= 2
        zs = zeros_list(n, kguess, family=family)
    zs = zs[zs < zmax * (1.0 - 1e-14)]
    first = zs[0] if zs.size else zmax
    head_stop = min(first, zmax)
    m = max(1, int(math.ceil(head_stop / 3.0)))
    head = np.linspace(0.0, head_stop, m + 1)
    edges = np.unique(np.concatenate([head, zs, [zmax]]))
    return edges


def _clip_edges(edges, lo, hi):
    inside = edges[(edges > lo) & (edges < hi)]
    return np.unique(np.concatenate([[lo], inside, [hi]]))


def _radial_lp_pow(family, n, p, lo, hi, weight_pow, edges):
    """integral of z^weight_pow * |f_n(z)|^p over [lo, hi]."""
    if hi <= lo:
        return 0.0, 0.0
    f = _radial_fn(family, n)

    def g(z):
        return z**weight_pow * np.abs(f(z)) ** p

    return integrate_refined(g, _clip_edges(edges, lo, hi))


def _radial_max(family, n, lo, hi, edges):
    if hi <= lo:
        return 0.0
    f = _radial_fn(family, n)
    return max_refined(f, _clip_edges(edges, lo, hi))


# ----------------------------------------------------------------------
# angular closed forms


def _abs_trig_power_period(p):
    """integral of |cos u|^p over a full period [0, 2pi]."""
    return 2.0 * math.sqrt(math.pi) * math.gamma((p + 1.0) / 2.0) / math.gamma(
        p / 2.0 + 1.0
    )


def _disk_angular_factor(n, p):
    if p == INF:
        return 1.0
    if n == 0:
        return 2.0 * math.pi
    return _abs_trig_power_period(p)


def _ball_angular_factor(n, l, p):
    """integral over the unit sphere of |P_n^l(cos th) trig(l phi)|^p."""
    from .modes import legendre_pnl

    if p == INF:
        th = np.linspace(0.0, math.pi, 4097)
        return float(np.max(np.abs(legendre_pnl(n, abs(l), np.cos(th)))))
    la = abs(l)
    phi_factor = 2.0 * math.pi if la == 0 else _abs_trig_power_period(p)

    def g(th):
        return np.abs(legendre_pnl(n, la, np.cos(th))) ** p * np.sin(th)

    val, _ = integrate_refined(g, np.linspace(0.0, math.pi, 33))
    return val * phi_factor


# ----------------------------------------------------------------------
# measures


def measure_fraction(domain, region):
    """Closed-form measure(region)/measure(domain) for coordinate regions."""
    if isinstance(region, WholeDomain):
        return 1.0
    if isinstance(domain, Disk) and isinstance(region, RadialCore):
        return region.fraction**2
    if isinstance(domain, Disk) and isinstance(region, OuterShell):
        return 1.0 - region.inner_fraction**2
    if isinstance(domain, Ball) and isinstance(region, RadialCore):
        return region.fraction**3
    if isinstance(domain, Ball) and isinstance(region, OuterShell):
        return 1.0 - region.inner_fraction**3
    if isinstance(domain, (Ellipse, EllipticAnnulus)) and isinstance(
        region, (AngularSector, SectorComplement)
    ):
        r1, r2 = domain.r_inner, domain.r_outer
        ir = (math.sinh(2.0 * r2) - 2.0 * r2 - math.sinh(2.0 * r1) + 2.0 * r1) / 4.0
        a = region.alpha
        # quarter-range contributions, complement side first
        comp = a * ir + (r2 - r1) * (a / 2.0 - math.sin(2.0 * a) / 4.0)
        total = (math.pi / 2.0) * ir + (r2 - r1) * (math.pi / 4.0)
        frac_comp = comp / total
        if isinstance(region, SectorComplement):
            return frac_comp
        return 1.0 - frac_comp
    if isinstance(domain, Rectangle) and isinstance(region, BoxRegion):
        out = 1.0
        for (a, b), li in zip(region.bounds, domain.lengths):
            out *= (b - a) / li
        return out
    if isinstance(domain, Disk) and isinstance(region, BoxRegion):
        area = math.prod(b - a for a, b in region.bounds)
        return area / domain.measure
    raise DomainError(f"no closed-form measure for {type(region).__name__} in "
                      f"{type(domain).__name__}")


# ----------------------------------------------------------------------
# L_p norms


def _region_radial_range(region):
    if isinstance(region, WholeDomain):
        return 0.0, 1.0
    if isinstance(region, RadialCore):
        return 0.0, region.fraction
    if isinstance(region, OuterShell):
        return region.inner_fraction, 1.0
    raise DomainError(f"unsupported region {type(region).__name__}")


def _circular_norm(mode, region, p, family):
    domain = mode.domain
    dim = domain.dim
    alpha = mode.parameter
    n = mode.extra["n"]
    flo, fhi = _region_radial_range(region)
    zlo, zhi = alpha * flo, alpha * fhi
    edges = _radial_edges(family, n, alpha)
    if p == INF:
        rad = _radial_max(family, n, zlo, zhi, edges)
        ang = _disk_angular_factor(n, p) if dim == 2 else _ball_angular_factor(
            n, mode.index[2], p
        )
        return rad * ang, 0.0
    w = dim - 1
    val, err = _radial_lp_pow(family, n, p, zlo, zhi, w, edges)
    ang = (
        _disk_angular_factor(n, p)
        if dim == 2
        else _ball_angular_factor(n, mode.index[2], p)
    )
    scale = (domain.radius / alpha) ** dim
    total = val * ang * scale
    return total ** (1.0 / p), err / max(val, 1e-300) / p


def _generic_circular_norm(mode, region, p):
    """Fallback for modes carrying arbitrary radial/angular callables."""
    domain = mode.domain
    dim = domain.dim
    flo, fhi = _region_radial_range(region)
    rlo, rhi = domain.radius * flo, domain.radius * fhi
    redges = np.linspace(rlo, rhi, 33)
    if p == INF:
        rad = max_refined(mode.radial, redges)
        tt = np.linspace(0.0, 2.0 * math.pi, 2048, endpoint=False)
        return rad * float(np.max(np.abs(mode.angular(tt)))), 0.0
    w = dim - 1

    def g(r):
        return r**w * np.abs(mode.radial(r)) ** p

    rv, rerr = integrate_refined(g, redges)
    if dim == 2:
        def h(t):
            return np.abs(mode.angular(t)) ** p

        av, _ = integrate_refined(h, np.linspace(0.0, 2.0 * math.pi, 17))
    else:
        raise DomainError("generic ball norms are not supported")
    return (rv * av) ** (1.0 / p), rerr / max(rv, 1e-300) / p


def _theta_intervals(region):
    if isinstance(region, WholeDomain):
        return [(0.0, 0.5 * math.pi)]
    if isinstance(region, AngularSector):
        return [(region.alpha, 0.5 * math.pi)]
    if isinstance(region, SectorComplement):
        return [(0.0, region.alpha)]
    raise DomainError(f"unsupported region {type(region).__name__}")


def _kink_edges(f, base):
    """Insert approximate sign-change locations of f into the panel edges."""
    lo, hi = base[0], base[-1]
    x = np.linspace(lo, hi, 512)
    v = f(x)
    s = np.signbit(v[:-1]) != np.signbit(v[1:])
    cuts = []
    for idx in np.nonzero(s)[0]:
        a, b = x[idx], x[idx + 1]
        fa = v[idx]
        for _ in range(40):
            m = 0.5 * (a + b)
            fm = float(f(np.array([m]))[0])
            if fa * fm <= 0.0:
                b = m
            else:
                a, fa = m, fm
        cuts.append(0.5 * (a + b))
    return np.unique(np.concatenate([base, cuts])) if cuts else base


def _log_elliptic_norm_p(mode, region, p):
    """log of the p-th power of the norm over the region; also an error
    estimate on that log."""
    domain = mode.domain
    r1, r2 = domain.r_inner, domain.r_outer
    a = domain.focal

    tgrid = np.linspace(0.0, 0.5 * math.pi, 2048)
    amax = float(np.max(np.abs(mode.angular(tgrid))))
    rgrid = np.linspace(r1, r2, 1024)
    rmax = float(np.max(np.abs(mode.radial(rgrid))))

    smooth = float(p).is_integer() and int(p) % 2 == 0

    r_edges = np.linspace(r1, r2, 41)
    if not smooth:
        r_edges = _kink_edges(lambda r: mode.radial(r), r_edges)

    def radf(weighted):
        def g(r):
            base = np.abs(mode.radial(r) / rmax) ** p
            return base * np.sinh(r) ** 2 if weighted else base

        return integrate_refined(g, r_edges)

    ir1, er1 = radf(False)
    ir2, er2 = radf(True)

    total = 0.0
    err = 0.0
    for lo, hi in _theta_intervals(region):
        t_edges = np.linspace(lo, hi, max(9, int(math.ceil((hi - lo) / (math.pi / 64.0))) + 1))
        if not smooth:
            t_edges = _kink_edges(lambda t: mode.angular(t), t_edges)

        def ang(weighted):
            def g(t):
                base = np.abs(mode.angular(t) / amax) ** p
                return base * np.sin(t) ** 2 if weighted else base

            return integrate_refined(g, t_edges)

        ia1, ea1 = ang(False)
        ia2, ea2 = ang(True)
        total += ir2 * ia1 + ir1 * ia2
        err += er2 * ia1 + ir2 * ea1 + er1 * ia2 + ir1 * ea2
    val = 4.0 * a * a * total
    logv = math.log(val) + p * (math.log(amax) + math.log(rmax))
    return logv, err / max(total, 1e-300)


def _elliptic_norm(mode, region, p):
    if p == INF:
        tmax = 0.0
        tgrid_all = []
        for lo, hi in _theta_intervals(region):
            tt = np.linspace(lo, hi, 4096)
            tmax = max(tmax, float(np.max(np.abs(mode.angular(tt)))))
        rr = np.linspace(mode.domain.r_inner, mode.domain.r_outer, 2048)
        rmax = float(np.max(np.abs(mode.radial(rr))))
        return tmax * rmax, 0.0
    logv, relerr = _log_elliptic_norm_p(mode, region, p)
    return math.exp(logv / p), relerr / p


def _interval_trig_lp(kind, w, a, b, p):
    """integral of |sin(w x)|^p (kind 'sin') or |cos(w x)|^p over [a, b]."""
    if w == 0.0:
        if kind == "sin":
            return 0.0
        return b - a
    if p == 2.0:
        osc = (math.sin(2.0 * w * b) - math.sin(2.0 * w * a)) / (4.0 * w)
        half = 0.5 * (b - a)
        return half - osc if kind == "sin" else half + osc

    if p == 1.0:
        def g_abs_sin(t):
            m = math.floor(t / math.pi)
            return 2.0 * m + 1.0 - math.cos(t - m * math.pi)

        shift = 0.0 if kind == "sin" else 0.5 * math.pi
        return (g_abs_sin(w * b + shift) - g_abs_sin(w * a + shift)) / w

    # general p: panels between the kinks of |trig|
    off = 0.0 if kind == "sin" else 0.5 * math.pi
    m_lo = math.ceil((w * a - off) / math.pi)
    m_hi = math.floor((w * b - off) / math.pi)
    kinks = [(off + m * math.pi) / w for m in range(m_lo, m_hi + 1)]
    edges = np.unique(np.concatenate([[a], kinks, [b]])) if kinks else np.array([a, b])
    fun = np.sin if kind == "sin" else np.cos

    def g(x):
        return np.abs(fun(w * x)) ** p

    val, _ = integrate_refined(g, edges)
    return val


def _interval_trig_max(kind, w, a, b):
    if w == 0.0:
        return 0.0 if kind == "sin" else 1.0
    off = 0.5 * math.pi if kind == "sin" else 0.0
    m_lo = math.ceil((w * a - off) / math.pi)
    m_hi = math.floor((w * b - off) / math.pi)
    if m_hi >= m_lo:
        return 1.0
    fun = math.sin if kind == "sin" else math.cos
    return max(abs(fun(w * a)), abs(fun(w * b)))


def _rectangle_norm(mode, region, p):
    domain = mode.domain
    kind = "sin" if mode.extra["fun"] == "sin" else "cos"
    if isinstance(region, WholeDomain):
        bounds = tuple((0.0, li) for li in domain.lengths)
    elif isinstance(region, BoxRegion):
        bounds = region.bounds
    else:
        raise DomainError(f"unsupported region {type(region).__name__}")
    out = 1.0
    for nv, li, (a, b) in zip(mode.index, domain.lengths, bounds):
        w = math.pi * nv / li
        if p == INF:
            out *= _interval_trig_max(kind, w, a, b)
        else:
            out *= _interval_trig_lp(kind, w, a, b, p)
    if p == INF:
        return out, 0.0
    return out ** (1.0 / p), 0.0


def _box_norm_in_disk(mode, region, p):
    (x0, x1), (y0, y1) = region.bounds
    base_x = np.linspace(x0, x1, 17)
    base_y = np.linspace(y0, y1, 17)
    if p == INF:
        gx, _ = panel_nodes(base_x, 48)
        gy, _ = panel_nodes(base_y, 48)
        xx, yy = np.meshgrid(gx, gy, indexing="ij")
        pts = np.stack([xx.ravel(), yy.ravel()], axis=1)
        return float(np.max(np.abs(mode.evaluate(pts)))), 0.0
    prev = None
    order = 12
    for _ in range(7):
        gx, wx = panel_nodes(base_x, order)
        gy, wy = panel_nodes(base_y, order)
        xx, yy = np.meshgrid(gx, gy, indexing="ij")
        pts = np.stack([xx.ravel(), yy.ravel()], axis=1)
        vals = np.abs(mode.evaluate(pts)) ** p
        cur = float(wx @ vals.reshape(len(gx), len(gy)) @ wy)
        if prev is not None and abs(cur - prev) <= 1e-8 * max(abs(cur), 1e-300):
            return cur ** (1.0 / p), abs(cur - prev) / max(cur, 1e-300) / p
        prev = cur
        order *= 2
    return prev ** (1.0 / p), 0.0


def lp_norm(mode, region, p):
    """L_p norm of the mode over the region (p >= 1 or math.inf)."""
    if p != INF and not p >= 1.0:
        raise DomainError("p must be >= 1 or infinity")
    domain = mode.domain
    if isinstance(domain, Disk):
        if isinstance(region, BoxRegion):
            return _box_norm_in_disk(mode, region, p)[0]
        if mode.label == "disk":
            return _circular_norm(mode, region, p, "cylindrical")[0]
        return _generic_circular_norm(mode, region, p)[0]
    if isinstance(domain, Ball):
        return _circular_norm(mode, region, p, "spherical")[0]
    if isinstance(domain, (Ellipse, EllipticAnnulus)):
        return _elliptic_norm(mode, region, p)[0]
    if isinstance(domain, Rectangle):
        return _rectangle_norm(mode, region, p)[0]
    raise DomainError(f"unsupported domain {type(domain).__name__}")


# ----------------------------------------------------------------------
# whispering-gallery ratios


def _zero_spec(bc, n, k, family):
    h = bc.h if bc.kind == "robin" else None
    return ZeroSpec(n=n, k=k, kind=bc.zero_kind, family=family, h=h)


def whispering_ratio(radius, bc, n, k, p) -> RatioReport:
    """Norm fraction of a disk mode inside its avoided core, with the
    closed-form decay bound (unit constant)."""
    if n < 1:
        raise InvalidIndexError("whispering ratios need n >= 1")
    alpha = find_zero(_zero_spec(bc, n, k, "cylindrical"))
    dn = n - n ** (2.0 / 3.0)
    frac = dn / alpha
    edges = _radial_edges("cylindrical", n, alpha)
    if p == INF:
        num = _radial_max("cylindrical", n, 0.0, dn, edges)
        den = _radial_max("cylindrical", n, 0.0, alpha, edges)
        ratio, err = num / den, 0.0
        invp = 0.0
    else:
        num, e1 = _radial_lp_pow("cylindrical", n, p, 0.0, dn, 1, edges)
        den, e2 = _radial_lp_pow("cylindrical", n, p, 0.0, alpha, 1, edges)
        ratio = (num / den) ** (1.0 / p)
        err = (e1 / max(num, 1e-300) + e2 / den) / p
        invp = 1.0 / p
    bound = n ** (1.0 / 3.0 + 2.0 / 3.0 * invp) * 2.0 ** (-(n ** (1.0 / 3.0)) / 3.0)
    return RatioReport(
        index=(n, k),
        p=p,
        subdomain=RadialCore(frac),
        ratio=ratio,
        bound=bound,
        measure_fraction=frac**2,
        quad_error=err,
        eigenvalue=(alpha / radius) ** 2,
    )


def ball_whispering_ratio(radius, bc, n, k, p) -> RatioReport:
    if n < 1:
        raise InvalidIndexError("whispering ratios need n >= 1")
    alpha = find_zero(_zero_spec(bc, n, k, "spherical"))
    nu = n + 0.5
    sn = nu - nu ** (2.0 / 3.0)
    frac = sn / alpha
    edges = _radial_edges("spherical", n, alpha)
    if p == INF:
        num = _radial_max("spherical", n, 0.0, sn, edges)
        den = _radial_max("spherical", n, 0.0, alpha, edges)
        ratio, err = num / den, 0.0
        invp = 0.0
    else:
        num, e1 = _radial_lp_pow("spherical", n, p, 0.0, sn, 2, edges)
        den, e2 = _radial_lp_pow("spherical", n, p, 0.0, alpha, 2, edges)
        ratio = (num / den) ** (1.0 / p)
        err = (e1 / max(num, 1e-300) + e2 / den) / p
        invp = 1.0 / p
    bound = nu ** (1.0 / 3.0 + 2.0 / 3.0 * invp) * math.exp(-(nu ** (1.0 / 3.0)) / 3.0)
    return RatioReport(
        index=(n, k),
        p=p,
        subdomain=RadialCore(frac),
        ratio=ratio,
        bound=bound,
        measure_fraction=frac**3,
        quad_error=err,
        eigenvalue=(alpha / radius) ** 2,
    )


# ----------------------------------------------------------------------
# focusing ratios


def focusing_limit(dim, p, inner):
    """Limit of the outer-shell norm fraction as the radial index grows."""
    crit = 4.0 if dim == 2 else 3.0
    if p == crit:
        warnings.warn(
            f"the limit is undefined at the critical exponent p = {crit:g}",
            CriticalExponentWarning,
            stacklevel=2,
        )
        return None
    if p == INF or p > crit:
        return 0.0
    expo = 2.0 - p / 2.0 if dim == 2 else 3.0 - p
    return (1.0 - inner**expo) ** (1.0 / p)


def focusing_ratio(dim, bc, n, k, p, inner) -> RatioReport:
    """Outer-shell norm fraction of the unit disk/ball mode (n, k), plus the
    theoretical large-k limit."""
    if dim not in (2, 3):
        raise DomainError("dim must be 2 or 3")
    if not 0.0 < inner < 1.0:
        raise DomainError("inner radius fraction must lie in (0, 1)")
    family = "cylindrical" if dim == 2 else "spherical"
    alpha = find_zero(_zero_spec(bc, n, k, family))
    edges = _radial_edges(family, n, alpha)
    if p == INF:
        num = _radial_max(family, n, inner * alpha, alpha, edges)
        den = _radial_max(family, n, 0.0, alpha, edges)
        ratio, err = num / den, 0.0
    else:
        w = dim - 1
        num, e1 = _radial_lp_pow(family, n, p, inner * alpha, alpha, w, edges)
        den, e2 = _radial_lp_pow(family, n, p, 0.0, alpha, w, edges)
        ratio = (num / den) ** (1.0 / p)
        err = (e1 / max(num, 1e-300) + e2 / den) / p
    return RatioReport(
        index=(n, k),
        p=p,
        subdomain=OuterShell(inner),
        ratio=ratio,
        bound=None,
        measure_fraction=1.0 - inner**dim,
        quad_error=err,
        eigenvalue=alpha * alpha,
        limit=focusing_limit(dim, p, inner),
    )


def fp_scaling_probe(dim, n, p, z_list):
    """Cumulative weighted-norm integrals scaled by their conjectured growth
    power; no convergence is asserted (the sequence oscillates slowly)."""
    crit = 4.0 if dim == 2 else 3.0
    if not p < crit:
        raise DomainError(f"probe needs p < {crit:g}")
    z_list = np.asarray(sorted(float(z) for z in z_list))
    family = "cylindrical" if dim == 2 else "spherical"
    w = dim - 1
    f = _radial_fn(family, n)
    zmax = float(z_list[-1])
    edges = np.unique(np.concatenate([_radial_edges(family, n, zmax), z_list]))

    def g(z):
        return z**w * np.abs(f(z)) ** p

    out = []
    acc = 0.0
    lo = 0.0
    for z in z_list:
        seg = edges[(edges >= lo) & (edges <= z)]
        if seg.size >= 2:
            val, _ = integrate_refined(g, seg)
            acc += val
        power = 2.0 - p / 2.0 if dim == 2 else 3.0 - p
        out.append(acc / z**power)
        lo = z
    return np.asarray(out)


# ----------------------------------------------------------------------
# bouncing-ball ratios for elliptic domains


@dataclass(frozen=True)
class SectorBoundConstants:
    """Constants of the exponential sector bound for a given pair index n,
    sector half-opening alpha, and norm exponent p: the proof's interior
    angles beta < gamma, the order-dependent amplitude, the p-dependent
    prefactor, and the decay rate per unit sqrt(eigenvalue)."""

    n: int
    alpha: float
    p: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 0.5 * math.pi:
            raise DomainError("alpha must lie in (0, pi/2)")

    @property
    def beta(self):
        return 0.25 * math.pi + 0.5 * self.alpha

    @property
    def gamma(self):
        return 0.375 * math.pi + 0.25 * self.alpha

    @property
    def amplitude(self):
        return 3.0 * math.sqrt(
            (1.0 + math.sin(self.gamma))
            / math.tan(math.pi / 16.0 - self.alpha / 8.0) ** self.n
        )

    @property
    def prefactor(self):
        invp = 0.0 if self.p == INF else 1.0 / self.p
        return (16.0 * self.alpha / (math.pi - self.alpha / 2.0)) ** invp

    @property
    def decay_rate(self):
        return math.sin(self.beta) - math.sin(self.alpha)

    def bound_at(self, focal, eigenvalue):
        return (
            self.amplitude
            * self.prefactor
            * math.exp(-focal * math.sqrt(eigenvalue) * self.decay_rate)
        )


def bouncing_bound(n, alpha, p, focal, eigenvalue):
    """Closed-form upper bound on the norm fraction outside the sector."""
    return SectorBoundConstants(n, alpha, p).bound_at(focal, eigenvalue)


def _bouncing_report(mode, n_pair, alpha, p) -> RatioReport:
    num, e1 = _elliptic_norm(mode, SectorComplement(alpha), p)
    den, e2 = _elliptic_norm(mode, WholeDomain(), p)
    ratio = num / den
    return RatioReport(
        index=mode.index,
        p=p,
        subdomain=SectorComplement(alpha),
        ratio=ratio,
        bound=bouncing_bound(n_pair, alpha, p, mode.domain.focal, mode.eigenvalue),
        measure_fraction=measure_fraction(mode.domain, SectorComplement(alpha)),
        quad_error=e1 + e2,
        eigenvalue=mode.eigenvalue,
    )


def _elliptic_mode(domain, n, k, i, kmax, q_ceiling):
    if isinstance(domain, Ellipse):
        return ellipse_mode(domain.focal, domain.radius, DIRICHLET, n, k, i,
                            kmax=kmax, q_ceiling=q_ceiling)
    return annulus_mode(domain.focal, domain.r_inner, domain.r_outer,
                        DIRICHLET, n, k, i, kmax=kmax, q_ceiling=q_ceiling)


def bouncing_ratio(domain, n, k, i, alpha, p, kmax=mathieu.DEFAULT_KMAX,
                   q_ceiling=4000.0) -> RatioReport:
    """Norm fraction of the (n, k, i) Dirichlet mode outside the sector of
    half-opening alpha around the minor axis, with the exponential bound."""
    if not 0.0 < alpha < 0.5 * math.pi:
        raise DomainError("alpha must lie in (0, pi/2)")
    mode = _elliptic_mode(domain, n, k, i, kmax, q_ceiling)
    return _bouncing_report(mode, n, alpha, p)


def bouncing_sweep(domain, n, i, alpha, p, sqrt_lambda_target=40.0,
                   kmax=mathieu.DEFAULT_KMAX, q_ceiling=None):
    """Reports for k = 1, 2, ... until sqrt(lambda) reaches the target.
    Returns (reports, lambda_threshold) where the threshold is the smallest
    eigenvalue from which `ratio <= bound` holds through the end of the
    sweep (None if it never holds)."""
    if not 0.0 < alpha < 0.5 * math.pi:
        raise DomainError("alpha must lie in (0, pi/2)")
    a = domain.focal
    # the root that crosses the target can overshoot by one radial spacing
    if q_ceiling is None:
        q_ceiling = 1.05 * ((sqrt_lambda_target + 15.0) * a / 2.0) ** 2 + 10.0
    reports = []
    k = 0
    while True:
        k += 1
        mode = _elliptic_mode(domain, n, k, i, kmax, q_ceiling)
        reports.append(_bouncing_report(mode, n, alpha, p))
        if math.sqrt(mode.eigenvalue) >= sqrt_lambda_target:
            break
    lam_threshold = None
    for rep in reversed(reports):
        if rep.ratio <= rep.bound:
            lam_threshold = rep.eigenvalue
        else:
            break
    return reports, lam_threshold


# ----------------------------------------------------------------------
# rectangle no-localization lower bound


def epsilon_lower(a, b):
    """Mode-independent lower bound for the oscillation integrals of
    sin^2/cos^2 over [a, b]; depends only on the width."""
    if not 0.0 <= a < b:
        raise DomainError("need 0 <= a < b")
    w = b - a
    cands = [w / 4.0]
    for m in range(1, int(math.floor(2.0 / w)) + 1):
        cands.append(w / 2.0 - abs(math.sin(m * w)) / (2.0 * m))
    return min(cands)


@dataclass(frozen=True)
class RectangleBoundReport:
    analytic: float
    empirical_min: float
    argmin: tuple
    modes_checked: int
    p: float


def _warn_near_rational(lengths):
    for i in range(len(lengths)):
        for j in range(i + 1, len(lengths)):
            x = (lengths[i] / lengths[j]) ** 2
            # continued-fraction convergents with small denominators
            num, den = _best_rational(x, 50)
            if den <= 50 and abs(x - num / den) < 1e-12:
                warnings.warn(
                    f"squared side ratio {x:.15g} is within 1e-12 of "
                    f"{num}/{den}: eigenvalues are (near) degenerate and the "
                    "no-localization hypothesis fails",
                    NearRationalWarning,
                    stacklevel=3,
                )


def _best_rational(x, max_den):
    """Closest continued-fraction convergent with denominator <= max_den."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    a = x
    for _ in range(64):
        ai = math.floor(a)
        p0, q0, p1, q1 = p1, q1, ai * p1 + p0, ai * q1 + q0
        if q1 > max_den:
            return p0, q0
        frac = a - ai
        if frac < 1e-15:
            return p1, q1
        a = 1.0 / frac
    return p1, q1


def rectangle_lower_bound(lengths, bc, box, p, nmax_sq=400) -> RectangleBoundReport:
    """Analytic positive lower bound for the norm fraction of every product
    mode inside the box, and the empirical minimum over all modes with
    sum(n_i^2) <= nmax_sq."""
    domain = Rectangle(tuple(lengths))
    d = domain.dim
    bounds = tuple(tuple(map(float, b)) for b in box)
    if len(bounds) != d:
        raise DomainError("box dimension mismatch")
    for (a, b), li in zip(bounds, domain.lengths):
        if not 0.0 <= a < b <= li:
            raise DomainError("box must sit inside the rectangle")
    if bc.kind not in ("dirichlet", "neumann"):
        raise DomainError("rectangle bound supports Dirichlet and Neumann")
    _warn_near_rational(domain.lengths)

    analytic = math.pi ** (-d)
    for (a, b), li in zip(bounds, domain.lengths):
        analytic *= ((b - a) / li) ** (1.0 / p - 1.0)
        analytic *= epsilon_lower(math.pi * a / li, math.pi * b / li)

    kind = "sin" if bc.kind == "dirichlet" else "cos"
    n_lo = 1 if bc.kind == "dirichlet" else 0
    n_hi = int(math.floor(math.sqrt(nmax_sq)))

    # per-axis ratio tables
    tables = []
    for (a, b), li in zip(bounds, domain.lengths):
        col = {}
        for nv in range(n_lo, n_hi + 1):
            w = math.pi * nv / li
            num = _interval_trig_lp(kind, w, a, b, p)
            den = _interval_trig_lp(kind, w, 0.0, li, p)
            col[nv] = num / den
        tables.append(col)

    best = math.inf
    argmin = None
    count = 0

    def rec(axis, acc, sumsq, idx):
        nonlocal best, argmin, count
        if axis == d:
            count += 1
            val = acc ** (1.0 / p)
            if val < best:
                best = val
                argmin = tuple(idx)
            return
        for nv in range(n_lo, n_hi + 1):
            s = sumsq + nv * nv
            if s > nmax_sq:
                break
            rec(axis + 1, acc * tables[axis][nv], s, idx + [nv])

    rec(0, 1.0, 0, [])
    return RectangleBoundReport(
        analytic=analytic,
        empirical_min=best,
        argmin=argmin,
        modes_checked=count,
        p=p,
    )


def box_ratio(mode, box_bounds, p=2.0):
    """Norm fraction of a disk mode inside a Cartesian box (compact probe)."""
    num = lp_norm(mode, BoxRegion(tuple(box_bounds)), p)
    den = lp_norm(mode, WholeDomain(), p)
    return num / den
