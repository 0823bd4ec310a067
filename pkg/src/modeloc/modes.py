"""Eigenfunction construction for the five separable domain families:
disk, ball, filled ellipse, confocal elliptical annulus, and rectangle
boxes, together with the boundary-equation solvers that pin down the
spectral parameters.

Every constructed `Mode` is immutable, carries its eigenvalue and spectral
parameter, and evaluates in Cartesian coordinates. Where the eigenfunction
separates, the radial and angular factors are exposed so the localization
module can integrate them directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import mathieu
from .bessel import (
    ZeroSpec,
    bessel_j,
    bessel_j_prime,
    find_zero,
    sph_bessel_j,
    sph_bessel_j_prime,
)
from .errors import (
    ConvergenceError,
    DomainError,
    InvalidIndexError,
    RootScanExhaustedError,
    UnsupportedConditionError,
)

__all__ = [
    "BoundaryCondition",
    "Disk",
    "Ball",
    "Ellipse",
    "EllipticAnnulus",
    "Rectangle",
    "Mode",
    "disk_mode",
    "ball_mode",
    "ellipse_q_solve",
    "ellipse_mode",
    "annulus_q_solve",
    "annulus_mode",
    "rectangle_mode",
    "legendre_pnl",
    "elliptic_coords",
    "helmholtz_residual",
    "boundary_residual",
]


@dataclass(frozen=True)
class BoundaryCondition:
    """dirichlet, neumann, or robin with coupling h > 0."""

    kind: str
    h: float = 0.0

    def __post_init__(self):
        if self.kind not in ("dirichlet", "neumann", "robin"):
            raise DomainError(f"unknown boundary condition {self.kind!r}")
        if self.kind == "robin" and not self.h > 0.0:
            raise DomainError("robin condition requires h > 0")

    @classmethod
    def parse(cls, text, h=0.0):
        return cls(text.strip().lower(), h)

    @property
    def zero_kind(self) -> str:
        return {"dirichlet": "function", "neumann": "derivative", "robin": "robin"}[
            self.kind
        ]


DIRICHLET = BoundaryCondition("dirichlet")
NEUMANN = BoundaryCondition("neumann")


@dataclass(frozen=True)
class Disk:
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise DomainError("radius must be positive")

    dim = 2

    def contains(self, pts):
        return np.hypot(pts[:, 0], pts[:, 1]) < self.radius

    @property
    def measure(self):
        return math.pi * self.radius**2


@dataclass(frozen=True)
class Ball:
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise DomainError("radius must be positive")

    dim = 3

    def contains(self, pts):
        return np.linalg.norm(pts, axis=1) < self.radius

    @property
    def measure(self):
        return 4.0 / 3.0 * math.pi * self.radius**3


@dataclass(frozen=True)
class Ellipse:
    """Filled ellipse of elliptic radius `radius` and focal distance `focal`;
    semi-axes are focal*cosh(radius) and focal*sinh(radius)."""

    focal: float
    radius: float

    def __post_init__(self):
        if not (self.focal > 0.0 and self.radius > 0.0):
            raise DomainError("focal distance and radius must be positive")

    dim = 2
    r_inner = 0.0

    @property
    def r_outer(self):
        return self.radius

    def contains(self, pts):
        a_ = self.focal * math.cosh(self.radius)
        b_ = self.focal * math.sinh(self.radius)
        return (pts[:, 0] / a_) ** 2 + (pts[:, 1] / b_) ** 2 < 1.0

    @property
    def measure(self):
        return math.pi * self.focal**2 * math.cosh(self.radius) * math.sinh(self.radius)


@dataclass(frozen=True)
class EllipticAnnulus:
    focal: float
    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not (self.focal > 0.0 and 0.0 < self.r_inner < self.r_outer):
            raise DomainError("need focal > 0 and 0 < inner radius < outer radius")

    dim = 2

    def contains(self, pts):
        r, _ = elliptic_coords(self.focal, pts)
        return (self.r_inner < r) & (r < self.r_outer)

    @property
    def measure(self):
        def area(r):
            return math.pi * self.focal**2 * math.cosh(r) * math.sinh(r)

        return area(self.r_outer) - area(self.r_inner)


@dataclass(frozen=True)
class Rectangle:
    lengths: tuple

    def __post_init__(self):
        ls = tuple(float(v) for v in self.lengths)
        object.__setattr__(self, "lengths", ls)
        if not 1 <= len(ls) <= 3:
            raise DomainError("rectangle dimension must be 1, 2 or 3")
        if any(v <= 0.0 for v in ls):
            raise DomainError("all side lengths must be positive")

    @property
    def dim(self):
        return len(self.lengths)

    def contains(self, pts):
        ok = np.ones(pts.shape[0], dtype=bool)
        for i, li in enumerate(self.lengths):
            ok &= (pts[:, i] > 0.0) & (pts[:, i] < li)
        return ok

    @property
    def measure(self):
        return math.prod(self.lengths)


@dataclass(frozen=True)
class Mode:
    """A Laplacian eigenfunction: -laplacian(u) = eigenvalue * u with the
    stored boundary condition; `parameter` is the spectral root (a Bessel
    zero, or the Mathieu parameter q). `evaluate` takes Cartesian points of
    shape (N, dim)."""

    domain: object
    bc: BoundaryCondition
    index: tuple
    label: str
    eigenvalue: float
    parameter: float
    _cart: Callable = field(repr=False)
    radial: Callable | None = field(default=None, repr=False)
    angular: Callable | None = field(default=None, repr=False)
    extra: dict = field(default_factory=dict, repr=False)

    def evaluate(self, pts):
        pts = np.asarray(pts, dtype=float)
        if pts.ndim == 1:
            return float(self._cart(pts[None, :])[0])
        return self._cart(pts)

    def max_amplitude(self, grid=96):
        if "max_amp" in self.extra:
            return self.extra["max_amp"]
        return _grid_max(self, grid)


def _grid_max(mode, grid):
    d = mode.domain
    if isinstance(d, Rectangle):
        return 1.0
    if isinstance(d, (Disk, Ball)):
        zs = np.linspace(0.0, mode.parameter, 4 * grid)
        rad = float(np.max(np.abs(mode.radial(zs * d.radius / mode.parameter))))
        if isinstance(d, Disk):
            return rad  # the trig factor peaks at 1
        n, _, l = mode.index
        ct = np.cos(np.linspace(0.0, math.pi, 4 * grid))
        ang = float(np.max(np.abs(legendre_pnl(n, abs(l), ct))))
        return rad * ang
    rr = np.linspace(d.r_inner, d.r_outer, grid)
    tt = np.linspace(0.0, 2.0 * math.pi, 2 * grid, endpoint=False)
    rad = np.abs(mode.radial(rr))
    ang = np.abs(mode.angular(tt))
    return float(np.max(rad) * np.max(ang))


# ----------------------------------------------------------------------
# disk and ball


def disk_mode(radius, bc, n, k, i) -> Mode:
    if n < 0 or k < 1 or i not in (1, 2):
        raise InvalidIndexError(f"bad disk index (n={n}, k={k}, i={i})")
    if n == 0 and i == 2:
        raise InvalidIndexError("the sine branch vanishes identically for n = 0")
    domain = Disk(radius)
    h = bc.h if bc.kind == "robin" else None
    alpha = find_zero(ZeroSpec(n=n, k=k, kind=bc.zero_kind, family="cylindrical", h=h))
    lam = (alpha / radius) ** 2
    angfun = np.cos if i == 1 else np.sin

    def radial(r):
        return bessel_j(n, alpha * np.asarray(r, dtype=float) / radius)

    def angular(phi):
        return angfun(n * np.asarray(phi, dtype=float))

    def cart(pts):
        r = np.hypot(pts[:, 0], pts[:, 1])
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        return radial(r) * angular(phi)

    if n == 0:
        max_amp = 1.0  # J_0 peaks at the origin
    else:
        zpk = min(find_zero(ZeroSpec(n=n, k=1, kind="derivative")), alpha)
        max_amp = abs(bessel_j(n, zpk))
    return Mode(
        domain=domain,
        bc=bc,
        index=(n, k, i),
        label="disk",
        eigenvalue=lam,
        parameter=alpha,
        _cart=cart,
        radial=radial,
        angular=angular,
        extra={"n": n, "max_amp": max_amp},
    )


def legendre_pnl(n, l, x):
    """Associated Legendre P_n^l(x) for 0 <= l <= n (Condon-Shortley phase),
    by the stable degree recurrence."""
    if not 0 <= l <= n:
        raise InvalidIndexError("need 0 <= l <= n")
    x = np.asarray(x, dtype=float)
    pmm = np.ones_like(x)
    if l > 0:
        somx2 = np.sqrt(np.maximum(0.0, (1.0 - x) * (1.0 + x)))
        fact = 1.0
        for _ in range(l):
            pmm = -pmm * fact * somx2
            fact += 2.0
    if n == l:
        return pmm
    pmmp1 = x * (2.0 * l + 1.0) * pmm
    if n == l + 1:
        return pmmp1
    for deg in range(l + 2, n + 1):
        pnn = (x * (2.0 * deg - 1.0) * pmmp1 - (deg + l - 1.0) * pmm) / (deg - l)
        pmm = pmmp1
        pmmp1 = pnn
    return pmmp1


def ball_mode(radius, bc, n, k, l) -> Mode:
    if n < 0 or k < 1 or abs(l) > n:
        raise InvalidIndexError(f"bad ball index (n={n}, k={k}, l={l})")
    domain = Ball(radius)
    h = bc.h if bc.kind == "robin" else None
    alpha = find_zero(ZeroSpec(n=n, k=k, kind=bc.zero_kind, family="spherical", h=h))
    lam = (alpha / radius) ** 2
    la = abs(l)
    azfun = np.cos if l >= 0 else np.sin

    def radial(r):
        return sph_bessel_j(n, alpha * np.asarray(r, dtype=float) / radius)

    def angular_sph(theta, phi):
        return legendre_pnl(n, la, np.cos(theta)) * azfun(la * phi)

    def cart(pts):
        r = np.linalg.norm(pts, axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            ct = np.where(r > 0.0, pts[:, 2] / np.maximum(r, 1e-300), 1.0)
        ct = np.clip(ct, -1.0, 1.0)
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        return radial(r) * legendre_pnl(n, la, ct) * azfun(la * phi)

    return Mode(
        domain=domain,
        bc=bc,
        index=(n, k, l),
        label="ball",
        eigenvalue=lam,
        parameter=alpha,
        _cart=cart,
        radial=radial,
        angular=angular_sph,
        extra={"n": n},
    )


# ----------------------------------------------------------------------
# elliptic domains (Dirichlet only, as the boundary equations are stated)


def elliptic_coords(focal, pts):
    """Map Cartesian points to elliptic (r, theta), r >= 0, theta in [0, 2pi)."""
    z = (pts[:, 0] + 1j * pts[:, 1]) / focal
    w = np.arccosh(z)
    r = np.maximum(w.real, 0.0)
    theta = np.mod(w.imag, 2.0 * math.pi)
    return r, theta


_ELLIPSE_FAMILIES = {
    1: ("ce", 0, 1),  # (family, order offset from n, radial kind)
    2: ("ce", 0, 2),
    3: ("se", 1, 1),
    4: ("se", 1, 2),
}


def _require_dirichlet(bc):
    if bc.kind != "dirichlet":
        raise UnsupportedConditionError(
            "elliptical domains are implemented for the Dirichlet condition only"
        )


def _scan_roots(g, k, q0, q_ceiling, factor, refine_rel=1e-12):
    """Sign-change scan in q with geometric steps, returning the first k
    roots (bisection + secant polish)."""
    roots = []
    q_lo = q0
    f_lo = g(q_lo)
    q_hi = q_lo
    while len(roots) < k:
        q_hi = q_lo * factor
        if q_hi > q_ceiling:
            raise RootScanExhaustedError(
                f"only {len(roots)} roots found below the q ceiling {q_ceiling:g}"
            )
        f_hi = g(q_hi)
        if f_lo == 0.0:
            roots.append(q_lo)
        elif f_lo * f_hi < 0.0:
            roots.append(_polish_root(g, q_lo, q_hi, f_lo, f_hi, refine_rel))
        q_lo, f_lo = q_hi, f_hi
    return roots


def _polish_root(g, lo, hi, flo, fhi, rel):
    for _ in range(200):
        if hi - lo <= rel * hi:
            break
        mid = 0.5 * (lo + hi)
        fm = g(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    # secant polish inside the final bracket
    a, b, fa, fb = lo, hi, flo, fhi
    for _ in range(8):
        if fb == fa:
            break
        c = b - fb * (b - a) / (fb - fa)
        if not (lo <= c <= hi):
            break
        fc = g(c)
        a, fa, b, fb = b, fb, c, fc
        if abs(b - a) <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi) if not (lo <= b <= hi) else b


def ellipse_q_solve(focal, radius, n, k, i, kmax=mathieu.DEFAULT_KMAX,
                    q0=1e-3, q_ceiling=4000.0, factor=1.05):
    """k-th positive root q of the Dirichlet boundary equation of family i
    on the filled ellipse of elliptic radius `radius`."""
    roots = ellipse_q_scan(focal, radius, n, i, k=k, kmax=kmax, q0=q0,
                           q_ceiling=q_ceiling, factor=factor)
    return roots[k - 1]


def _aligned_boundary_fn(order, family, kind, radius, kmax):
    """Boundary value as a function of q with the eigenvector sign aligned
    to the previous evaluation. The global sign convention (value or slope
    at theta = 0) degenerates to rounding noise at large q, which would
    inject phantom sign changes into the root scan; alignment keeps the
    scanned function continuous."""
    import dataclasses

    state = {"prev": None}

    def g(q):
        basis = mathieu.solve_characteristic(order, family, q, kmax)
        prev = state["prev"]
        if prev is not None and float(np.dot(prev, basis.coeffs)) < 0.0:
            basis = dataclasses.replace(basis, coeffs=-basis.coeffs)
        state["prev"] = basis.coeffs
        return mathieu.radial_eval(basis, kind, radius)[0]

    return g


def ellipse_q_scan(focal, radius, n, i, k, kmax=mathieu.DEFAULT_KMAX,
                   q0=1e-3, q_ceiling=4000.0, factor=1.05):
    if i not in _ELLIPSE_FAMILIES:
        raise InvalidIndexError("ellipse family index must be 1..4")
    if n < 0 or k < 1:
        raise InvalidIndexError(f"bad ellipse index (n={n}, k={k})")
    family, off, kind = _ELLIPSE_FAMILIES[i]
    g = _aligned_boundary_fn(n + off, family, kind, radius, kmax)
    return _scan_roots(g, k, q0, q_ceiling, factor)


def ellipse_mode(focal, radius, bc, n, k, i, kmax=mathieu.DEFAULT_KMAX,
                 q_ceiling=4000.0) -> Mode:
    _require_dirichlet(bc)
    domain = Ellipse(focal, radius)
    q = ellipse_q_solve(focal, radius, n, k, i, kmax=kmax, q_ceiling=q_ceiling)
    family, off, kind = _ELLIPSE_FAMILIES[i]
    basis = mathieu.solve_characteristic(n + off, family, q, kmax)
    lam = 4.0 * q / focal**2

    def radial(r):
        return mathieu.radial_eval(basis, kind, r)[0]

    def angular(theta):
        return mathieu.angular_eval(basis, theta)

    def cart(pts):
        r, theta = elliptic_coords(focal, pts)
        return radial(r) * angular(theta)

    _check_radial_root(radial, 0.0, radius)
    return Mode(
        domain=domain,
        bc=bc,
        index=(n, k, i),
        label="ellipse",
        eigenvalue=lam,
        parameter=q,
        _cart=cart,
        radial=radial,
        angular=angular,
        extra={"basis": basis, "kind": kind, "pair_n": n},
    )


def _check_radial_root(radial, r_lo, r_hi):
    rr = np.linspace(r_lo, r_hi, 257)
    prof = np.abs(radial(rr))
    peak = float(np.max(prof))
    if prof[-1] > 1e-8 * peak or (r_lo > 0.0 and prof[0] > 1e-8 * peak):
        raise ConvergenceError(
            "boundary value does not vanish at the solved parameter "
            f"(relative residual {max(prof[0], prof[-1]) / peak:.2e})"
        )


_ANNULUS_FAMILIES = {1: ("ce", 0), 2: ("se", 1)}


def annulus_q_scan(focal, r1, r2, n, i, k, kmax=mathieu.DEFAULT_KMAX,
                   q0=1e-3, q_ceiling=4000.0, factor=1.05):
    if i not in _ANNULUS_FAMILIES:
        raise InvalidIndexError("annulus family index must be 1 or 2")
    if n < 0 or k < 1:
        raise InvalidIndexError(f"bad annulus index (n={n}, k={k})")
    if not 0.0 < r1 < r2:
        raise DomainError("annulus needs 0 < inner radius < outer radius")
    family, off = _ANNULUS_FAMILIES[i]

    def g(q):
        basis = mathieu.solve_characteristic(n + off, family, q, kmax)
        m11 = mathieu.radial_eval(basis, 1, r1)[0]
        m12 = mathieu.radial_eval(basis, 1, r2)[0]
        m21 = mathieu.radial_eval(basis, 2, r1)[0]
        m22 = mathieu.radial_eval(basis, 2, r2)[0]
        return m11 * m22 - m12 * m21

    return _scan_roots(g, k, q0, q_ceiling, factor)


def annulus_q_solve(focal, r1, r2, n, k, i, kmax=mathieu.DEFAULT_KMAX,
                    q0=1e-3, q_ceiling=4000.0, factor=1.05):
    """k-th root of the two-boundary Dirichlet determinant for family i."""
    roots = annulus_q_scan(focal, r1, r2, n, i, k=k, kmax=kmax, q0=q0,
                           q_ceiling=q_ceiling, factor=factor)
    return roots[k - 1]


def annulus_mode(focal, r1, r2, bc, n, k, i, kmax=mathieu.DEFAULT_KMAX,
                 q_ceiling=4000.0) -> Mode:
    _require_dirichlet(bc)
    domain = EllipticAnnulus(focal, r1, r2)
    q = annulus_q_solve(focal, r1, r2, n, k, i, kmax=kmax, q_ceiling=q_ceiling)
    family, off = _ANNULUS_FAMILIES[i]
    basis = mathieu.solve_characteristic(n + off, family, q, kmax)
    lam = 4.0 * q / focal**2
    # null-vector combination: vanishes at r1 exactly, at r2 up to the root
    # residual
    ca = mathieu.radial_eval(basis, 2, r1)[0]
    cb = -mathieu.radial_eval(basis, 1, r1)[0]
    scale = math.hypot(ca, cb)
    ca, cb = ca / scale, cb / scale

    def radial(r):
        return ca * mathieu.radial_eval(basis, 1, r)[0] + cb * mathieu.radial_eval(
            basis, 2, r
        )[0]

    def angular(theta):
        return mathieu.angular_eval(basis, theta)

    def cart(pts):
        r, theta = elliptic_coords(focal, pts)
        return radial(r) * angular(theta)

    _check_radial_root(radial, r1, r2)
    return Mode(
        domain=domain,
        bc=bc,
        index=(n, k, i),
        label="annulus",
        eigenvalue=lam,
        parameter=q,
        _cart=cart,
        radial=radial,
        angular=angular,
        extra={"basis": basis, "coeffs": (ca, cb), "pair_n": n},
    )


# ----------------------------------------------------------------------
# rectangles


def rectangle_mode(lengths, bc, nvec) -> Mode:
    domain = Rectangle(tuple(lengths))
    nvec = tuple(int(v) for v in nvec)
    if len(nvec) != domain.dim:
        raise InvalidIndexError("index length must match the dimension")
    if bc.kind == "dirichlet":
        if any(v < 1 for v in nvec):
            raise InvalidIndexError("Dirichlet rectangle indices must be >= 1")
        fun = np.sin
    elif bc.kind == "neumann":
        if any(v < 0 for v in nvec):
            raise InvalidIndexError("Neumann rectangle indices must be >= 0")
        fun = np.cos
    else:
        raise UnsupportedConditionError(
            "rectangle modes are implemented for Dirichlet and Neumann only"
        )
    ls = domain.lengths
    lam = math.pi**2 * sum((nv / li) ** 2 for nv, li in zip(nvec, ls))

    def cart(pts):
        out = np.ones(pts.shape[0])
        for i, (nv, li) in enumerate(zip(nvec, ls)):
            out = out * fun(math.pi * nv * pts[:, i] / li)
        return out

    return Mode(
        domain=domain,
        bc=bc,
        index=nvec,
        label="rectangle",
        eigenvalue=lam,
        parameter=math.sqrt(lam),
        _cart=cart,
        extra={"fun": "sin" if bc.kind == "dirichlet" else "cos"},
    )


# ----------------------------------------------------------------------
# residual diagnostics


def _interior_points(domain, count, rng, margin):
    d = domain.dim
    if isinstance(domain, Rectangle):
        lows = np.full(d, margin) * np.asarray(domain.lengths)
        highs = (1.0 - margin) * np.asarray(domain.lengths)
        return rng.uniform(lows, highs, size=(count, d))
    if isinstance(domain, Disk):
        box = domain.radius
    elif isinstance(domain, Ball):
        box = domain.radius
    else:
        box = domain.focal * math.cosh(domain.r_outer)
    pts = np.empty((0, d))
    while pts.shape[0] < count:
        cand = rng.uniform(-box, box, size=(4 * count, d))
        if isinstance(domain, (Disk, Ball)):
            keep = np.linalg.norm(cand, axis=1) < (1.0 - margin) * domain.radius
        else:
            r, _ = elliptic_coords(domain.focal, cand)
            lo = domain.r_inner
            span = domain.r_outer - lo
            keep = (r > lo + margin * span) & (r < domain.r_outer - margin * span)
        pts = np.vstack([pts, cand[keep]])
    return pts[:count]


def helmholtz_residual(mode, npts=100, seed=12345):
    """Max |laplacian(u) + lambda u| over random interior points, from the
    second-order central stencil, scaled by lambda * max|u|. The step
    balances the h^2 truncation term (~(0.008)^2 lambda/12 per direction)
    against subtraction noise."""
    lam = mode.eigenvalue
    h = min(1e-4, 0.008 / math.sqrt(max(lam, 1e-12)))
    rng = np.random.default_rng(seed)
    d = mode.domain.dim
    pts = _interior_points(mode.domain, npts, rng, margin=0.02)
    stencil = [pts]
    for ax in range(d):
        for s in (-1.0, 1.0):
            shifted = pts.copy()
            shifted[:, ax] += s * h
            stencil.append(shifted)
    vals = [mode.evaluate(p) for p in stencil]
    lap = (np.sum(vals[1:], axis=0) - 2.0 * d * vals[0]) / (h * h)
    resid = np.abs(lap + lam * vals[0])
    return float(np.max(resid) / (lam * mode.max_amplitude()))


def _boundary_samples(domain, m):
    if isinstance(domain, Disk):
        phi = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
        pts = domain.radius * np.stack([np.cos(phi), np.sin(phi)], axis=1)
        normals = pts / domain.radius
        return [(pts, normals)]
    if isinstance(domain, Ball):
        # Fibonacci sphere
        i = np.arange(m) + 0.5
        th = np.arccos(1.0 - 2.0 * i / m)
        ph = math.pi * (1.0 + math.sqrt(5.0)) * i
        pts = domain.radius * np.stack(
            [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=1
        )
        return [(pts, pts / domain.radius)]
    if isinstance(domain, Rectangle):
        out = []
        d = domain.dim
        per = max(2, m // (2 * d))
        rng = np.random.default_rng(7)
        for ax in range(d):
            for side, xval in ((-1.0, 0.0), (1.0, domain.lengths[ax])):
                pts = rng.uniform(0.0, 1.0, size=(per, d)) * np.asarray(domain.lengths)
                pts[:, ax] = xval
                nrm = np.zeros((per, d))
                nrm[:, ax] = side
                out.append((pts, nrm))
        return out
    # elliptic boundaries (Dirichlet only: normals unused)
    out = []
    radii = [domain.r_outer] if isinstance(domain, Ellipse) else [
        domain.r_inner,
        domain.r_outer,
    ]
    th = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
    for r0 in radii:
        x = domain.focal * math.cosh(r0) * np.cos(th)
        y = domain.focal * math.sinh(r0) * np.sin(th)
        out.append((np.stack([x, y], axis=1), None))
    return out


def _normal_derivative(mode, pts, normals):
    dom = mode.domain
    if isinstance(dom, Disk):
        n, _, _ = mode.index
        alpha = mode.parameter
        r = np.hypot(pts[:, 0], pts[:, 1])
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        dr = (alpha / dom.radius) * bessel_j_prime(n, alpha * r / dom.radius)
        return dr * mode.angular(phi)
    if isinstance(dom, Ball):
        n, _, l = mode.index
        alpha = mode.parameter
        r = np.linalg.norm(pts, axis=1)
        ct = np.clip(pts[:, 2] / r, -1.0, 1.0)
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        dr = (alpha / dom.radius) * sph_bessel_j_prime(n, alpha * r / dom.radius)
        la = abs(l)
        az = np.cos(la * phi) if l >= 0 else np.sin(la * phi)
        return dr * legendre_pnl(n, la, ct) * az
    if isinstance(dom, Rectangle):
        fun = math.sin if mode.extra["fun"] == "sin" else math.cos
        dfun = math.cos if mode.extra["fun"] == "sin" else math.sin
        sgn = 1.0 if mode.extra["fun"] == "sin" else -1.0
        out = np.zeros(pts.shape[0])
        for ax in range(dom.dim):
            mask = normals[:, ax] != 0.0
            if not np.any(mask):
                continue
            grad = np.ones(np.count_nonzero(mask))
            for j, (nv, lj) in enumerate(zip(mode.index, dom.lengths)):
                w = math.pi * nv / lj
                xj = pts[mask, j]
                if j == ax:
                    grad = grad * sgn * w * np.array([dfun(w * v) for v in xj])
                else:
                    grad = grad * np.array([fun(w * v) for v in xj])
            out[mask] = grad * normals[mask, ax]
        return out
    raise UnsupportedConditionError("no normal derivative for this domain")


def boundary_residual(mode, m=50):
    """Max boundary-condition residual over m samples per boundary piece,
    relative to the mode amplitude (the Neumann/Robin derivative part is
    additionally scaled by sqrt(lambda)).

    Robin disk/ball modes are pinned by the zeros of f' + h f in the Bessel
    argument, so the combination they satisfy exactly is
    (R/alpha) du/dn + h u; that scaled form is what gets checked."""
    amp = mode.max_amplitude()
    out = 0.0
    sq = math.sqrt(mode.eigenvalue)
    for pts, normals in _boundary_samples(mode.domain, m):
        u = mode.evaluate(pts)
        if mode.bc.kind == "dirichlet":
            res = np.abs(u) / amp
        else:
            un = _normal_derivative(mode, pts, normals)
            if mode.bc.kind == "neumann":
                res = np.abs(un) / (amp * sq)
            else:
                scale = mode.domain.radius / mode.parameter
                res = np.abs(scale * un + mode.bc.h * u) / (amp * (1.0 + mode.bc.h))
        out = max(out, float(np.max(res)))
    return out
