"""Registry of numerical verification suites: each classical inequality and
localization statement the package relies on, checked on fixed grids, with
the measured empirical constants reported alongside pass/fail flags.

Suites return a SuiteResult listing every inequality instance checked, so a
report can be audited line by line. The registry backs the `verify` CLI
command; the pytest suite drives the same functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import localization as loc
from . import mathieu
from .bessel import (
    ASYMPTOTIC_CONSTANTS,
    ZeroSpec,
    bessel_j,
    bessel_j_prime,
    find_zero,
    kapteyn_rhs,
    sph_bessel_j,
    zeros_list,
)
from .modes import (
    BoundaryCondition,
    DIRICHLET,
    NEUMANN,
    annulus_mode,
    ball_mode,
    boundary_residual,
    disk_mode,
    ellipse_mode,
    helmholtz_residual,
    rectangle_mode,
)

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_all"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: list = field(default_factory=list)
    constants: dict = field(default_factory=dict)

    def add(self, label, ok, value=None, bound=None):
        self.checks.append(
            {"label": label, "ok": bool(ok), "value": value, "bound": bound}
        )
        if not ok:
            self.passed = False

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "constants": self.constants,
            "checks": self.checks,
        }


# ----------------------------------------------------------------------
# Bessel inequality suites


def suite_kroger(full=False, corrupt=False):
    """0 < J_n(nz) < 2^(-n^(1/3)/3) on z in (0, 1 - n^(-1/3))."""
    res = SuiteResult("kroger", True)
    for n in range(5, 81):
        zhi = 1.0 - n ** (-1.0 / 3.0)
        z = np.linspace(0.0, zhi, 202)[1:-1]
        vals = bessel_j(n, n * z)
        cap = 2.0 ** (-(n ** (1.0 / 3.0)) / 3.0)
        ok = bool(np.all(vals > 0.0) and np.all(vals < cap))
        res.add(f"n={n}", ok, float(np.max(vals)), cap)
    return res


def suite_chambers(full=False, corrupt=False):
    """n < j'_{n,1} < j_{n,1} < sqrt(n+1)(sqrt(n+2)+1)."""
    res = SuiteResult("chambers", True)
    for n in range(1, 101):
        jp1 = find_zero(ZeroSpec(n=n, k=1, kind="derivative"))
        j1 = find_zero(ZeroSpec(n=n, k=1, kind="function"))
        if corrupt and n == 5:
            j1 *= 1.05  # deliberate mutation hook for the CLI self-test
        cap = math.sqrt(n + 1.0) * (math.sqrt(n + 2.0) + 1.0)
        ok = n < jp1 < j1 < cap
        res.add(f"n={n}", ok, j1, cap)
    return res


def suite_decreasing_extrema(full=False, corrupt=False):
    """|J_n| at successive interior extrema strictly decreases."""
    res = SuiteResult("decreasing_extrema", True)
    for n in range(0, 31):
        dz = zeros_list(n, 10, kind="derivative")
        vals = np.abs(bessel_j(n, dz))
        ok = bool(np.all(np.diff(vals) < 0.0))
        res.add(f"n={n}", ok, float(vals[-1]), float(vals[0]))
    return res


def suite_kapteyn(full=False, corrupt=False):
    """0 < J_nu(nu x) < Kapteyn bound, integer and half-integer orders."""
    res = SuiteResult("kapteyn", True)
    x = np.linspace(0.0, 1.0, 42)[1:-1]
    for n in range(1, 61, 3):
        vals = bessel_j(n, n * x)
        ok = bool(np.all(vals > 0.0) and np.all(vals < kapteyn_rhs(n, x)))
        res.add(f"nu={n}", ok)
        nu = n + 0.5
        arg = nu * x
        half = sph_bessel_j(n, arg) * np.sqrt(2.0 * arg / math.pi)
        ok = bool(np.all(half > 0.0) and np.all(half < kapteyn_rhs(nu, x)))
        res.add(f"nu={nu}", ok)
    return res


def suite_spherical_decay(full=False, corrupt=False):
    """j_n(z) below its exponential envelope left of the transition."""
    res = SuiteResult("spherical_decay", True)
    for n in range(10, 61, 2):
        nu = n + 0.5
        zhi = nu - nu ** (2.0 / 3.0)
        z = np.linspace(0.0, zhi, 152)[1:-1]
        vals = sph_bessel_j(n, z)
        cap = math.sqrt(math.pi / (2.0 * n + 1.0)) * math.exp(
            2.0 / 3.0 - (nu ** (1.0 / 3.0)) / 3.0
        )
        ok = bool(np.all(vals < cap))
        res.add(f"n={n}", ok, float(np.max(vals)), cap)
    return res


def suite_spherical_peak(full=False, corrupt=False):
    """The first maximum of j_n is its global one among the first extrema.
    For n = 0 the first local extremum is the origin itself (j_0(0) = 1,
    j_0'(0) = 0), which the positive-zero convention does not count."""
    res = SuiteResult("spherical_peak", True)
    for n in range(0, 31):
        dz = zeros_list(n, 10, kind="derivative", family="spherical")
        if n == 0:
            first = 1.0
            rest = np.abs(sph_bessel_j(n, dz[:9]))
        else:
            first = sph_bessel_j(n, dz[0])
            rest = np.abs(sph_bessel_j(n, dz[1:]))
        ok = first > 0.0 and bool(np.all(rest < first))
        res.add(f"n={n}", ok, float(first))
    return res


def suite_lower_bounds(full=False, corrupt=False):
    """J_n(n) > 0.447 n^(-1/3) and j'_{n,1} > n + 0.8086 n^(1/3), n >= 30."""
    res = SuiteResult("lower_bounds", True)
    c = ASYMPTOTIC_CONSTANTS
    for n in range(30, 101, 5):
        v = bessel_j(n, float(n))
        lo = c.c1_lower * n ** (-1.0 / 3.0)
        res.add(f"J_n(n) n={n}", v > lo, v, lo)
        jp = find_zero(ZeroSpec(n=n, k=1, kind="derivative"))
        lo = n + c.c2_lower * n ** (1.0 / 3.0)
        res.add(f"j'_n1 n={n}", jp > lo, jp, lo)
    return res


def suite_wronskian(full=False, corrupt=False):
    """Two derivative routes agree to 1e-12 (relative to the local scale)."""
    res = SuiteResult("wronskian_consistency", True)
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(400):
        n = int(rng.integers(0, 51))
        x = float(rng.uniform(0.05, 100.0))
        a = bessel_j_prime(n, x)
        if n == 0:
            b = -bessel_j(1, x)
        else:
            b = 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x))
        scale = max(1.0, abs(bessel_j(max(n - 1, 0), x)) + abs(bessel_j(n + 1, x)))
        worst = max(worst, abs(a - b) / scale)
    res.add("J' two routes", worst < 1e-12, worst, 1e-12)
    return res


# ----------------------------------------------------------------------
# Mathieu suites


def _angular_ode_residual(basis, q):
    th = np.linspace(0.03, 2.0 * math.pi - 0.03, 41)
    h = 3e-4
    y = mathieu.angular_eval(basis, th)
    ypp = (
        -mathieu.angular_eval(basis, th + 2 * h)
        + 16.0 * mathieu.angular_eval(basis, th + h)
        - 30.0 * y
        + 16.0 * mathieu.angular_eval(basis, th - h)
        - mathieu.angular_eval(basis, th - 2 * h)
    ) / (12.0 * h * h)
    resid = ypp + (basis.char_value - 2.0 * q * np.cos(2.0 * th)) * y
    scale = (abs(basis.char_value) + 2.0 * q) * np.max(np.abs(y))
    return float(np.max(np.abs(resid)) / scale)


def _radial_ode_residual(basis, kind, q):
    rr = np.linspace(0.05, 1.3, 25)
    h = 1e-3
    y = mathieu.radial_eval(basis, kind, rr)[0]
    ypp = (
        -mathieu.radial_eval(basis, kind, rr + 2 * h)[0]
        + 16.0 * mathieu.radial_eval(basis, kind, rr + h)[0]
        - 30.0 * y
        + 16.0 * mathieu.radial_eval(basis, kind, rr - h)[0]
        - mathieu.radial_eval(basis, kind, rr - 2 * h)[0]
    ) / (12.0 * h * h)
    resid = ypp - (basis.char_value - 2.0 * q * np.cosh(2.0 * rr)) * y
    scale = (abs(basis.char_value) + 2.0 * q * math.cosh(2.6)) * np.max(np.abs(y))
    return float(np.max(np.abs(resid)) / scale)


def _low_orders():
    out = []
    for m in range(0, 7):
        out.append((m, "ce"))
        if m >= 1:
            out.append((m, "se"))
    return out


def suite_mathieu_ode(full=False, corrupt=False):
    res = SuiteResult("mathieu_ode", True)
    for q in (1.0, 5.0, 20.0, 100.0):
        worst_a = 0.0
        worst_r = 0.0
        for order, fam in _low_orders():
            b = mathieu.solve_characteristic(order, fam, q)
            worst_a = max(worst_a, _angular_ode_residual(b, q))
            if order <= 2:
                worst_r = max(worst_r, _radial_ode_residual(b, 1, q))
                worst_r = max(worst_r, _radial_ode_residual(b, 2, q))
        res.add(f"angular q={q:g}", worst_a < 1e-7, worst_a, 1e-7)
        res.add(f"radial q={q:g}", worst_r < 1e-7, worst_r, 1e-7)
    return res


def suite_mathieu_degeneration(full=False, corrupt=False):
    """q -> 0: characteristic values to m^2, functions to cos/sin(m theta)."""
    res = SuiteResult("mathieu_degeneration", True)
    q = 1e-8
    th = np.linspace(0.0, 2.0 * math.pi, 181)
    for order, fam in _low_orders():
        b = mathieu.solve_characteristic(order, fam, q)
        res.add(
            f"{fam}_{order} char",
            abs(b.char_value - order * order) < 1e-5,
            b.char_value,
            order * order,
        )
        if fam == "ce" and order == 0:
            # the pi-normalization pins the constant limit at 1/sqrt(2)
            target = np.full_like(th, 1.0 / math.sqrt(2.0))
        elif fam == "ce":
            target = np.cos(order * th)
        else:
            target = np.sin(order * th)
        err = float(np.max(np.abs(mathieu.angular_eval(b, th) - target)))
        res.add(f"{fam}_{order} shape", err < 1e-8, err, 1e-8)
    return res


def suite_mathieu_orthogonality(full=False, corrupt=False):
    """Periodic trapezoid quadrature of the products, m, n <= 6, q = 10."""
    res = SuiteResult("mathieu_orthogonality", True)
    q = 10.0
    th = np.linspace(0.0, 2.0 * math.pi, 4096, endpoint=False)
    w = 2.0 * math.pi / th.size
    for fam in ("ce", "se"):
        lo = 0 if fam == "ce" else 1
        bases = [mathieu.solve_characteristic(m, fam, q) for m in range(lo, 7)]
        vals = [mathieu.angular_eval(b, th) for b in bases]
        worst = 0.0
        for i, vi in enumerate(vals):
            for j, vj in enumerate(vals):
                ip = float(np.dot(vi, vj)) * w
                target = math.pi if i == j else 0.0
                worst = max(worst, abs(ip - target))
        res.add(f"{fam} pairs", worst < 1e-9, worst, 1e-9)
    return res


def suite_mathieu_truncation(full=False, corrupt=False):
    """Characteristic values and radial samples stable under kmax doubling."""
    res = SuiteResult("mathieu_truncation", True)
    for q in (5.0, 100.0, 400.0):
        for order, fam in ((0, "ce"), (1, "ce"), (1, "se"), (2, "se")):
            b200 = mathieu.solve_characteristic(order, fam, q, 200)
            b400 = mathieu.solve_characteristic(order, fam, q, 400)
            dc = abs(b200.char_value - b400.char_value) / max(1.0, abs(b400.char_value))
            r200 = mathieu.radial_eval(b200, 1, 0.8)[0]
            r400 = mathieu.radial_eval(b400, 1, 0.8)[0]
            dr = abs(r200 - r400) / max(abs(r400), 1e-300)
            ok = dc < 1e-10 and dr < 1e-10
            res.add(f"{fam}_{order} q={q:g}", ok, max(dc, dr), 1e-10)
    return res


def suite_asymptotic_match(full=False, corrupt=False):
    """Two-term large-q expansions against direct evaluation (q = 20)."""
    res = SuiteResult("asymptotic_match", True)
    z = np.linspace(0.0, 1.2, 61)
    ce1 = mathieu.angular_eval(mathieu.solve_characteristic(1, "ce", 20.0), z)
    se1 = mathieu.angular_eval(mathieu.solve_characteristic(1, "se", 20.0), z)
    ce1_a, _ = mathieu.asymptotic_angular(1, z, 20.0)
    _, se1_a = mathieu.asymptotic_angular(0, z, 20.0)
    e1 = float(np.max(np.abs(ce1_a - ce1)) / np.max(np.abs(ce1)))
    e2 = float(np.max(np.abs(se1_a - se1)) / np.max(np.abs(se1)))
    res.add("ce_1 q=20", e1 < 1e-2, e1, 1e-2)
    res.add("se_1 q=20", e2 < 1e-2, e2, 1e-2)
    zz = np.linspace(0.0, 1.4, 141)
    for n in range(0, 4):
        dh = max(
            float(
                np.max(
                    np.abs(mathieu.h_plus(n, zz) - mathieu.h_plus(n, zz, form="trig"))
                    / np.abs(mathieu.h_plus(n, zz))
                )
            ),
            float(
                np.max(
                    np.abs(mathieu.h_minus(n, zz) - mathieu.h_minus(n, zz, form="trig"))
                    / np.abs(mathieu.h_minus(n, zz))
                )
            ),
        )
        res.add(f"h forms n={n}", dh < 1e-12, dh, 1e-12)
    return res


def suite_lemma_d1(full=False, corrupt=False):
    """Two-term surrogate of the correction-sum bound on (0, gamma)."""
    res = SuiteResult("lemma_d1", True)
    gamma = 1.4
    z = np.linspace(0.0, gamma, 401)
    for n in range(0, 4):
        n_gamma = mathieu.lemma_d1_threshold(gamma, n)
        res.constants[f"N_gamma(n={n})"] = n_gamma
        for q in (1.5 * n_gamma, 4.0 * n_gamma):
            m = max(
                float(np.max(np.abs(mathieu.f1_plus(n, z)))),
                float(np.max(np.abs(mathieu.f1_minus(n, z)))),
            ) / math.sqrt(q)
            res.add(f"n={n} q={q:.3g}", m < 0.5, m, 0.5)
    return res


def suite_g_bounds(full=False, corrupt=False):
    res = SuiteResult("g_bounds", True)
    alpha = math.pi / 4.0
    beta = alpha + math.pi / 8.0
    gamma = 3.0 * math.pi / 8.0 + math.pi / 16.0
    res.add(
        "sandwich n=0 q=200",
        mathieu.g_bound_check(0, alpha, beta, gamma, 200.0),
    )
    res.add(
        "sandwich n=1 q=300",
        mathieu.g_bound_check(1, alpha, beta, gamma, 300.0),
    )
    z = np.linspace(0.0, 1.4, 200)
    for n in range(0, 4):
        hp = mathieu.h_plus(n, z)
        res.add(f"h_plus decreasing n={n}", bool(np.all(np.diff(hp) < 0.0)))
    return res


# ----------------------------------------------------------------------
# eigenmode suites


def _census_modes(full=False):
    rob = BoundaryCondition("robin", 1.0)
    modes = []
    for bc in (DIRICHLET, NEUMANN, rob):
        for (n, k) in ((0, 1), (2, 2), (7, 3), (1, 5), (4, 1)):
            modes.append(disk_mode(1.0, bc, n, k, 1 if n == 0 else 2))
    for bc in (DIRICHLET, NEUMANN, rob):
        for (n, k, l) in ((0, 1, 0), (3, 2, 2), (5, 1, -4), (1, 3, 1)):
            modes.append(ball_mode(1.0, bc, n, k, l))
    for (n, k, i) in ((0, 1, 1), (1, 2, 1), (0, 1, 3), (2, 1, 3)):
        modes.append(ellipse_mode(1.0, 1.0, DIRICHLET, n, k, i))
    for (n, k, i) in ((0, 1, 1), (1, 2, 1), (0, 1, 2), (1, 1, 2)):
        modes.append(annulus_mode(1.0, 0.5, 1.0, DIRICHLET, n, k, i))
    sq2 = math.sqrt(2.0)
    modes.append(rectangle_mode((2.0,), DIRICHLET, (4,)))
    modes.append(rectangle_mode((1.0, sq2), DIRICHLET, (3, 2)))
    modes.append(rectangle_mode((1.0, sq2), NEUMANN, (0, 2)))
    modes.append(rectangle_mode((1.0, sq2, 0.7), DIRICHLET, (1, 2, 1)))
    modes.append(rectangle_mode((1.0, sq2, 0.7), NEUMANN, (2, 0, 1)))
    return modes


def suite_helmholtz(full=False, corrupt=False):
    """Finite-difference Helmholtz and boundary residuals on a mode census."""
    res = SuiteResult("helmholtz_census", True)
    modes = _census_modes(full)
    res.constants["census_size"] = len(modes)
    for m in modes:
        hr = helmholtz_residual(m)
        br = boundary_residual(m)
        res.add(
            f"{m.label}{m.index} bc={m.bc.kind}",
            hr < 1e-5 and br < 1e-8,
            max(hr, br),
            1e-5,
        )
    return res


def suite_eigenvalue_order(full=False, corrupt=False):
    """Eigenvalues strictly increase with the radial index k."""
    res = SuiteResult("eigenvalue_order", True)
    for bc in (DIRICHLET, NEUMANN):
        for n in (0, 3, 11):
            lams = [disk_mode(1.0, bc, n, k, 1).eigenvalue for k in range(1, 6)]
            res.add(f"disk n={n} {bc.kind}", bool(np.all(np.diff(lams) > 0.0)))
    from .modes import ellipse_q_scan

    roots = ellipse_q_scan(1.0, 1.0, 1, 1, k=4)
    res.add("ellipse q increasing", bool(np.all(np.diff(roots) > 0.0)))
    return res


# ----------------------------------------------------------------------
# localization suites


def suite_whispering(full=False, corrupt=False):
    """Disk whispering decay plus the empirical sweep constants."""
    res = SuiteResult("whispering_disk", True)
    ns = (20, 30, 40, 50, 60)
    for p in (1.0, 2.0, math.inf):
        for k in (1, 2):
            reports = [loc.whispering_ratio(1.0, DIRICHLET, n, k, p) for n in ns]
            ratios = [r.ratio for r in reports]
            cp = max(r.ratio / r.bound for r in reports)
            res.constants[f"C_p(p={p:g},k={k})"] = cp
            res.add(
                f"decay p={p:g} k={k}",
                ratios[-1] < ratios[0] / 10.0 and cp < math.inf,
                ratios[-1],
                ratios[0] / 10.0,
            )
            res.add(
                f"sandwich p={p:g} k={k}",
                all(0.0 <= r.ratio <= 1.0 + 1e-6 for r in reports),
            )
    rep60 = loc.whispering_ratio(1.0, DIRICHLET, 60, 1, 2.0)
    res.constants["ratio(n=60,k=1,p=2)"] = rep60.ratio
    res.constants["measure_fraction(n=60,k=1)"] = rep60.measure_fraction
    return res


def suite_ball_whispering(full=False, corrupt=False):
    res = SuiteResult("whispering_ball", True)
    ns = (15, 30, 45)
    for p in (2.0, math.inf):
        reports = [loc.ball_whispering_ratio(1.0, DIRICHLET, n, 1, p) for n in ns]
        ratios = [r.ratio for r in reports]
        cp = max(r.ratio / r.bound for r in reports)
        res.constants[f"C_p_ball(p={p:g})"] = cp
        res.add(f"decreasing p={p:g}", bool(np.all(np.diff(ratios) < 0.0)))
        if p == 2.0:
            res.add("ratio(45,k=1,p=2) < 1e-2", ratios[-1] < 1e-2, ratios[-1], 1e-2)
    return res


def suite_focusing_2d(full=False, corrupt=False):
    res = SuiteResult("focusing_2d", True)
    for n in (0, 1):
        rep = loc.focusing_ratio(2, DIRICHLET, n, 1000, 2.0, 0.8)
        res.add(
            f"n={n} p=2 near limit",
            abs(rep.ratio - rep.limit) < 0.05,
            rep.ratio,
            rep.limit,
        )
        res.constants[f"ratio(n={n},k=1000,p=6)"] = loc.focusing_ratio(
            2, DIRICHLET, n, 1000, 6.0, 0.8
        ).ratio
    return res


def suite_focusing_3d(full=False, corrupt=False):
    res = SuiteResult("focusing_3d", True)
    rep = loc.focusing_ratio(3, DIRICHLET, 1, 500, 1.0, 0.8)
    res.add("n=1 p=1 near limit", abs(rep.ratio - rep.limit) < 0.05, rep.ratio, rep.limit)
    res.constants["ratio(n=1,k=500,p=5)"] = loc.focusing_ratio(
        3, DIRICHLET, 1, 500, 5.0, 0.8
    ).ratio
    return res


def suite_fp_probe(full=False, corrupt=False):
    """Scaled cumulative integrals: positive and below the envelope bound."""
    res = SuiteResult("fp_probe", True)
    a0_2d = 3.0 / math.pi
    for (dim, n, p) in ((2, 0, 2.0), (2, 1, 2.0), (3, 0, 1.0), (3, 1, 2.0)):
        vals = loc.fp_scaling_probe(dim, n, p, [50.0, 100.0, 200.0])
        res.add(f"positive dim={dim} n={n} p={p:g}", bool(np.all(vals > 0.0)))
        if dim == 2:
            cap = a0_2d ** (p / 2.0) / (2.0 - p / 2.0)
            ok = bool(np.all(vals < cap + 1.0))
            res.add(f"bounded dim=2 n={n}", ok, float(np.max(vals)), cap + 1.0)
    return res


_FIG4_CONFIGS = (
    ("ellipse", 0, math.pi / 4.0),
    ("ellipse", 1, math.pi / 3.0),
    ("annulus", 0, math.pi / 4.0),
    ("annulus", 1, math.pi / 3.0),
)


def suite_bouncing(full=False, corrupt=False):
    """The four reference configurations: bound ordering and decay."""
    from .modes import Ellipse, EllipticAnnulus

    res = SuiteResult("bouncing", True)
    target = 46.0 if full else 24.0
    for name, n, alpha in _FIG4_CONFIGS:
        dom = Ellipse(1.0, 1.0) if name == "ellipse" else EllipticAnnulus(1.0, 0.5, 1.0)
        reports, lam_thr = loc.bouncing_sweep(dom, n, 1, alpha, 2.0,
                                              sqrt_lambda_target=target)
        res.constants[f"Lambda_alpha({name},n={n})"] = lam_thr
        above = [r for r in reports if lam_thr is not None and r.eigenvalue >= lam_thr]
        res.add(
            f"{name} n={n}: bound holds above threshold",
            lam_thr is not None and all(r.ratio <= r.bound for r in above),
        )
        drop = math.log(reports[0].ratio) - math.log(reports[-1].ratio)
        # the slowest configuration decays ~0.134 per unit sqrt(lambda), so
        # the quick sweep (to 24) can only certify a smaller drop
        need = 5.0 if full else 1.5
        res.add(f"{name} n={n}: log drop", drop >= need, drop, need)
        res.add(
            f"{name} n={n}: sandwich",
            all(0.0 <= r.ratio <= 1.0 + 1e-6 for r in reports),
        )
    return res


def suite_corollary_box(full=False, corrupt=False):
    res = SuiteResult("corollary_box", True)
    box = ((-0.3, 0.3), (-0.3, 0.3))
    ns = (10, 20, 40, 60)
    vals = []
    for n in ns:
        m = disk_mode(1.0, DIRICHLET, n, 1, 1)
        vals.append(loc.box_ratio(m, box, 2.0))
    res.add("decreasing", bool(np.all(np.diff(vals) < 0.0)))
    res.add("small by n=60", vals[-1] < 1e-4, vals[-1], 1e-4)
    return res


def suite_rectangle(full=False, corrupt=False):
    res = SuiteResult("rectangle", True)
    import warnings as _w

    box = ((0.2, 0.4), (0.3, 0.6))
    for bc in (DIRICHLET, NEUMANN):
        for p in (1.0, 2.0):
            with _w.catch_warnings():
                _w.simplefilter("ignore", loc.NearRationalWarning)
                rep = loc.rectangle_lower_bound(
                    (1.0, math.sqrt(2.0)), bc, box, p, nmax_sq=400
                )
            res.add(
                f"{bc.kind} p={p:g} positive bound", rep.analytic > 0.0, rep.analytic
            )
            res.add(
                f"{bc.kind} p={p:g} empirical >= analytic",
                rep.empirical_min >= rep.analytic,
                rep.empirical_min,
                rep.analytic,
            )
    return res


SUITES = {
    "kroger": suite_kroger,
    "chambers": suite_chambers,
    "decreasing_extrema": suite_decreasing_extrema,
    "kapteyn": suite_kapteyn,
    "spherical_decay": suite_spherical_decay,
    "spherical_peak": suite_spherical_peak,
    "lower_bounds": suite_lower_bounds,
    "wronskian_consistency": suite_wronskian,
    "mathieu_ode": suite_mathieu_ode,
    "mathieu_degeneration": suite_mathieu_degeneration,
    "mathieu_orthogonality": suite_mathieu_orthogonality,
    "mathieu_truncation": suite_mathieu_truncation,
    "asymptotic_match": suite_asymptotic_match,
    "lemma_d1": suite_lemma_d1,
    "g_bounds": suite_g_bounds,
    "helmholtz_census": suite_helmholtz,
    "eigenvalue_order": suite_eigenvalue_order,
    "whispering_disk": suite_whispering,
    "whispering_ball": suite_ball_whispering,
    "focusing_2d": suite_focusing_2d,
    "focusing_3d": suite_focusing_3d,
    "fp_probe": suite_fp_probe,
    "bouncing": suite_bouncing,
    "corollary_box": suite_corollary_box,
    "rectangle": suite_rectangle,
}


def run_suite(name, full=False, corrupt=False) -> SuiteResult:
    return SUITES[name](full=full, corrupt=corrupt)


def run_all(names=None, full=False, corrupt=False):
    results = []
    for name in names or SUITES:
        results.append(run_suite(name, full=full, corrupt=corrupt))
    return results
