import math

import numpy as np
import pytest
from scipy import integrate

import modeloc as ml
from modeloc import localization as loc
from modeloc.modes import DIRICHLET, Disk, Ellipse, EllipticAnnulus, Mode

INF = math.inf


def _constant_disk_mode(radius=1.0):
    return Mode(
        domain=Disk(radius),
        bc=DIRICHLET,
        index=(0,),
        label="stub",
        eigenvalue=1.0,
        parameter=1.0,
        _cart=lambda pts: np.ones(pts.shape[0]),
        radial=lambda r: np.ones_like(np.asarray(r, dtype=float)),
        angular=lambda t: np.ones_like(np.asarray(t, dtype=float)),
    )


def test_lp_norm_constant_disk():
    m = _constant_disk_mode(0.7)
    assert ml.lp_norm(m, loc.WholeDomain(), 2.0) == pytest.approx(
        math.sqrt(math.pi) * 0.7, rel=1e-9
    )


def test_lp_norm_sup_of_fundamental():
    m = ml.disk_mode(1.0, DIRICHLET, 0, 1, 1)
    assert ml.lp_norm(m, loc.WholeDomain(), INF) == pytest.approx(1.0, rel=1e-10)


def test_lp_norm_additivity():
    m = ml.disk_mode(1.0, DIRICHLET, 7, 2, 1)
    p = 2.0
    whole = ml.lp_norm(m, loc.WholeDomain(), p) ** p
    core = ml.lp_norm(m, loc.RadialCore(0.55), p) ** p
    shell = ml.lp_norm(m, loc.OuterShell(0.55), p) ** p
    assert core + shell == pytest.approx(whole, rel=1e-8)


def test_lp_norm_p_validation():
    m = _constant_disk_mode()
    with pytest.raises(ml.DomainError):
        ml.lp_norm(m, loc.WholeDomain(), 0.5)


def test_measure_fractions_closed_forms():
    assert loc.measure_fraction(Disk(1.0), loc.RadialCore(0.5)) == 0.25
    assert loc.measure_fraction(ml.Ball(2.0), loc.RadialCore(0.5)) == 0.125
    dom = Ellipse(1.0, 1.0)
    s = loc.measure_fraction(dom, loc.AngularSector(0.7))
    c = loc.measure_fraction(dom, loc.SectorComplement(0.7))
    assert s + c == pytest.approx(1.0, rel=1e-12)
    # cross-check the sector area against numerical integration
    val, _ = integrate.dblquad(
        lambda t, r: math.sinh(r) ** 2 + math.sin(t) ** 2,
        0.0,
        1.0,
        lambda r: 0.7,
        lambda r: math.pi - 0.7,
    )
    total = math.pi * math.cosh(1.0) * math.sinh(1.0)
    assert s == pytest.approx(2.0 * val / total, rel=1e-8)


# ----------------------------------------------------------------------
# whispering


def test_whispering_ratio_against_dense_oracle():
    n, k, p = 40, 1, 2.0
    rep = ml.whispering_ratio(1.0, DIRICHLET, n, k, p)
    alpha = ml.find_zero(ml.ZeroSpec(n, k))
    dn = n - n ** (2.0 / 3.0)
    # oracle: same panels, tenfold node count, no refinement logic
    from modeloc.localization import _radial_edges
    from modeloc.quadrature import integrate_panels

    edges = _radial_edges("cylindrical", n, alpha)

    def g(z):
        return z * np.abs(ml.bessel_j(n, z)) ** p

    num_edges = np.concatenate([edges[edges < dn], [dn]])
    num = integrate_panels(g, num_edges, order=120)
    den = integrate_panels(g, edges, order=120)
    assert rep.ratio == pytest.approx((num / den) ** 0.5, rel=1e-7)
    assert rep.measure_fraction == pytest.approx((dn / alpha) ** 2, rel=1e-14)
    assert rep.bound == pytest.approx(
        n ** (1.0 / 3.0 + 1.0 / 3.0) * 2.0 ** (-(n ** (1.0 / 3.0)) / 3.0), rel=1e-14
    )


def test_whispering_monotone_and_measure_growth():
    reps = [ml.whispering_ratio(1.0, DIRICHLET, n, 1, 2.0) for n in (10, 20, 40)]
    ratios = [r.ratio for r in reps]
    fracs = [r.measure_fraction for r in reps]
    assert ratios[0] > ratios[1] > ratios[2]
    assert fracs[0] < fracs[1] < fracs[2]
    for r in reps:
        assert 0.0 <= r.ratio <= 1.0 + 1e-6


def test_whispering_robin_between_neumann_dirichlet():
    rob = ml.BoundaryCondition("robin", 1.0)
    rd = ml.whispering_ratio(1.0, DIRICHLET, 30, 1, 2.0)
    rr = ml.whispering_ratio(1.0, rob, 30, 1, 2.0)
    rn = ml.whispering_ratio(1.0, ml.BoundaryCondition("neumann"), 30, 1, 2.0)
    a_d, a_r, a_n = (
        rd.eigenvalue**0.5,
        rr.eigenvalue**0.5,
        rn.eigenvalue**0.5,
    )
    assert a_n < a_r < a_d


def test_ball_whispering_sup_against_dense_grid():
    n, k = 30, 1
    rep = ml.ball_whispering_ratio(1.0, DIRICHLET, n, k, INF)
    alpha = ml.find_zero(ml.ZeroSpec(n, k, family="spherical"))
    sn = (n + 0.5) - (n + 0.5) ** (2.0 / 3.0)
    num = np.max(np.abs(ml.sph_bessel_j(n, np.linspace(1e-9, sn, 200001))))
    den = np.max(np.abs(ml.sph_bessel_j(n, np.linspace(1e-9, alpha, 300001))))
    assert rep.ratio == pytest.approx(num / den, rel=1e-6)
    assert rep.measure_fraction == pytest.approx((sn / alpha) ** 3, rel=1e-14)


# ----------------------------------------------------------------------
# focusing


def test_focusing_limit_formulas():
    assert loc.focusing_limit(2, 2.0, 0.8) == pytest.approx((1 - 0.8) ** 0.5, rel=1e-14)
    assert loc.focusing_limit(2, 5.0, 0.8) == 0.0
    assert loc.focusing_limit(3, 1.0, 0.8) == pytest.approx(1 - 0.64, rel=1e-14)
    assert loc.focusing_limit(3, INF, 0.8) == 0.0
    with pytest.warns(loc.CriticalExponentWarning):
        assert loc.focusing_limit(2, 4.0, 0.8) is None
    with pytest.warns(loc.CriticalExponentWarning):
        assert loc.focusing_limit(3, 3.0, 0.8) is None


def test_focusing_ratio_converges_in_k():
    r100 = ml.focusing_ratio(2, DIRICHLET, 0, 100, 2.0, 0.8)
    r1000 = ml.focusing_ratio(2, DIRICHLET, 0, 1000, 2.0, 0.8)
    lim = (1 - 0.8) ** 0.5
    assert abs(r1000.ratio - lim) < abs(r100.ratio - lim) + 1e-4
    assert abs(r1000.ratio - lim) < 0.01


def test_focusing_validation():
    with pytest.raises(ml.DomainError):
        ml.focusing_ratio(4, DIRICHLET, 0, 10, 2.0, 0.8)
    with pytest.raises(ml.DomainError):
        ml.focusing_ratio(2, DIRICHLET, 0, 10, 2.0, 1.2)


def test_fp_probe_positive_bounded_and_oracle():
    vals = ml.fp_scaling_probe(2, 0, 2.0, [50.0, 100.0, 200.0])
    assert np.all(vals > 0.0)
    a0 = 3.0 / math.pi
    cap = a0 / (2.0 - 1.0)
    assert np.all(vals < cap + 1.0)
    # adaptive-quadrature oracle of the defining integral
    for z, v in zip([50.0, 100.0, 200.0], vals):
        ref, err = integrate.quad(
            lambda r: r * ml.bessel_j(0, r) ** 2, 0.0, z, limit=400
        )
        assert v == pytest.approx(ref / z, rel=1e-6)
    with pytest.raises(ml.DomainError):
        ml.fp_scaling_probe(2, 0, 4.5, [10.0])


# ----------------------------------------------------------------------
# bouncing


def test_bouncing_bound_decreasing_in_lambda():
    lams = [10.0, 40.0, 160.0]
    vals = [loc.bouncing_bound(0, math.pi / 4, 2.0, 1.0, l) for l in lams]
    assert vals[0] > vals[1] > vals[2]


def test_sector_bound_constants():
    c = loc.SectorBoundConstants(1, math.pi / 3, 2.0)
    assert c.alpha < c.beta < c.gamma < math.pi / 2
    assert c.decay_rate > 0.0
    # the interior angles carry the fixed offsets of the sector argument
    assert c.beta == pytest.approx(math.pi / 4 + c.alpha / 2, rel=1e-15)
    assert c.gamma == pytest.approx(3 * math.pi / 8 + c.alpha / 4, rel=1e-15)
    with pytest.raises(ml.DomainError):
        loc.SectorBoundConstants(0, 2.0, 2.0)


def test_bouncing_ratio_single_mode():
    dom = Ellipse(1.0, 1.0)
    rep = ml.bouncing_ratio(dom, 0, 3, 1, math.pi / 4, 2.0)
    assert 0.0 < rep.ratio < 1.0
    assert rep.ratio <= rep.bound
    assert rep.measure_fraction == pytest.approx(
        loc.measure_fraction(dom, loc.SectorComplement(math.pi / 4)), rel=1e-12
    )


def test_bouncing_sweep_short():
    dom = EllipticAnnulus(1.0, 0.5, 1.0)
    reports, lam_thr = ml.bouncing_sweep(dom, 0, 1, math.pi / 4, 2.0,
                                         sqrt_lambda_target=14.0)
    assert lam_thr is not None
    assert all(r.ratio <= r.bound for r in reports if r.eigenvalue >= lam_thr)
    ratios = [r.ratio for r in reports]
    assert ratios[-1] < ratios[0]


def test_bouncing_alpha_validation():
    with pytest.raises(ml.DomainError):
        ml.bouncing_ratio(Ellipse(1.0, 1.0), 0, 1, 1, 2.0, 2.0)


# ----------------------------------------------------------------------
# rectangles


def test_epsilon_lower_trivial_and_positive():
    assert ml.epsilon_lower(0.0, math.pi) == pytest.approx(math.pi / 4.0, rel=1e-15)
    for w in (0.1, 0.37, 1.0, 2.9):
        assert ml.epsilon_lower(0.2, 0.2 + w) > 0.0


def test_epsilon_is_mode_independent_lower_bound():
    # the sine-power integrals dominate epsilon for every frequency m
    rng = np.random.default_rng(11)
    for _ in range(60):
        a = float(rng.uniform(0.0, 2.0))
        b = a + float(rng.uniform(0.05, 2.5))
        eps = ml.epsilon_lower(a, b)
        for m in (1, 2, 3, 7, 29, 143, 500):
            val = (b - a) / 2.0 - (math.sin(2 * m * b) - math.sin(2 * m * a)) / (4 * m)
            assert val >= eps - 1e-12


def test_rectangle_lower_bound_1d():
    rep = ml.rectangle_lower_bound((1.0,), DIRICHLET, ((0.3, 0.5),), 2.0,
                                   nmax_sq=500 * 500)
    assert rep.analytic > 0.0
    assert rep.empirical_min >= rep.analytic
    assert rep.modes_checked == 500


def test_rectangle_lower_bound_2d_and_warning():
    with pytest.warns(loc.NearRationalWarning):
        rep = ml.rectangle_lower_bound(
            (1.0, math.sqrt(2.0)), DIRICHLET, ((0.2, 0.4), (0.3, 0.6)), 2.0,
            nmax_sq=100,
        )
    assert rep.analytic > 0.0
    assert rep.empirical_min >= rep.analytic


def test_rectangle_no_warning_for_generic_lengths():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error", loc.NearRationalWarning)
        ml.rectangle_lower_bound(
            (1.0, 2.0 ** (1.0 / 4.0)), DIRICHLET, ((0.2, 0.4), (0.3, 0.6)), 2.0,
            nmax_sq=25,
        )


def test_rectangle_box_validation():
    with pytest.raises(ml.DomainError):
        ml.rectangle_lower_bound((1.0,), DIRICHLET, ((0.5, 1.5),), 2.0, nmax_sq=4)


def test_rectangle_norm_consistency_with_quad():
    m = ml.rectangle_mode((1.0, math.sqrt(2.0)), DIRICHLET, (3, 2))
    for p in (1.0, 2.0, 3.0):
        mine = ml.lp_norm(m, loc.WholeDomain(), p) ** p
        ref = 1.0
        for nv, li in zip((3, 2), (1.0, math.sqrt(2.0))):
            val, _ = integrate.quad(
                lambda x: abs(math.sin(math.pi * nv * x / li)) ** p, 0.0, li,
                limit=100,
            )
            ref *= val
        assert mine == pytest.approx(ref, rel=1e-8)


def test_box_sup_norm_in_disk():
    m = ml.disk_mode(1.0, DIRICHLET, 0, 1, 1)
    v = ml.lp_norm(m, loc.BoxRegion(((-0.2, 0.2), (-0.2, 0.2))), INF)
    assert v == pytest.approx(1.0, abs=1e-6)  # J_0 peaks at the origin


def test_box_ratio_probe_decreasing():
    box = ((-0.3, 0.3), (-0.3, 0.3))
    vals = [
        ml.box_ratio(ml.disk_mode(1.0, DIRICHLET, n, 1, 1), box, 2.0)
        for n in (10, 20, 40)
    ]
    assert vals[0] > vals[1] > vals[2]


def test_elliptic_norm_cross_check_cartesian():
    # the separated elliptic-coordinate norm must match a brute Cartesian
    # tensor integration of |u|^2 over the ellipse
    m = ml.ellipse_mode(1.0, 1.0, DIRICHLET, 1, 1, 1)
    mine = ml.lp_norm(m, loc.WholeDomain(), 2.0)
    A = math.cosh(1.0)
    B = math.sinh(1.0)

    def fy(y, x):
        v = m.evaluate(np.array([[x, y]]))[0]
        return v * v

    val = 0.0
    nx = 120
    xs = np.linspace(-A, A, nx + 1)
    for i in range(nx):
        xm = 0.5 * (xs[i] + xs[i + 1])
        ylim = B * math.sqrt(max(0.0, 1.0 - (xm / A) ** 2))
        if ylim <= 0.0:
            continue
        ys = np.linspace(-ylim, ylim, 61)
        vals = m.evaluate(np.stack([np.full_like(ys, xm), ys], axis=1)) ** 2
        val += np.trapezoid(vals, ys) * (xs[i + 1] - xs[i])
    assert mine**2 == pytest.approx(val, rel=2e-3)
