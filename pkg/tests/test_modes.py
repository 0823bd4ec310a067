import math

import mpmath as mp
import numpy as np
import pytest

from modeloc import (
    BoundaryCondition,
    InvalidIndexError,
    UnsupportedConditionError,
    annulus_mode,
    annulus_q_solve,
    ball_mode,
    disk_mode,
    ellipse_mode,
    ellipse_q_solve,
    legendre_pnl,
    rectangle_mode,
)
from modeloc import mathieu
from modeloc.modes import (
    DIRICHLET,
    NEUMANN,
    boundary_residual,
    elliptic_coords,
    helmholtz_residual,
)

from oracles import mp_bisect_zero

SQ2 = math.sqrt(2.0)
# j_{0,1}^2 from the oracle bisection value
LAMBDA_0_1 = 2.404825557695772768621632**2


def test_disk_fundamental_eigenvalue():
    m = disk_mode(1.0, DIRICHLET, 0, 1, 1)
    assert m.eigenvalue == pytest.approx(LAMBDA_0_1, rel=1e-13)
    assert m.eigenvalue == pytest.approx(5.7832, abs=2e-4)


def test_disk_boundary_trivials():
    m = disk_mode(1.0, DIRICHLET, 0, 1, 1)
    pts = np.array([[1.0, 0.0], [0.0, -1.0], [math.cos(1.0), math.sin(1.0)]])
    assert np.max(np.abs(m.evaluate(pts))) < 1e-13
    mn = disk_mode(1.0, NEUMANN, 1, 1, 1)
    assert boundary_residual(mn) < 1e-12


def test_disk_invalid_index():
    with pytest.raises(InvalidIndexError):
        disk_mode(1.0, DIRICHLET, 0, 1, 2)
    with pytest.raises(InvalidIndexError):
        disk_mode(1.0, DIRICHLET, 1, 0, 1)


def test_disk_angular_parity():
    m1 = disk_mode(1.0, DIRICHLET, 3, 1, 1)
    m2 = disk_mode(1.0, DIRICHLET, 3, 1, 2)
    pts = np.array([[0.4, 0.2], [0.1, -0.5], [-0.3, 0.35]])
    flipped = pts * np.array([1.0, -1.0])
    assert np.allclose(m1.evaluate(flipped), m1.evaluate(pts), atol=1e-14)
    assert np.allclose(m2.evaluate(flipped), -m2.evaluate(pts), atol=1e-14)


def test_disk_eigenvalues_scale_with_radius():
    m = disk_mode(2.5, DIRICHLET, 2, 3, 1)
    m1 = disk_mode(1.0, DIRICHLET, 2, 3, 1)
    assert m.eigenvalue == pytest.approx(m1.eigenvalue / 2.5**2, rel=1e-14)


def test_ball_trivials():
    m = ball_mode(1.0, DIRICHLET, 0, 1, 0)
    assert m.parameter == pytest.approx(math.pi, abs=1e-13)
    assert m.eigenvalue == pytest.approx(math.pi**2, rel=1e-13)
    x = np.linspace(-1, 1, 17)
    assert np.allclose(legendre_pnl(0, 0, x), 1.0)
    with pytest.raises(InvalidIndexError):
        ball_mode(1.0, DIRICHLET, 1, 1, 2)


def test_ball_neumann_alpha_oracle():
    # first maximum of j_1 via extended-precision bisection of its derivative
    def j1p(t):
        t = mp.mpf(t)
        j0 = mp.sin(t) / t
        j1 = mp.sin(t) / t**2 - mp.cos(t) / t
        return j0 - 2 * j1 / t

    oracle = float(mp_bisect_zero(j1p, 1.0, 4.4))
    m = ball_mode(1.0, NEUMANN, 1, 1, 0)
    assert m.parameter == pytest.approx(oracle, abs=1e-12)


def test_legendre_against_scipy():
    from scipy.special import lpmv

    x = np.linspace(-0.99, 0.99, 41)
    for n in (1, 3, 7, 20):
        for l in (0, 1, n // 2, n):
            assert np.allclose(
                legendre_pnl(n, l, x), lpmv(l, n, x), rtol=1e-10, atol=1e-10
            )


def test_elliptic_coords_roundtrip():
    a = 1.3
    rng = np.random.default_rng(5)
    r = rng.uniform(0.05, 1.5, 40)
    th = rng.uniform(0.0, 2.0 * math.pi, 40)
    x = a * np.cosh(r) * np.cos(th)
    y = a * np.sinh(r) * np.sin(th)
    r2, th2 = elliptic_coords(a, np.stack([x, y], axis=1))
    assert np.allclose(r2, r, atol=1e-10)
    assert np.allclose(np.cos(th2), np.cos(th), atol=1e-10)
    assert np.allclose(np.sin(th2), np.sin(th), atol=1e-10)


def test_ellipse_q_residual_and_monotonicity():
    for i, (fam, off, kind) in ((1, ("ce", 0, 1)), (3, ("se", 1, 1))):
        qs = [ellipse_q_solve(1.0, 1.0, 1, k, i) for k in (1, 2, 3)]
        assert np.all(np.diff(qs) > 0.0)
        for k, q in enumerate(qs, start=1):
            basis = mathieu.solve_characteristic(1 + off, fam, q)
            rr = np.linspace(0.0, 1.0, 200)
            prof = mathieu.radial_eval(basis, kind, rr)[0]
            assert abs(prof[-1]) < 1e-10 * np.max(np.abs(prof))


def test_ellipse_lambda_relation():
    a = 1.4
    q = ellipse_q_solve(a, 0.8, 0, 1, 1)
    m = ellipse_mode(a, 0.8, DIRICHLET, 0, 1, 1)
    assert m.eigenvalue == pytest.approx(4.0 * q / a**2, rel=1e-14)


def test_ellipse_rejects_other_conditions():
    with pytest.raises(UnsupportedConditionError):
        ellipse_mode(1.0, 1.0, NEUMANN, 0, 1, 1)
    with pytest.raises(UnsupportedConditionError):
        annulus_mode(1.0, 0.5, 1.0, BoundaryCondition("robin", 1.0), 0, 1, 1)


def test_ellipse_second_kind_family():
    m = ellipse_mode(1.0, 1.0, DIRICHLET, 0, 1, 2)
    th = np.linspace(0.0, 2.0 * math.pi, 37)
    bpts = np.stack(
        [math.cosh(1.0) * np.cos(th), math.sinh(1.0) * np.sin(th)], axis=1
    )
    amp = m.max_amplitude()
    assert np.max(np.abs(m.evaluate(bpts))) < 1e-8 * amp


def test_annulus_oracle_and_boundary_zeros():
    # independent scan of the two-boundary determinant at a finer step and a
    # different truncation, refined by pure bisection
    def det(q):
        b = mathieu.solve_characteristic(1, "ce", q, 240)
        m11 = mathieu.radial_eval(b, 1, 0.5)[0]
        m12 = mathieu.radial_eval(b, 1, 1.0)[0]
        m21 = mathieu.radial_eval(b, 2, 0.5)[0]
        m22 = mathieu.radial_eval(b, 2, 1.0)[0]
        return m11 * m22 - m12 * m21

    q_lo, f_lo = 0.5, det(0.5)
    root = None
    while root is None:
        q_hi = q_lo * 1.02
        f_hi = det(q_hi)
        if f_lo * f_hi < 0.0:
            lo, hi = q_lo, q_hi
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if det(lo) * det(mid) <= 0.0:
                    hi = mid
                else:
                    lo = mid
            root = 0.5 * (lo + hi)
        q_lo, f_lo = q_hi, f_hi

    q = annulus_q_solve(1.0, 0.5, 1.0, 1, 1, 1)
    assert q == pytest.approx(root, rel=1e-8)

    m = annulus_mode(1.0, 0.5, 1.0, DIRICHLET, 1, 1, 1)
    amp = m.max_amplitude()
    th = np.linspace(0.0, 2.0 * math.pi, 25)
    for r0 in (0.5, 1.0):
        bpts = np.stack(
            [math.cosh(r0) * np.cos(th), math.sinh(r0) * np.sin(th)], axis=1
        )
        assert np.max(np.abs(m.evaluate(bpts))) < 1e-8 * amp


def test_ellipse_angular_parity():
    # cosine families are even under y -> -y, sine families odd
    even = ellipse_mode(1.0, 1.0, DIRICHLET, 1, 1, 1)
    odd = ellipse_mode(1.0, 1.0, DIRICHLET, 1, 1, 3)
    pts = np.array([[0.6, 0.4], [-0.9, 0.2], [0.1, 0.8]])
    flipped = pts * np.array([1.0, -1.0])
    assert np.allclose(even.evaluate(flipped), even.evaluate(pts), rtol=1e-10)
    assert np.allclose(odd.evaluate(flipped), -odd.evaluate(pts), rtol=1e-10)


def test_annulus_q_increasing():
    qs = [annulus_q_solve(1.0, 0.5, 1.0, 0, k, 2) for k in (1, 2)]
    assert qs[1] > qs[0]


def test_rectangle_trivials():
    m = rectangle_mode((math.pi, math.pi), DIRICHLET, (1, 1))
    assert m.eigenvalue == pytest.approx(2.0, rel=1e-14)
    pts = np.array([[0.0, 1.0], [math.pi, 2.0]])
    assert np.allclose(m.evaluate(pts), 0.0, atol=1e-15)
    mc = rectangle_mode((1.0, SQ2), NEUMANN, (0, 0))
    assert mc.eigenvalue == 0.0
    assert np.allclose(mc.evaluate(np.array([[0.3, 0.4]])), 1.0)
    with pytest.raises(InvalidIndexError):
        rectangle_mode((1.0, 1.0), DIRICHLET, (0, 1))
    with pytest.raises(UnsupportedConditionError):
        rectangle_mode((1.0,), BoundaryCondition("robin", 1.0), (1,))


def test_eigenvalue_ordering_in_k():
    for bc in (DIRICHLET, NEUMANN):
        lams = [disk_mode(1.0, bc, 4, k, 1).eigenvalue for k in range(1, 7)]
        assert np.all(np.diff(lams) > 0.0)


def test_helmholtz_residuals_sample():
    rob = BoundaryCondition("robin", 1.5)
    modes = [
        disk_mode(1.0, DIRICHLET, 0, 1, 1),
        disk_mode(1.0, rob, 3, 2, 2),
        ball_mode(1.0, NEUMANN, 2, 2, 1),
        ellipse_mode(1.0, 1.0, DIRICHLET, 1, 1, 1),
        ellipse_mode(1.0, 1.0, DIRICHLET, 1, 1, 3),
        annulus_mode(1.0, 0.5, 1.0, DIRICHLET, 0, 2, 2),
        rectangle_mode((1.0, SQ2, 0.7), DIRICHLET, (2, 1, 1)),
    ]
    for m in modes:
        assert helmholtz_residual(m) < 1e-5
        assert boundary_residual(m) < 1e-8


def test_boundary_condition_parsing():
    assert BoundaryCondition.parse("Dirichlet").kind == "dirichlet"
    with pytest.raises(Exception):
        BoundaryCondition("robin", 0.0)
    with pytest.raises(Exception):
        BoundaryCondition("mixed")
