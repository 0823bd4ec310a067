import math

import mpmath as mp
import numpy as np
import pytest

from modeloc import (
    ASYMPTOTIC_CONSTANTS,
    DomainError,
    ZeroSpec,
    bessel_j,
    bessel_j_prime,
    find_zero,
    kapteyn_rhs,
    sph_bessel_j,
    sph_bessel_j_prime,
    zeros_list,
)
from modeloc.bessel import airy_delta, bessel_y_block, mcmahon_seed

from oracles import mp_bisect_zero, mp_j_series, mp_sph_j, richardson_derivative

# values frozen from the extended-precision oracles in oracles.py
J_5_5 = 0.26114054612017009005
JPRIME_2_3 = 0.014998118135342407654
SPH_J2_4P5 = 0.216275860872849934
J01 = 2.404825557695772768621632
KAPTEYN_1_HALF = 0.63703384488081828482


def test_j_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(3, 0.0) == 0.0


def test_j_series_value():
    assert bessel_j(5, 5.0) == pytest.approx(J_5_5, rel=1e-14)


@pytest.mark.parametrize("n", [0, 1, 2, 7, 23, 60, 121])
def test_j_against_series_oracle(n):
    xs = [0.5, 3.7, 9.0, 14.2, 26.5]
    for x in xs:
        ref = float(mp_j_series(n, x))
        amp = abs(ref) + math.sqrt(2.0 / (math.pi * max(x, 1.0)))
        assert abs(bessel_j(n, x) - ref) <= 1e-13 * amp


def test_j_large_argument_phase():
    # the Hankel branch must keep the oscillation phase at large x
    for n in (0, 1, 2):
        for x in (300.0, 2999.5, 9876.0):
            ref = float(mp.besselj(n, mp.mpf(x)))
            amp = math.sqrt(2.0 / (math.pi * x))
            assert abs(bessel_j(n, x) - ref) <= 1e-13 * amp


def test_j_domain_errors():
    with pytest.raises(DomainError):
        bessel_j(0, -1.0)
    with pytest.raises(DomainError):
        bessel_j(0, math.inf)
    with pytest.raises(DomainError):
        bessel_j(-1, 1.0)


def test_jprime_trivial():
    assert bessel_j_prime(0, 0.0) == 0.0
    assert bessel_j_prime(1, 0.0) == 0.5


def test_jprime_oracle():
    assert bessel_j_prime(2, 3.0) == pytest.approx(JPRIME_2_3, abs=1e-14)
    ref = float(richardson_derivative(lambda t: mp_j_series(4, t), 7.3))
    assert bessel_j_prime(4, 7.3) == pytest.approx(ref, abs=1e-13)


def test_jprime_recurrence_identity():
    rng = np.random.default_rng(7)
    for _ in range(300):
        n = int(rng.integers(1, 51))
        x = float(rng.uniform(1e-3, 100.0))
        lhs = bessel_j_prime(n, x)
        rhs = 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x))
        scale = max(1.0, abs(bessel_j(n - 1, x)) + abs(bessel_j(n + 1, x)))
        assert abs(lhs - rhs) <= 1e-12 * scale


def test_spherical_trivial():
    assert sph_bessel_j(0, math.pi) == pytest.approx(0.0, abs=1e-15)
    assert sph_bessel_j(0, 0.0) == 1.0
    assert sph_bessel_j(3, 0.0) == 0.0
    assert sph_bessel_j(0, 2.0) == pytest.approx(math.sin(2.0) / 2.0, rel=1e-14)


def test_spherical_oracle():
    assert sph_bessel_j(2, 4.5) == pytest.approx(SPH_J2_4P5, rel=1e-13)
    for n, x in [(5, 2.2), (11, 17.0), (40, 45.0)]:
        ref = float(mp_sph_j(n, x))
        assert sph_bessel_j(n, x) == pytest.approx(ref, rel=1e-11, abs=1e-280)


def test_spherical_negative_argument():
    with pytest.raises(DomainError):
        sph_bessel_j(1, -0.5)


def test_spherical_derivative_consistency():
    for n in (0, 1, 4, 15):
        for x in (0.7, 3.0, 22.0):
            h = 1e-5
            fd = (sph_bessel_j(n, x + h) - sph_bessel_j(n, x - h)) / (2 * h)
            assert sph_bessel_j_prime(n, x) == pytest.approx(fd, abs=2e-10)


# ----------------------------------------------------------------------
# zeros


def test_first_dirichlet_zero_against_oracle_bisection():
    oracle = float(mp_bisect_zero(lambda t: mp_j_series(0, t), 2.0, 3.0))
    assert find_zero(ZeroSpec(0, 1)) == pytest.approx(oracle, abs=1e-12)
    assert find_zero(ZeroSpec(0, 1)) == pytest.approx(J01, abs=1e-12)


def test_spherical_first_zero_is_pi():
    assert find_zero(ZeroSpec(0, 1, family="spherical")) == pytest.approx(
        math.pi, abs=1e-13
    )


def test_derivative_zero_chambers_window():
    x = find_zero(ZeroSpec(10, 1, kind="derivative"))
    assert 10.0 < x < find_zero(ZeroSpec(10, 1))


def test_zero_residuals_and_ordering():
    for family in ("cylindrical", "spherical"):
        for n in (0, 3, 17):
            zs = zeros_list(n, 8, family=family)
            assert np.all(np.diff(zs) > 0.0)
            f = bessel_j if family == "cylindrical" else sph_bessel_j
            for z in zs:
                assert abs(f(n, z)) < 1e-12 * max(1.0, z)


def test_mcmahon_matches_far_zeros():
    for n in (0, 2):
        z = zeros_list(n, 60, family="cylindrical")
        seed = mcmahon_seed(n, 60)
        assert abs(z[-1] - seed) < 1e-3


def test_robin_zero_interlacing_and_residual():
    for family in ("cylindrical", "spherical"):
        f, fp = (
            (bessel_j, bessel_j_prime)
            if family == "cylindrical"
            else (sph_bessel_j, sph_bessel_j_prime)
        )
        for n in (1, 2, 9):
            for k in (1, 3):
                for h in (0.5, 2.0):
                    a = find_zero(ZeroSpec(n, k, "robin", family, h))
                    dz = find_zero(ZeroSpec(n, k, "derivative", family))
                    fz = find_zero(ZeroSpec(n, k, "function", family))
                    assert dz < a < fz
                    assert abs(fp(n, a) + h * f(n, a)) < 1e-12


def test_robin_zero_order_zero_family():
    # n = 0: the first Robin zero precedes the first extremum since the
    # constant Neumann mode is not counted among the positive zeros
    for family in ("cylindrical", "spherical"):
        f, fp = (
            (bessel_j, bessel_j_prime)
            if family == "cylindrical"
            else (sph_bessel_j, sph_bessel_j_prime)
        )
        for h in (0.5, 2.0):
            zs = zeros_list(0, 3, kind="robin", family=family, h=h)
            fz = zeros_list(0, 3, family=family)
            assert np.all(np.diff(zs) > 0.0)
            assert zs[0] < fz[0]
            for a in zs:
                assert abs(fp(0, a) + h * f(0, a)) < 1e-12


def test_robin_requires_positive_h():
    with pytest.raises(DomainError):
        ZeroSpec(0, 1, "robin")
    with pytest.raises(DomainError):
        ZeroSpec(0, 0)


# ----------------------------------------------------------------------
# kapteyn and the constants


def test_kapteyn_trivial_and_value():
    assert kapteyn_rhs(3.0, 1.0 - 1e-12) == pytest.approx(1.0, abs=1e-9)
    assert kapteyn_rhs(1.0, 0.5) == pytest.approx(KAPTEYN_1_HALF, rel=1e-14)
    with pytest.raises(DomainError):
        kapteyn_rhs(1.0, 1.5)
    with pytest.raises(DomainError):
        kapteyn_rhs(1.0, 0.0)


def test_kapteyn_dominates_bessel():
    x = np.linspace(0.02, 0.98, 25)
    for n in (1, 4, 19, 46):
        assert np.all(bessel_j(n, n * x) < kapteyn_rhs(float(n), x))
        assert np.all(bessel_j(n, n * x) > 0.0)


def test_asymptotic_constants():
    c = ASYMPTOTIC_CONSTANTS
    assert c.c1_prime == pytest.approx(0.4473, abs=5e-5)
    assert airy_delta(1) == pytest.approx(1.855757, abs=1e-4)
    assert c.c2_prime == pytest.approx(0.808618, abs=1e-6)


def test_y_block_values():
    vals, nv = bessel_y_block(5, 1.0)
    assert nv == 6
    assert vals[0] == pytest.approx(0.08825696421567696, rel=1e-13)
    assert vals[1] == pytest.approx(-0.7812128213002887, rel=1e-13)
