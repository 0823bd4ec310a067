"""Angular Mathieu functions ce_m / se_m, the modified (radial) functions of
both kinds, characteristic values through the truncated symmetric-tridiagonal
eigenproblem, and the large-parameter asymptotic machinery.

Characteristic values: the 2*pi-periodic solutions split into four parity
classes (cosine/sine x even/odd harmonics). Each class yields a symmetric
tridiagonal matrix in the Fourier coefficients whose eigenvalues are the
characteristic values; the order maps to the eigenvalue rank inside its
class. Coefficient vectors are normalized so that the angular function has
unit L2 weight pi over a period, with the conventional sign (positive value,
or positive slope for the sine family, at theta = 0).

Radial functions: cross-product Bessel series in the same coefficients,
with J*J products for the first kind and J*Y for the second; both solve the
radial equation y'' - (c - 2 q cosh 2r) y = 0 and stay stable for the
moderate q and r <= 2 used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .bessel import bessel_j_block, bessel_y_block_many
from .errors import ConvergenceError, DomainError, TruncationError

__all__ = [
    "MathieuBasis",
    "solve_characteristic",
    "angular_eval",
    "radial_eval",
    "h_plus",
    "h_minus",
    "f1_plus",
    "f1_minus",
    "asymptotic_angular",
    "g_two_term",
    "g_bound_check",
    "lemma_d1_threshold",
]

DEFAULT_KMAX = 200

_SQRT2 = math.sqrt(2.0)


def _parity_class(family: str, order: int) -> int:
    """0: ce even, 1: ce odd, 2: se odd, 3: se even (order = function order)."""
    if family == "ce":
        if order < 0:
            raise DomainError("ce order must be >= 0")
        return 0 if order % 2 == 0 else 1
    if family == "se":
        if order < 1:
            raise DomainError("se order must be >= 1")
        return 2 if order % 2 == 1 else 3
    raise DomainError(f"unknown Mathieu family {family!r}")


def _rank(cls: int, order: int) -> int:
    if cls == 0:
        return order // 2
    if cls == 1:
        return (order - 1) // 2
    if cls == 2:
        return (order - 1) // 2
    return order // 2 - 1


def _harmonics(cls: int, kmax: int) -> np.ndarray:
    k = np.arange(kmax)
    if cls == 0:
        return 2 * k
    if cls == 1 or cls == 2:
        return 2 * k + 1
    return 2 * k + 2


def _tridiag(cls: int, q: float, kmax: int):
    h = _harmonics(cls, kmax).astype(float)
    d = h * h
    e = np.full(kmax - 1, q)
    if cls == 0:
        e[0] = _SQRT2 * q
    elif cls == 1:
        d[0] = 1.0 + q
    elif cls == 2:
        d[0] = 1.0 - q
    return d, e


@dataclass(frozen=True)
class MathieuBasis:
    """Angular Mathieu function pinned by (family, order, q, kmax).

    `coeffs` are the physical Fourier coefficients against
    cos(h_k theta) (ce) or sin(h_k theta) (se) with h_k the harmonics of the
    parity class; normalized so the squared function integrates to pi over
    [0, 2*pi]. Immutable and safe to share across threads.
    """

    family: str
    order: int
    q: float
    char_value: float
    coeffs: np.ndarray = field(repr=False)
    kmax: int
    parity_class: int

    @property
    def harmonics(self) -> np.ndarray:
        return _harmonics(self.parity_class, self.kmax)

    def recurrence_residual(self) -> float:
        """Max scaled residual of the defining three-term recurrence."""
        a = self.coeffs
        c = self.char_value
        q = self.q
        h = self.harmonics.astype(float)
        res = (c - h * h) * a
        res[:-1] -= q * a[1:]
        res[1:] -= q * a[:-1]
        if self.parity_class == 0:
            res[1] -= q * a[0]  # cos(2theta) row carries 2q against A_0
        elif self.parity_class == 1:
            res[0] -= q * a[0]
        elif self.parity_class == 2:
            res[0] += q * a[0]
        scale = (abs(c) + 2.0 * q + h[-1] ** 2) * np.max(np.abs(a))
        return float(np.max(np.abs(res)) / scale)

    def trailing_coefficient(self) -> float:
        a = np.abs(self.coeffs)
        return float(a[-2:].max() / a.max())


def solve_characteristic(order, family, q, kmax=DEFAULT_KMAX) -> MathieuBasis:
    """Characteristic value and Fourier coefficients of ce_order / se_order."""
    if not (q > 0.0 and math.isfinite(q)):
        raise DomainError("q must be positive and finite")
    cls = _parity_class(family, order)
    rank = _rank(cls, order)
    if kmax < max(order + 20, rank + 2):
        raise DomainError(f"kmax={kmax} too small for order {order}")
    d, e = _tridiag(cls, q, kmax)
    w, v = eigh_tridiagonal(d, e, select="i", select_range=(rank, rank))
    c = float(w[0])
    vec = v[:, 0].copy()
    coeffs = vec
    if cls == 0:
        coeffs = vec.copy()
        coeffs[0] = vec[0] / _SQRT2
    h = _harmonics(cls, kmax)
    if family == "ce":
        sgn = np.sum(coeffs)  # ce at theta = 0
    else:
        sgn = np.sum(h * coeffs)  # slope of se at theta = 0
    if sgn < 0.0:
        coeffs = -coeffs
    basis = MathieuBasis(
        family=family,
        order=order,
        q=float(q),
        char_value=c,
        coeffs=coeffs,
        kmax=kmax,
        parity_class=cls,
    )
    if basis.trailing_coefficient() > 1e-10:
        raise TruncationError(
            f"kmax={kmax} inadequate for {family}_{order} at q={q:g}: "
            f"trailing coefficient {basis.trailing_coefficient():.3e}"
        )
    return basis


def angular_eval(basis: MathieuBasis, theta):
    """ce_m(theta, q) or se_m(theta, q); 2*pi-periodic, vectorized."""
    theta = np.asarray(theta, dtype=float)
    h = basis.harmonics
    arg = np.multiply.outer(theta, h)
    if basis.family == "ce":
        vals = np.cos(arg) @ basis.coeffs
    else:
        vals = np.sin(arg) @ basis.coeffs
    if theta.ndim == 0:
        return float(vals)
    return vals


def angular_eval_deriv(basis: MathieuBasis, theta):
    """d/dtheta of the angular function."""
    theta = np.asarray(theta, dtype=float)
    h = basis.harmonics
    arg = np.multiply.outer(theta, h)
    if basis.family == "ce":
        vals = -np.sin(arg) @ (basis.coeffs * h)
    else:
        vals = np.cos(arg) @ (basis.coeffs * h)
    if theta.ndim == 0:
        return float(vals)
    return vals


def _coeff_cutoff(coeffs: np.ndarray) -> int:
    amax = np.max(np.abs(coeffs))
    keep = np.nonzero(np.abs(coeffs) > 1e-17 * amax)[0]
    return int(keep[-1]) + 1 if keep.size else 1


def _y_block_cols(nmax, xs):
    """Y_k(x) columns for each scalar in xs; also the valid-order count."""
    vals, nvalid = bessel_y_block_many(nmax, xs)
    return vals, int(nvalid.min())


def radial_eval(basis: MathieuBasis, kind: int, r):
    """Modified Mathieu function of the given kind and its r-derivative.

    kind 1 pairs J*J cross products (regular as r -> 0), kind 2 pairs J*Y.
    Returns (value, derivative), vectorized over r >= 0.
    """
    if kind not in (1, 2):
        raise DomainError("radial kind must be 1 or 2")
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    rr = np.atleast_1d(r).astype(float).ravel()
    if np.any(rr < 0.0):
        raise DomainError("radial coordinate must be >= 0")
    cls = basis.parity_class
    sqq = math.sqrt(basis.q)
    u1 = sqq * np.exp(-rr)
    u2 = sqq * np.exp(rr)

    kcut = _coeff_cutoff(basis.coeffs)
    shift = (0, 1, 1, 2)[cls]
    top = kcut + shift  # highest Bessel order entering the series

    j1 = bessel_j_block(top, u1)
    if kind == 1:
        c2 = bessel_j_block(top, u2)
    else:
        c2, nvalid = _y_block_cols(top, u2)
        if nvalid <= top:
            # drop orders the Y recurrence could not reach; demand the
            # corresponding coefficients are already negligible
            amax = np.max(np.abs(basis.coeffs))
            lost = np.abs(basis.coeffs[max(nvalid - shift, 0):kcut])
            if lost.size and np.max(lost) > 1e-12 * amax:
                raise ConvergenceError(
                    "J*Y series truncated by Y overflow before its tail "
                    f"bound: coefficient {np.max(lost) / amax:.2e} remains"
                )
            kcut = max(nvalid - shift, 1)
            top = kcut + shift

    def dblock(block, u):
        d = np.empty_like(block[: top + 1])
        d[0] = -block[1]
        k = np.arange(1, top + 1)[:, None]
        d[1:] = block[:top] - k * block[1 : top + 1] / u[None, :]
        return d

    dj1 = dblock(j1, u1)
    dc2 = dblock(c2, u2)

    sgn = (-1.0) ** np.arange(kcut)
    a = basis.coeffs[:kcut] * sgn
    du1 = -u1  # du1/dr
    du2 = u2

    if cls == 0:
        prod = j1[:kcut] * c2[:kcut]
        dprod = dj1[:kcut] * du1 * c2[:kcut] + j1[:kcut] * dc2[:kcut] * du2
    elif cls == 1:
        prod = j1[:kcut] * c2[1 : kcut + 1] + j1[1 : kcut + 1] * c2[:kcut]
        dprod = (
            dj1[:kcut] * du1 * c2[1 : kcut + 1]
            + j1[:kcut] * dc2[1 : kcut + 1] * du2
            + dj1[1 : kcut + 1] * du1 * c2[:kcut]
            + j1[1 : kcut + 1] * dc2[:kcut] * du2
        )
    elif cls == 2:
        prod = j1[:kcut] * c2[1 : kcut + 1] - j1[1 : kcut + 1] * c2[:kcut]
        dprod = (
            dj1[:kcut] * du1 * c2[1 : kcut + 1]
            + j1[:kcut] * dc2[1 : kcut + 1] * du2
            - dj1[1 : kcut + 1] * du1 * c2[:kcut]
            - j1[1 : kcut + 1] * dc2[:kcut] * du2
        )
    else:
        prod = j1[:kcut] * c2[2 : kcut + 2] - j1[2 : kcut + 2] * c2[:kcut]
        dprod = (
            dj1[:kcut] * du1 * c2[2 : kcut + 2]
            + j1[:kcut] * dc2[2 : kcut + 2] * du2
            - dj1[2 : kcut + 2] * du1 * c2[:kcut]
            - j1[2 : kcut + 2] * dc2[:kcut] * du2
        )

    terms = a[:, None] * prod
    val = terms.sum(axis=0)
    dval = (a[:, None] * dprod).sum(axis=0)

    tail = np.max(np.abs(terms[-1])) if kcut > 1 else 0.0
    scale = np.max(np.abs(terms), initial=1e-300)
    if kcut > 3 and tail > 1e-12 * scale:
        raise ConvergenceError(
            f"Bessel-product series tail {tail / scale:.2e} above 1e-12"
        )
    if scalar:
        return float(val[0]), float(dval[0])
    return val.reshape(np.shape(r)), dval.reshape(np.shape(r))


# ----------------------------------------------------------------------
# large-q asymptotics


def h_plus(n, z, form="sqrt"):
    """Decreasing envelope factor of the dominant asymptotic branch."""
    z = np.asarray(z, dtype=float)
    if form == "sqrt":
        s = np.sin(z)
        return np.sqrt((1.0 - s) ** n / (1.0 + s) ** (n + 1))
    c = np.cos(0.5 * z + 0.25 * math.pi)
    return 2.0 ** (n + 0.5) * c ** (2 * n + 1) / np.cos(z) ** (n + 1)


def h_minus(n, z, form="sqrt"):
    z = np.asarray(z, dtype=float)
    if form == "sqrt":
        s = np.sin(z)
        return np.sqrt((1.0 + s) ** n / (1.0 - s) ** (n + 1))
    c = np.sin(0.5 * z + 0.25 * math.pi)
    return 2.0 ** (n + 0.5) * c ** (2 * n + 1) / np.cos(z) ** (n + 1)


def f1_plus(n, z):
    z = np.asarray(z, dtype=float)
    return (2.0 * n + 1.0 - (n * n + n + 1.0) * np.sin(z)) / (8.0 * np.cos(z) ** 2)


def f1_minus(n, z):
    z = np.asarray(z, dtype=float)
    return (2.0 * n + 1.0 + (n * n + n + 1.0) * np.sin(z)) / (8.0 * np.cos(z) ** 2)


def _branches(n, z, q, terms):
    sq = math.sqrt(q)
    cp = np.ones_like(np.asarray(z, dtype=float))
    cm = np.ones_like(cp)
    if terms == 2:
        cp = cp + f1_plus(n, z) / sq
        cm = cm + f1_minus(n, z) / sq
    up = np.exp(2.0 * sq * np.sin(z)) * h_plus(n, z) * cp
    um = np.exp(-2.0 * sq * np.sin(z)) * h_minus(n, z) * cm
    return up, um


def asymptotic_angular(n, z, q, terms=2, z_ref=0.2, kmax=DEFAULT_KMAX):
    """Two-term (or one-term) large-q approximations of the cosine-type
    function of order n and the sine-type function of order n+1, with the
    overall prefactors calibrated against direct evaluation at z_ref.

    Returns (ce_approx, se_approx) on the requested z grid. Raises if the
    first-order correction of the dominant branch is not small (the
    expansion is then outside its regime)."""
    if terms not in (1, 2):
        raise DomainError("terms must be 1 or 2")
    z = np.asarray(z, dtype=float)
    zz = np.concatenate([np.atleast_1d(z).ravel(), [z_ref]])
    if np.any(zz < 0.0) or np.any(zz >= 0.5 * math.pi):
        raise DomainError("z must lie in [0, pi/2)")
    sq = math.sqrt(q)
    corr = np.max(np.abs(f1_plus(n, zz))) / sq
    if corr >= 0.5:
        raise DomainError(
            f"q={q:g} too small for the asymptotic regime at these z "
            f"(first correction {corr:.3f} >= 0.5)"
        )
    ce_basis = solve_characteristic(n, "ce", q, kmax)
    se_basis = solve_characteristic(n + 1, "se", q, kmax)
    up, um = _branches(n, z, q, terms)
    up_ref, um_ref = _branches(n, np.asarray(z_ref), q, terms)
    c_pref = angular_eval(ce_basis, z_ref) / float(up_ref + um_ref)
    s_pref = angular_eval(se_basis, z_ref) / float(up_ref - um_ref)
    return c_pref * (up + um), s_pref * (up - um)


def g_two_term(n, z, q):
    """Two-term surrogates of the exponent-stripped branch combinations
    (plus, minus)."""
    z = np.asarray(z, dtype=float)
    sq = math.sqrt(q)
    damp = np.exp(-4.0 * sq * np.sin(z))
    gp = h_plus(n, z) * (1.0 + f1_plus(n, z) / sq)
    gm = h_minus(n, z) * (1.0 + f1_minus(n, z) / sq)
    return gp + damp * gm, gp - damp * gm


def g_bound_check(n, alpha, beta, gamma, q, grid=100):
    """True iff both sandwich bounds for the stripped combinations hold on
    `grid` interior points of (0, alpha) and (beta, gamma)."""
    if not (0.0 < alpha < beta < gamma < 0.5 * math.pi):
        raise DomainError("need 0 < alpha < beta < gamma < pi/2")
    sq = math.sqrt(q)
    z1 = np.linspace(0.0, alpha, grid + 2)[1:-1]
    z2 = np.linspace(beta, gamma, grid + 2)[1:-1]
    gp1, gm1 = g_two_term(n, z1, q)
    upper = 1.5 * (1.0 + float(h_minus(n, alpha)) * np.exp(-4.0 * sq * np.sin(z1)))
    ok_upper = np.all(np.abs(gp1) < upper) and np.all(np.abs(gm1) < upper)
    gp2, gm2 = g_two_term(n, z2, q)
    lower = 0.5 * float(h_plus(n, gamma))
    ok_lower = np.all(np.abs(gp2) > lower) and np.all(np.abs(gm2) > lower)
    return bool(ok_upper and ok_lower)


def lemma_d1_threshold(gamma, n, grid=400):
    """Empirical parameter threshold above which the two-term correction
    stays below 1/2 on (0, gamma)."""
    if not (0.0 < gamma < 0.5 * math.pi):
        raise DomainError("gamma must lie in (0, pi/2)")
    z = np.linspace(0.0, gamma, grid + 1)
    m = max(np.max(np.abs(f1_plus(n, z))), np.max(np.abs(f1_minus(n, z))))
    return float((2.0 * m) ** 2)
