"""Numerical kernels: K-Bessel, generalized Whittaker values, the two
definite integrals with closed forms, Gaussian eigen-operator checks, and
the holomorphic kernels on the upper half-plane and the tube domain.

The K-Bessel function is evaluated from the integral representation

    K_v(x) = int_0^infty cosh(v s) exp(-x cosh s) ds      (x > 0)

by adaptive quadrature with explicit truncation; a fixed-panel vectorized
evaluator backs the integral oracles.  All checks report residuals rather
than asserting, so callers decide the tolerance policy.
"""

from __future__ import annotations

import math
import cmath

import numpy as np
from scipy import integrate

from . import jordan
from .jordan import JordanElement, jordan_cross, jordan_norm, jordan_sharp, trace_pair
from .liealg import (
    J2_V8,
    V7Vector,
    V8Vector,
    jordan_basis,
    n_H2,
    pair_V7,
    q_V7,
    symplectic_V8,
    v8_from_coords,
)

__all__ = [
    "bessel_k",
    "bessel_k_grid",
    "k_half_closed",
    "VellVector",
    "WhittakerInput",
    "whittaker_value",
    "whittaker_norm_constant",
    "defint2",
    "defint2_quadrature",
    "defint1_value",
    "defint1_check",
    "gaussian_db_check",
    "gaussian_dt_check",
    "it_kernel_delta",
    "sl2_kernel",
    "orth_kernel",
]


# ---------------------------------------------------------------------------
# K-Bessel
# ---------------------------------------------------------------------------


def _kv_smax(v, x, tiny):
    """Truncation point: cosh(v s) exp(-x cosh s) < tiny beyond s_max."""
    s = 1.0
    while v * s + math.log1p(1.0) - x * math.cosh(s) > math.log(tiny):
        s += 0.5
        if s > 700.0:
            break
    return s


def bessel_k(v, x, tol=1e-12):
    """K_v(x) for real order v >= 0 and x > 0 by adaptive quadrature.

    Raises if x <= 0 or if the quadrature error estimate exceeds tol.
    """
    if x <= 0:
        raise ValueError("bessel_k requires x > 0")
    v = abs(float(v))
    tiny = tol * 1e-3 * math.exp(-x) if x < 700 else 1e-320
    smax = _kv_smax(v, x, max(tiny, 1e-320))

    def f(s):
        return math.cosh(v * s) * math.exp(-x * math.cosh(s))

    val, err = integrate.quad(f, 0.0, smax, epsabs=tol * 0.1, epsrel=1e-13, limit=200)
    if err > max(tol, abs(val) * 1e-8):
        raise ArithmeticError(f"K_{v}({x}): quadrature error {err} above budget")
    return val


def bessel_k_grid(v, xs, panels=None):
    """Vectorized K_v on an array of positive arguments.

    Fixed-order Gauss-Legendre panels on [0, s_max]; accurate to ~1e-12
    relative for x in [1e-3, 600].  Used as the quadrature backend of the
    integral oracles, where many evaluations are needed.
    """
    xs = np.asarray(xs, dtype=float)
    if np.any(xs <= 0):
        raise ValueError("bessel_k_grid requires positive arguments")
    v = abs(float(v))
    xmin = float(xs.min())
    smax = _kv_smax(v, xmin, 1e-320)
    if panels is None:
        panels = max(8, int(2 * smax))
    nodes, weights = np.polynomial.legendre.leggauss(40)
    edges = np.linspace(0.0, smax, panels + 1)
    out = np.zeros_like(xs)
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        s = mid + half * nodes
        ch = np.cosh(s)
        base = np.cosh(v * s) * weights * half
        out += np.exp(-np.multiply.outer(xs, ch)) @ base
    return out


def k_half_closed(x):
    """K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}."""
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)


# ---------------------------------------------------------------------------
# V_ell vectors and Whittaker values
# ---------------------------------------------------------------------------


class VellVector:
    """Vector in Sym^{2l}(C^2): coefficients u_v of x^{l+v} y^{l-v}."""

    __slots__ = ("ell", "coeffs")

    def __init__(self, ell, coeffs):
        coeffs = tuple(complex(c) for c in coeffs)
        if len(coeffs) != 2 * ell + 1:
            raise ValueError("need 2l+1 coefficients")
        self.ell = ell
        self.coeffs = coeffs

    def coeff(self, v):
        """Coefficient of x^{l+v} y^{l-v}, v in [-l, l]."""
        return self.coeffs[v + self.ell]

    def norm_squared(self):
        ell = self.ell
        return sum(
            math.factorial(ell + v) * math.factorial(ell - v) * abs(self.coeff(v)) ** 2
            for v in range(-ell, ell + 1)
        )

    def norm(self):
        return math.sqrt(self.norm_squared())

    def __add__(self, other):
        if self.ell != other.ell:
            raise ValueError("weight mismatch")
        return VellVector(self.ell, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self.ell != other.ell:
            raise ValueError("weight mismatch")
        return VellVector(self.ell, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, s):
        return VellVector(self.ell, [s * a for a in self.coeffs])

    def __rmul__(self, s):
        return self.scale(s)

    def __repr__(self):
        return f"VellVector(ell={self.ell}, coeffs={list(self.coeffs)})"

    @staticmethod
    def zero(ell):
        return VellVector(ell, [0.0] * (2 * ell + 1))


class WhittakerInput:
    """Data for a generalized Whittaker value: alpha = alpha_w(g) != 0,
    nu = nu(g) > 0, and the weight."""

    __slots__ = ("alpha", "nu", "ell")

    def __init__(self, alpha, nu, ell):
        alpha = complex(alpha)
        if alpha == 0:
            raise ValueError("alpha must be nonzero")
        if not nu > 0:
            raise ValueError("nu must be positive")
        self.alpha, self.nu, self.ell = alpha, float(nu), int(ell)


def whittaker_value(inp, tol=1e-12):
    """The V_ell-valued kernel

    nu^l |nu| sum_v (|a|/a)^v K_v(|a|) x^{l+v} y^{l-v} / ((l+v)!(l-v)!).
    """
    ell = inp.ell
    a = inp.alpha
    mod = abs(a)
    phase = mod / a  # (|a|/a)
    pref = inp.nu ** ell * abs(inp.nu)
    coeffs = []
    kv = {v: bessel_k(v, mod, tol=tol) for v in range(ell + 1)}
    for v in range(-ell, ell + 1):
        c = (
            pref
            * phase ** v
            * kv[abs(v)]
            / (math.factorial(ell + v) * math.factorial(ell - v))
        )
        coeffs.append(c)
    return VellVector(ell, coeffs)


def whittaker_norm_constant(ell):
    """C_l = (sum_v 1/((l+v)!(l-v)!))^{1/2}; then
    ||W_{l,w}(g)|| <= C_l nu^{l+1} K_l(|alpha|)."""
    return math.sqrt(
        sum(
            1.0 / (math.factorial(ell + v) * math.factorial(ell - v))
            for v in range(-ell, ell + 1)
        )
    )


# ---------------------------------------------------------------------------
# definite integrals
# ---------------------------------------------------------------------------


def defint2(v, z, beta):
    """Closed form of int_R ((z+s b)/|z+s b|)^v K_v(|z+s b|) ds:

        pi (sgn(d) i)^v  b^v / |b|^{v+1}  e^{-|d|},
        d = Im(conj(b) z) / |b|.

    Raises when d = 0 (the line z + R b meets 0).
    """
    z, beta = complex(z), complex(beta)
    if beta == 0:
        raise ValueError("beta must be nonzero")
    delta = (beta.conjugate() * z).imag / abs(beta)
    if delta == 0:
        raise ValueError("degenerate configuration: Im(conj(beta) z) = 0")
    sgn = 1.0 if delta > 0 else -1.0
    return (
        math.pi
        * (sgn * 1j) ** v
        * beta ** v
        / abs(beta) ** (v + 1)
        * math.exp(-abs(delta))
    )


def defint2_quadrature(v, z, beta, smax=None, n=4000):
    """Quadrature oracle for defint2 along s in [-smax, smax]."""
    z, beta = complex(z), complex(beta)
    delta = (beta.conjugate() * z).imag / abs(beta)
    if smax is None:
        # |z + s b| >= |b||s| - |z|; K_v decays like e^{-t}
        smax = (abs(z) + abs(delta) + 60.0) / abs(beta)
    nodes, weights = np.polynomial.legendre.leggauss(60)
    panels = max(40, int(n / 60))
    edges = np.linspace(-smax, smax, panels + 1)
    total = 0.0 + 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        s = mid + half * nodes
        w = z + s * beta
        mods = np.abs(w)
        kv = bessel_k_grid(v, mods)
        phases = (w / mods) ** v
        total += np.sum(weights * half * phases * kv)
    return total


def defint1_value(v, mu, lam, tmax=None, n=4000):
    """Numerical value of int_R e^{-t^2} (z/|z|)^v K_v(|z|) dt with
    z = (t + i lam^2)^2 - mu."""
    if mu <= 0 or lam <= 0:
        raise ValueError("mu and lambda must be positive")
    if tmax is None:
        tmax = 7.0
    nodes, weights = np.polynomial.legendre.leggauss(60)
    panels = max(40, int(n / 60))
    edges = np.linspace(-tmax, tmax, panels + 1)
    total = 0.0 + 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        t = mid + half * nodes
        z = (t + 1j * lam ** 2) ** 2 - mu
        mods = np.abs(z)
        kv = bessel_k_grid(v, mods)
        phases = (z / mods) ** v
        total += np.sum(weights * half * np.exp(-t * t) * phases * kv)
    return total


def defint1_check(v, mu, lam, tol=1e-4):
    """Value of the integral plus the exponential law and sign checks.

    The integral equals (-1)^v C' e^{-mu} with C' > 0 independent of mu, so
    value(mu+1)/value(mu) = e^{-1} and (-1)^v value is a positive real.
    """
    val = defint1_value(v, mu, lam)
    val2 = defint1_value(v, mu + 1.0, lam)
    ratio = val2 / val
    ratio_ok = abs(ratio - math.exp(-1.0)) <= tol
    signed = (-1) ** v * val
    sign_ok = signed.real > 0 and abs(signed.imag) <= tol * abs(signed)
    return val, bool(ratio_ok and sign_ok)


# ---------------------------------------------------------------------------
# Gaussian eigen-operator checks (Heisenberg Levi, weight ell' side)
# ---------------------------------------------------------------------------


def _jordan_float(alg, coords):
    return JordanElement.from_coords(alg, [float(c) for c in coords])


def _iota_float(b, y):
    nb = jordan_norm(b)
    w = jordan_cross(jordan_sharp(b), y) - b.scale(trace_pair(b, y) / 2.0)
    return w.scale(1.0 / nb)


def _db_pair_matrix(bf, basis):
    """The coefficient matrix (iota_B(x_k^vee), x_j^vee) of D_B."""
    alg = bf.algebra
    dj = len(basis)
    gram = np.array(
        [[float(trace_pair(basis[i], basis[j])) for j in range(dj)] for i in range(dj)]
    )
    ginv = np.linalg.inv(gram)
    dual = []
    for k in range(dj):
        coords = ginv[:, k]
        acc = None
        for i, c in enumerate(coords):
            t = basis[i].scale(float(c))
            acc = t if acc is None else acc + t
        dual.append(acc)
    m = np.zeros((dj, dj))
    for k in range(dj):
        ik = _iota_float(bf, dual[k])
        for j in range(dj):
            m[j, k] = float(trace_pair(ik, dual[j]))
    return m, dual


def _hessian_apply(f, x, m, h=1e-4, richardson=True):
    """sum_{j,k} m[j,k] d_j d_k f at x by central differences, optionally
    Richardson extrapolated once."""
    dj = len(x)

    def quad_form(step):
        total = 0.0 + 0.0j
        f0 = f(x)
        for j in range(dj):
            for k in range(j, dj):
                c = m[j, k] + (m[k, j] if k != j else 0.0)
                if c == 0.0:
                    continue
                ej = np.zeros(dj)
                ej[j] = step
                ek = np.zeros(dj)
                ek[k] = step
                if j == k:
                    d2 = (f(x + ej) - 2.0 * f0 + f(x - ej)) / step ** 2
                    total += m[j, j] * d2
                else:
                    d2 = (
                        f(x + ej + ek)
                        - f(x + ej - ek)
                        - f(x - ej + ek)
                        + f(x - ej - ek)
                    ) / (4.0 * step ** 2)
                    total += c * d2
        return total

    if not richardson:
        return quad_form(h)
    a, b = quad_form(h), quad_form(h / 2.0)
    return (4.0 * b - a) / 3.0


def gaussian_db_check(b, sample_points=None, tol=1e-5, c0=2.0, cv=2.0, rng=None):
    """Check the D_B eigen-identities on the Gaussian phi_0 attached to a
    positive definite B in J.

    phi_0(t0 1 + v) = exp(-c0 pi (B,1) t0^2) exp(cv pi (B, v#)), where V is
    the orthogonal complement {v : (B, 1, v) = 0}.  Verifies by central
    finite differences that

      (4 pi i) D_B phi_0 = (-c0 pi + 2 c0^2 pi^2 (B,1) t0^2
                            + cv pi (dim J - 1) + 2 cv^2 pi^2 (B,v#)) phi_0

    at the sample points, that v -> (B, v#) is negative definite on V, that
    D_B(e^{2 pi i C(B x y, x)}) = 2 pi i C^2 (B, y#) e^{2 pi i C(B x y, x)},
    and the resulting Weil eigenvalue (-i/2)(dim J - 2) when c0 = cv = 2.
    Returns a report dict with the residuals.
    """
    if not jordan.is_positive_jordan(b):
        raise ValueError("B must be positive definite")
    alg = b.algebra
    dj = jordan.jordan_algebra_dim(alg)
    bf = _jordan_float(alg, b.coords())
    one = _jordan_float(alg, jordan.identity(alg).coords())
    b_one = jordan_cross(bf, one)
    b_one_one = trace_pair(b_one, one)

    # basis adapted to J = R 1 + V
    basis_j, _ = jordan_basis(alg)
    lin = np.array([float(trace_pair(b_one, _jordan_float(alg, e.coords()))) for e in basis_j])
    # nullspace of lin gives V
    q, _ = np.linalg.qr(np.column_stack([lin / np.linalg.norm(lin)] + []) , mode="complete")
    vbasis_coords = [q[:, i] for i in range(1, dj)]
    basis = [one] + [_jordan_float(alg, c) for c in vbasis_coords]

    b1 = float(trace_pair(bf, one))

    def decompose(xc):
        xe = _jordan_float(alg, xc)
        t0 = trace_pair(b_one, xe) / b_one_one
        v = xe - one.scale(t0)
        return t0, v, xe

    def phi0(xc):
        t0, v, _ = decompose(xc)
        return math.exp(-c0 * math.pi * b1 * t0 * t0 + cv * math.pi * trace_pair(bf, jordan_sharp(v)))

    m, dual = _db_pair_matrix(bf, [_jordan_float(alg, e.coords()) for e in basis_j])

    if rng is None:
        import random

        rng = random.Random(20)
    if sample_points is None:
        sample_points = [
            np.array([rng.uniform(-0.4, 0.4) for _ in range(dj)]) for _ in range(6)
        ]
        sample_points[0] = np.zeros(dj)

    report = {"points": [], "max_rel_err": 0.0, "db2_max_rel_err": 0.0}
    for x in sample_points:
        t0, v, xe = decompose(x)
        lhs = _hessian_apply(phi0, np.asarray(x, dtype=float), m)
        rhs = (
            -c0 * math.pi
            + 2.0 * c0 ** 2 * math.pi ** 2 * b1 * t0 * t0
            + cv * math.pi * (dj - 1)
            + 2.0 * cv ** 2 * math.pi ** 2 * trace_pair(bf, jordan_sharp(v))
        ) * phi0(x)
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-30)
        # Weil eigenvalue: d omega(E12 - E21) phi0 = 2 pi i (B,x#) phi0 + D_B phi0
        eig = (
            2j * math.pi * trace_pair(bf, jordan_sharp(xe)) * phi0(x)
            + lhs / (4j * math.pi)
        ) / phi0(x)
        report["points"].append(
            {
                "t0": t0,
                "lhs": complex(lhs),
                "rhs": complex(rhs),
                "rel_err": rel,
                "weil_eigenvalue": complex(eig),
            }
        )
        report["max_rel_err"] = max(report["max_rel_err"], rel)

    # negative definiteness of v -> (B, v#) on V
    nv = dj - 1
    gram = np.zeros((nv, nv))
    vb = basis[1:]
    for i in range(nv):
        for j in range(nv):
            gram[i, j] = float(trace_pair(bf, jordan_cross(vb[i], vb[j]))) / 2.0
    eigvals = np.linalg.eigvalsh(gram)
    report["v_form_eigenvalues"] = eigvals.tolist()
    report["v_form_negative_definite"] = bool(np.all(eigvals < 0))

    # Lemma on oscillating exponentials: D_B e^{2 pi i C (B x y, x)}
    C = 1.0
    for _ in range(3):
        yc = np.array([rng.uniform(-0.5, 0.5) for _ in range(dj)])
        ye = _jordan_float(alg, yc)
        by = jordan_cross(bf, ye)

        def osc(xc):
            xe = _jordan_float(alg, xc)
            return cmath.exp(2j * math.pi * C * trace_pair(by, xe))

        x = np.array([rng.uniform(-0.3, 0.3) for _ in range(dj)])
        lhs = _hessian_apply(osc, x, m) / (4j * math.pi)
        rhs = 2j * math.pi * C ** 2 * trace_pair(bf, jordan_sharp(ye)) * osc(x)
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-30)
        report["db2_max_rel_err"] = max(report["db2_max_rel_err"], rel)

    report["expected_weil_eigenvalue"] = complex(0, -0.5 * (dj - 2))
    report["pass"] = bool(
        report["max_rel_err"] <= tol
        and report["db2_max_rel_err"] <= tol
        and report["v_form_negative_definite"]
    )
    return report


# ---------------------------------------------------------------------------
# Gaussian eigen-operator checks (orthogonal Levi, weight ell_1 side)
# ---------------------------------------------------------------------------


def _qt0_gram(tprime):
    """Gram matrix of q_T^0(x) = (1/2) <x, J_2' x> on X coordinates."""
    alg = tprime.algebra
    dim = 4 * alg.dim

    def q(coords):
        x = v8_from_coords(alg, list(coords) + [0] * (4 * alg.dim))
        return symplectic_V8(tprime, x, J2_V8(x)) / 2

    g = np.zeros((dim, dim))
    basis = np.eye(dim)
    qs = [q(basis[i]) for i in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            val = q(basis[i] + basis[j]) - qs[i] - qs[j]
            g[i, j] = g[j, i] = float(val) / 2.0
        g[i, i] = float(qs[i])
    return g


def _dt_pair_matrix(tprime):
    """Coefficient matrix <(J_2')^{-1} y_a, y_b> of D_T in X coordinates."""
    alg = tprime.algebra
    d = 4 * alg.dim

    def xvec(i):
        coords = [0] * (8 * alg.dim)
        coords[i] = 1
        return v8_from_coords(alg, coords)

    def yvec(j):
        coords = [0] * (8 * alg.dim)
        coords[d + j] = 1
        return v8_from_coords(alg, coords)

    s = np.array(
        [[float(symplectic_V8(tprime, xvec(i), yvec(j))) for j in range(d)] for i in range(d)]
    )
    cmat = np.linalg.inv(s).T  # y_a = sum_j cmat[a, j] Y_j
    # (J2')^{-1} = -J2'
    j2_inv_y = []  # coordinates in X of (J2')^{-1} y_a
    for a in range(d):
        acc = np.zeros(8 * alg.dim)
        for j in range(d):
            if cmat[a, j]:
                img = J2_V8(yvec(j)).scale(-1)
                acc = acc + cmat[a, j] * np.array([float(t) for t in img.coords()])
        j2_inv_y.append(acc)
    out = np.zeros((d, d))
    for a in range(d):
        xa = v8_from_coords(alg, [float(t) for t in j2_inv_y[a]])
        for b in range(d):
            # pair <x, y_b> = sum_j cmat[b,j] <x, Y_j>
            val = 0.0
            for j in range(d):
                if cmat[b, j]:
                    val += cmat[b, j] * float(symplectic_V8(tprime, xa, yvec(j)))
            out[a, b] = val
    return out


def gaussian_dt_check(tprime, tol=1e-4, npoints=5, rng=None):
    """Check d omega(e - f) phi_0 = -(i n / 2) phi_0 with n = 4 dim(C) for
    the Gaussian phi_0(x) = exp(-pi <x, J_2' x>) on X(R).

    Verifies positive definiteness of q_T^0, the multiplication identity
    d omega(e) phi_0 = -2 pi i q_T^0 phi_0, the finite-difference identity
    d omega(-f) phi_0 = -(1/(4 pi i)) D_T phi_0, and the resulting sum.
    """
    if not (tprime.diag[1] + tprime.diag[2] > 0 and n_H2(tprime) > 0):
        raise ValueError("T' must be positive definite")
    alg = tprime.algebra
    d = 4 * alg.dim
    gram = _qt0_gram(tprime)
    eigvals = np.linalg.eigvalsh(gram)
    pos_def = bool(np.all(eigvals > 0))

    pair = _dt_pair_matrix(tprime)

    def q0(x):
        return float(x @ gram @ x)

    def phi0(x):
        return math.exp(-2.0 * math.pi * q0(x))

    if rng is None:
        import random

        rng = random.Random(33)
    pts = [np.zeros(d)] + [
        np.array([rng.uniform(-0.3, 0.3) for _ in range(d)]) for _ in range(npoints - 1)
    ]
    worst = 0.0
    eigs = []
    for x in pts:
        dt = _hessian_apply(phi0, x, pair)
        domega_e = -2j * math.pi * q0(x) * phi0(x)
        domega_mf = -dt / (4j * math.pi)
        total = (domega_e + domega_mf) / phi0(x)
        expected = complex(0.0, -0.5 * d)
        worst = max(worst, abs(total - expected) / abs(expected))
        eigs.append(complex(total))
    return {
        "gram_eigenvalues": eigvals.tolist(),
        "positive_definite": pos_def,
        "eigenvalue_estimates": eigs,
        "expected": complex(0.0, -0.5 * d),
        "max_rel_err": worst,
        "pass": bool(pos_def and worst <= tol),
    }


# ---------------------------------------------------------------------------
# the I_T kernel exponent
# ---------------------------------------------------------------------------


def it_kernel_delta(tprime, b11p, dprime, x_pair, cprime_h2=None):
    """delta(x) for the explicit archimedean integral:

        delta(x) = 2 pi ((T',E) - b'_11 + d' - (T',u#) - (T' x e11, v#))

    for w = 2 pi (0, b', c', d') with b' = b'_11 e11 - e11 x T', c'_11 = 0
    and x = (u, v) in X(R).  Positive whenever b'_11 < 0 < d'.
    """
    alg = tprime.algebra
    one = jordan.identity(alg)
    e11 = jordan.basis_e(alg, 1)
    E = one - e11
    u, v = x_pair
    vu = jordan.from_blocks(alg, x2=u[0], x3=u[1])
    vv = jordan.from_blocks(alg, x2=v[0], x3=v[1])
    te = trace_pair(tprime, E)
    t_e11 = jordan_cross(tprime, e11)
    val = (
        te
        - b11p
        + dprime
        - trace_pair(tprime, jordan_sharp(vu))
        - trace_pair(t_e11, jordan_sharp(vv))
    )
    return 2.0 * math.pi * float(val)


# ---------------------------------------------------------------------------
# holomorphic kernels
# ---------------------------------------------------------------------------


def sl2_kernel(r, n, z):
    """W_{SL2,r,n} evaluated at the standard representative of z = x + iy:

        g_z = [[y^{1/2}, x y^{-1/2}], [0, y^{-1/2}]],

    so j_{1/2}(g_z, i)^{-2r} = y^{r/2} and the value is y^{r/2} e^{2 pi i n z}.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    return z.imag ** (r / 2.0) * cmath.exp(2j * math.pi * n * z)


def orth_kernel(ell1, u1, zx, zy, jfactor=1.0):
    """The tube-domain kernel j^{-ell1} e^{2 pi i (u1, Z)} at Z = X + iY.

    u1, zx, zy are V7Vectors supported in V5; requires Y > 0, i.e.
    q(Y) > 0 and (Y, b2 + b-2) > 0.
    """
    one_t = V7Vector(u1.alg, 0, 1, 0, 0, 1, 0)
    if not (q_V7(zy) > 0 and pair_V7(zy, one_t) > 0):
        raise ValueError("imaginary part is not in the positive cone")
    pairing = complex(pair_V7(u1, zx)) + 1j * complex(pair_V7(u1, zy))
    return jfactor ** (-ell1) * cmath.exp(2j * math.pi * pairing)
