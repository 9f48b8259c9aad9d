"""Concrete model of the Z/3-graded Lie algebra g(J).

    g(J) = sl3 + m(J)^0 + (V3 x J) + (V3 x J)^vee

An element is a traceless 3x3 block, an endomorphism of J (the normal form
of a sum of generators Phi'_{gamma,x}), and two triples of Jordan elements
for the V3 x J and V3^vee x J^vee parts.  The bracket conventions are
pinned so that all of the following hold simultaneously:

    [E12, E21] = E11 - E22
    [v3 x e11, d3 x e11] = (1/3)(E11 + E22 - 2 E33) - Phi'_{e11,e11}
    [(u,u')_X, (v,v')_Y] = (u,v) v1 x e11 + d3 x (e11 X (u x v'))
                            - d3 x (u' X v) - (u',v') E23

together with the Jacobi identity.  Here Phi_{gamma,x}(z) = -gamma X (x X z)
+ (gamma, z) x on J, Phi acts on J^vee by minus the pairing-adjoint, and
Phi' = Phi + (1/3)(gamma, x).

The subspaces V7 (quadratic space of the orthogonal Levi) and V8 (the
symplectic slice) are exposed with their own coordinate types, along with
the special maps J_{2,V8}, J_2', J_2'', J_T and the parabolic gradings for
h_P, h_Q, h_R.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import jordan
from .composition import CompositionElement
from .jordan import JordanElement, jordan_cross, jordan_sharp, trace_pair
from .wj import FreudenthalVector

__all__ = [
    "LieElement",
    "V7Vector",
    "V8Vector",
    "jordan_basis",
    "phi_matrix",
    "phi_prime_matrix",
    "phi_action",
    "bracket",
    "sl3_E",
    "h_P",
    "h_Q",
    "h_R",
    "grading_decompose",
    "exp_ad",
    "weyl_w",
    "q_V7",
    "pair_V7",
    "TR_map",
    "prV7_map",
    "symplectic_V8",
    "J2_V8",
    "J2prime",
    "J2dprime",
    "JT_apply",
    "normal_T_prime",
    "quaternionic_rank",
]


# ---------------------------------------------------------------------------
# basis bookkeeping for J
# ---------------------------------------------------------------------------


_BASIS_CACHE = {}


def jordan_basis(alg):
    """Ordered basis of J matching JordanElement.coords()."""
    key = alg.tag
    if key not in _BASIS_CACHE:
        dj = jordan.jordan_algebra_dim(alg)
        basis = []
        for i in range(dj):
            coords = [0] * dj
            coords[i] = 1
            basis.append(JordanElement.from_coords(alg, coords))
        # Gram matrix of the trace pairing is diagonal in this basis
        gram = [1, 1, 1]
        for _ in range(3):
            gram.extend(2 * d for d in alg.norm_diagonal())
        _BASIS_CACHE[key] = (tuple(basis), tuple(gram))
    return _BASIS_CACHE[key]


def _obj_zeros(n, m):
    a = np.empty((n, m), dtype=object)
    a[:] = 0
    return a


def _obj_matmul(a, b):
    return a @ b


def phi_matrix(alg, gamma, x):
    """Matrix of Phi_{gamma,x}: z -> -gamma X (x X z) + (gamma, z) x on J."""
    basis, _ = jordan_basis(alg)
    dj = len(basis)
    m = np.empty((dj, dj), dtype=object)
    for j, z in enumerate(basis):
        img = (-jordan_cross(gamma, jordan_cross(x, z))) + x.scale(trace_pair(gamma, z))
        col = img.coords()
        for i in range(dj):
            m[i, j] = col[i]
    return m


def phi_prime_matrix(alg, gamma, x):
    """Matrix of Phi'_{gamma,x} = Phi_{gamma,x} + (1/3)(gamma,x) id; lies in
    the norm-derivation algebra m(J)^0."""
    m = phi_matrix(alg, gamma, x)
    s = Fraction(trace_pair(gamma, x), 3)
    if s:
        for i in range(m.shape[0]):
            m[i, i] = m[i, i] + s
    return m


def phi_action(gamma, x, z, dual=False):
    """Apply Phi_{gamma,x} to z in J, or to z in J^vee when dual=True.

    On J^vee the action is c -> x X (gamma X c) - (x, c) gamma, which equals
    minus the trace-pairing adjoint of the action on J.
    """
    if dual:
        return jordan_cross(x, jordan_cross(gamma, z)) - gamma.scale(trace_pair(x, z))
    return (-jordan_cross(gamma, jordan_cross(x, z))) + x.scale(trace_pair(gamma, z))


def _dual_action_matrix(alg, m):
    """Action on J^vee of the m(J)-matrix m acting on J: minus the adjoint
    with respect to the (diagonal) trace-pairing Gram matrix."""
    _, gram = jordan_basis(alg)
    dj = len(gram)
    out = np.empty((dj, dj), dtype=object)
    for i in range(dj):
        for j in range(dj):
            out[i, j] = -(Fraction(gram[j], gram[i]) * m[j, i])
    return out


# ---------------------------------------------------------------------------
# LieElement
# ---------------------------------------------------------------------------


def _zero_j(alg):
    return jordan.diag(alg, 0, 0, 0)


class LieElement:
    """Element of g(J) = sl3 + m(J)^0 + (V3 x J) + (V3 x J)^vee."""

    __slots__ = ("alg", "sl3", "m0", "pos", "neg")

    def __init__(self, alg, sl3=None, m0=None, pos=None, neg=None):
        dj = jordan.jordan_algebra_dim(alg)
        self.alg = alg
        self.sl3 = _obj_zeros(3, 3) if sl3 is None else np.array(sl3, dtype=object)
        self.m0 = _obj_zeros(dj, dj) if m0 is None else m0
        z = _zero_j(alg)
        self.pos = tuple(pos) if pos is not None else (z, z, z)
        self.neg = tuple(neg) if neg is not None else (z, z, z)

    def copy_with(self, sl3=None, m0=None, pos=None, neg=None):
        return LieElement(
            self.alg,
            self.sl3 if sl3 is None else sl3,
            self.m0 if m0 is None else m0,
            self.pos if pos is None else pos,
            self.neg if neg is None else neg,
        )

    def __add__(self, other):
        return LieElement(
            self.alg,
            self.sl3 + other.sl3,
            self.m0 + other.m0,
            tuple(a + b for a, b in zip(self.pos, other.pos)),
            tuple(a + b for a, b in zip(self.neg, other.neg)),
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        return LieElement(
            self.alg,
            self.sl3 * s,
            self.m0 * s,
            tuple(p.scale(s) for p in self.pos),
            tuple(p.scale(s) for p in self.neg),
        )

    def __rmul__(self, s):
        return self.scale(s)

    def is_zero(self):
        return (
            not self.sl3.any()
            and not self.m0.any()
            and all(p.is_zero() for p in self.pos)
            and all(p.is_zero() for p in self.neg)
        )

    def __eq__(self, other):
        return isinstance(other, LieElement) and (self - other).is_zero()

    def __repr__(self):
        return (
            f"Lie(sl3={self.sl3.tolist()}, m0_nonzero={bool(self.m0.any())}, "
            f"pos={self.pos}, neg={self.neg})"
        )

    def as_float_vector(self):
        """Flat float coordinate vector (for numerical checks)."""
        parts = [float(v) for v in self.sl3.ravel()]
        parts.extend(float(v) for v in self.m0.ravel())
        for p in self.pos:
            parts.extend(float(v) for v in p.coords())
        for p in self.neg:
            parts.extend(float(v) for v in p.coords())
        return np.array(parts)


def sl3_E(alg, i, j, coeff=1):
    """coeff * E_ij inside sl3 (i != j), or a diagonal combination."""
    m = _obj_zeros(3, 3)
    m[i - 1, j - 1] = coeff
    return LieElement(alg, sl3=m)


def sl3_diag(alg, d1, d2, d3):
    m = _obj_zeros(3, 3)
    m[0, 0], m[1, 1], m[2, 2] = d1, d2, d3
    return LieElement(alg, sl3=m)


def pos_gen(alg, i, x):
    """v_i x x for i in 1..3."""
    z = _zero_j(alg)
    pos = [z, z, z]
    pos[i - 1] = x
    return LieElement(alg, pos=tuple(pos))


def neg_gen(alg, i, gamma):
    """delta_i x gamma for i in 1..3."""
    z = _zero_j(alg)
    neg = [z, z, z]
    neg[i - 1] = gamma
    return LieElement(alg, neg=tuple(neg))


def m0_gen(alg, gamma, x, prime=True):
    """Phi'_{gamma,x} (or Phi_{gamma,x}) as a LieElement."""
    m = phi_prime_matrix(alg, gamma, x) if prime else phi_matrix(alg, gamma, x)
    return LieElement(alg, m0=m)


def h_P(alg):
    return sl3_diag(alg, 1, 0, -1)


def h_Q(alg):
    return sl3_diag(alg, 1, 1, -2)


def h_R(alg):
    e11 = jordan.basis_e(alg, 1)
    third = Fraction(2, 3)
    return sl3_diag(alg, third, third, -2 * third) + m0_gen(alg, e11, e11)


_EPS3 = {(0, 1): (2, 1), (1, 0): (2, -1), (1, 2): (0, 1), (2, 1): (0, -1), (2, 0): (1, 1), (0, 2): (1, -1)}


def bracket(x, y):
    """The Lie bracket on g(J)."""
    alg = x.alg
    dj = jordan.jordan_algebra_dim(alg)
    basis, _ = jordan_basis(alg)

    sl3 = _obj_matmul(x.sl3, y.sl3) - _obj_matmul(y.sl3, x.sl3)
    m0 = _obj_matmul(x.m0, y.m0) - _obj_matmul(y.m0, x.m0)
    z = _zero_j(alg)
    pos = [z, z, z]
    neg = [z, z, z]

    def apply_m0(m, elt):
        col = elt.coords()
        out = [sum(m[i, j] * col[j] for j in range(dj) if col[j]) for i in range(dj)]
        return JordanElement.from_coords(alg, out)

    x_m0_dual = None
    y_m0_dual = None

    # sl3 on V3 and V3^vee
    for i in range(3):
        for k in range(3):
            if x.sl3[i, k] != 0 and not y.pos[k].is_zero():
                pos[i] = pos[i] + y.pos[k].scale(x.sl3[i, k])
            if y.sl3[i, k] != 0 and not x.pos[k].is_zero():
                pos[i] = pos[i] - x.pos[k].scale(y.sl3[i, k])
            if x.sl3[k, i] != 0 and not y.neg[k].is_zero():
                neg[i] = neg[i] - y.neg[k].scale(x.sl3[k, i])
            if y.sl3[k, i] != 0 and not x.neg[k].is_zero():
                neg[i] = neg[i] + x.neg[k].scale(y.sl3[k, i])

    # m0 on V3 x J and its dual
    if x.m0.any():
        for i in range(3):
            if not y.pos[i].is_zero():
                pos[i] = pos[i] + apply_m0(x.m0, y.pos[i])
            if not y.neg[i].is_zero():
                if x_m0_dual is None:
                    x_m0_dual = _dual_action_matrix(alg, x.m0)
                neg[i] = neg[i] + apply_m0(x_m0_dual, y.neg[i])
    if y.m0.any():
        for i in range(3):
            if not x.pos[i].is_zero():
                pos[i] = pos[i] - apply_m0(y.m0, x.pos[i])
            if not x.neg[i].is_zero():
                if y_m0_dual is None:
                    y_m0_dual = _dual_action_matrix(alg, y.m0)
                neg[i] = neg[i] - apply_m0(y_m0_dual, x.neg[i])

    # [v_i x a, v_j x b] = eps_ijk delta_k x (a X b)
    for i in range(3):
        if x.pos[i].is_zero():
            continue
        for j in range(3):
            if i == j or y.pos[j].is_zero():
                continue
            k, s = _EPS3[(i, j)]
            c = jordan_cross(x.pos[i], y.pos[j])
            neg[k] = neg[k] + (c.scale(s) if s > 0 else -c)

    # [delta_i x g, delta_j x h] = eps_ijk v_k x (g X h)
    for i in range(3):
        if x.neg[i].is_zero():
            continue
        for j in range(3):
            if i == j or y.neg[j].is_zero():
                continue
            k, s = _EPS3[(i, j)]
            c = jordan_cross(x.neg[i], y.neg[j])
            pos[k] = pos[k] + (c.scale(s) if s > 0 else -c)

    # [v_i x a, delta_j x g] = -(a,g)(E_ij - delta_ij/3) - delta_ij Phi'_{g,a}
    sl3_extra = _obj_zeros(3, 3)
    m0_extra = None
    for i in range(3):
        for j in range(3):
            xa, yg = x.pos[i], y.neg[j]
            if not xa.is_zero() and not yg.is_zero():
                p = trace_pair(xa, yg)
                if p:
                    sl3_extra[i, j] = sl3_extra[i, j] - p
                    if i == j:
                        t = Fraction(p, 3)
                        for r in range(3):
                            sl3_extra[r, r] = sl3_extra[r, r] + t
                if i == j:
                    mm = phi_prime_matrix(alg, yg, xa)
                    m0_extra = mm if m0_extra is None else m0_extra + mm
            ya, xg = y.pos[i], x.neg[j]
            if not ya.is_zero() and not xg.is_zero():
                p = trace_pair(ya, xg)
                if p:
                    sl3_extra[i, j] = sl3_extra[i, j] + p
                    if i == j:
                        t = Fraction(p, 3)
                        for r in range(3):
                            sl3_extra[r, r] = sl3_extra[r, r] - t
                if i == j:
                    mm = phi_prime_matrix(alg, xg, ya)
                    m0_extra = (-mm) if m0_extra is None else m0_extra - mm

    sl3 = sl3 + sl3_extra
    if m0_extra is not None:
        m0 = m0 - m0_extra
    return LieElement(alg, sl3, m0, tuple(pos), tuple(neg))


def exp_ad(x, v, max_steps=12):
    """exp(ad(x)) v for ad-nilpotent x, as a finite exact sum."""
    out = v
    term = v
    fact = 1
    for k in range(1, max_steps + 1):
        term = bracket(x, term)
        if term.is_zero():
            return out
        fact *= k
        out = out + term.scale(Fraction(1, fact))
    raise ValueError("ad(x) did not nilpotate within the grading width")


def grading_decompose(h, x, eigenvalues=None):
    """Split x into ad(h)-eigencomponents.

    Solves the Vandermonde system built from ad(h)^j x; raises if x has a
    component outside the declared eigenvalue list.
    """
    if eigenvalues is None:
        eigenvalues = (-3, -2, -1, 0, 1, 2, 3)
    eigenvalues = sorted(set(Fraction(e) for e in eigenvalues))
    n = len(eigenvalues)
    powers = [x]
    for _ in range(n - 1):
        powers.append(bracket(h, powers[-1]))
    # components X_e satisfy sum_e e^j X_e = ad(h)^j x
    mat = [[e ** j for e in eigenvalues] for j in range(n)]
    inv = _fraction_inverse(mat)
    comps = {}
    for col, e in enumerate(eigenvalues):
        acc = None
        for j in range(n):
            coef = inv[col][j]
            if coef:
                t = powers[j].scale(coef)
                acc = t if acc is None else acc + t
        if acc is not None and not acc.is_zero():
            comps[e] = acc
    # consistency: the pieces must add back and be genuine eigenvectors
    total = None
    for e, comp in comps.items():
        if not (bracket(h, comp) - comp.scale(e)).is_zero():
            raise ValueError("component outside declared eigenvalue set")
        total = comp if total is None else total + comp
    if total is None:
        total = x.scale(0)
    if not (total - x).is_zero():
        raise ValueError("element does not lie in the declared eigenvalue span")
    return comps


def _fraction_inverse(mat):
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [[a[i][n + j] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# V7: the quadratic space of the orthogonal Levi
# ---------------------------------------------------------------------------


class V7Vector:
    """Coordinates (a1, a2, a3, am3, am2, am1) plus beta in C, in the basis
    (b1,...,b-1) = (E13, v1 x e11, d3 x e22, d3 x e33, -E23, v2 x e11) and
    d3 x V(beta,0,0)."""

    __slots__ = ("alg", "a1", "a2", "a3", "am3", "am2", "am1", "beta")

    def __init__(self, alg, a1, a2, a3, am3, am2, am1, beta=None):
        self.alg = alg
        self.a1, self.a2, self.a3 = a1, a2, a3
        self.am3, self.am2, self.am1 = am3, am2, am1
        self.beta = tuple(beta) if beta is not None else (0,) * alg.dim

    def coords(self):
        return (self.a1, self.a2, self.a3, self.am3, self.am2, self.am1) + self.beta

    def __eq__(self, other):
        return isinstance(other, V7Vector) and self.alg == other.alg and self.coords() == other.coords()

    def __repr__(self):
        return f"V7{self.coords()}"

    def __add__(self, other):
        return V7Vector(self.alg, *[a + b for a, b in zip(self.coords()[:6], other.coords()[:6])],
                        beta=tuple(a + b for a, b in zip(self.beta, other.beta)))

    def scale(self, s):
        return V7Vector(self.alg, *[s * a for a in self.coords()[:6]],
                        beta=tuple(s * a for a in self.beta))

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        return all(v == 0 for v in self.coords())

    def to_lie(self):
        alg = self.alg
        e22 = jordan.basis_e(alg, 2)
        e33 = jordan.basis_e(alg, 3)
        e11 = jordan.basis_e(alg, 1)
        vbeta = jordan.from_blocks(alg, x1=self.beta)
        out = sl3_E(alg, 1, 3, self.a1) + sl3_E(alg, 2, 3, -self.am2)
        out = out + pos_gen(alg, 1, e11.scale(self.a2)) + pos_gen(alg, 2, e11.scale(self.am1))
        out = out + neg_gen(alg, 3, e22.scale(self.a3) + e33.scale(self.am3) + vbeta)
        return out

    @staticmethod
    def from_lie(x):
        alg = x.alg
        a1 = x.sl3[0, 2]
        am2 = -x.sl3[1, 2]
        a2 = x.pos[0].diag[0]
        am1 = x.pos[1].diag[0]
        g = x.neg[2]
        a3, am3 = g.diag[1], g.diag[2]
        beta = g.off[0]
        v = V7Vector(alg, a1, a2, a3, am3, am2, am1, beta)
        if not (v.to_lie() - x).is_zero():
            raise ValueError("LieElement is not in V7")
        return v

    def tprime(self):
        """The H2(C) block: only valid for normal vectors (a1=a2=am2=am1=0)."""
        return jordan.from_blocks(self.alg, c2=self.a3, c3=self.am3, x1=self.beta)


def q_V7(v):
    """q(v) = a1 a-1 + a2 a-2 + a3 a-3 - n_C(beta)."""
    return (
        v.a1 * v.am1
        + v.a2 * v.am2
        + v.a3 * v.am3
        - v.alg.norm_coords(v.beta)
    )


def pair_V7(v, w):
    """Bilinear form (v, w) = q(v+w) - q(v) - q(w)."""
    return (
        v.a1 * w.am1 + v.am1 * w.a1
        + v.a2 * w.am2 + v.am2 * w.a2
        + v.a3 * w.am3 + v.am3 * w.a3
        - v.alg.norm_pairing_coords(v.beta, w.beta)
    )


def normal_T(alg, tprime):
    """The normal element T = d3 x T' for T' in H2(C)."""
    if tprime.diag[0] != 0 or any(v != 0 for v in tprime.off[1]) or any(
        v != 0 for v in tprime.off[2]
    ):
        raise ValueError("T' must lie in the H2(C) block")
    return V7Vector(alg, 0, 0, tprime.diag[1], tprime.diag[2], 0, 0, tprime.off[0])


def normal_T_prime(alg, c2, c3, r1=None):
    """Convenience constructor for T' = [[c2, r1], [r1*, c3]] in H2(C)."""
    return jordan.from_blocks(alg, c2=c2, c3=c3, x1=r1)


def TR_map(w):
    """T_R: W_J -> V5 with <w, v> = (T_R(w), v)_V7 for v in V5;
    q_V7(T_R(w)) = (b# - a c)_11."""
    alg = w.algebra
    b = w.b
    return V7Vector(
        alg,
        0,
        -w.a,
        -b.diag[2],
        -b.diag[1],
        w.c.diag[0],
        0,
        b.off[0],
    )


def prV7_map(w):
    """Projection of W_J onto V5 = V7^[1]; q_V7(pr(w)) = (c# - d b)_11."""
    alg = w.algebra
    c = w.c
    return V7Vector(
        alg,
        0,
        w.b.diag[0],
        c.diag[1],
        c.diag[2],
        -w.d,
        0,
        c.off[0],
    )


# ---------------------------------------------------------------------------
# V8: the symplectic slice, with J-type maps
# ---------------------------------------------------------------------------


class V8Vector:
    """X-part (u, u') and Y-part (v, v'), each a pair of C-elements.

    (u,u')_X = Phi_{E, V(0,u2,u3)} + v2 x V(0,u2',u3') and
    (v,v')_Y = v1 x V(0,v2,v3) + d3 x V(0,v2',v3').
    """

    __slots__ = ("alg", "u", "up", "v", "vp")

    def __init__(self, alg, u=None, up=None, v=None, vp=None):
        z = ((0,) * alg.dim, (0,) * alg.dim)

        def pair(p):
            if p is None:
                return z
            return (tuple(p[0]), tuple(p[1]))

        self.alg = alg
        self.u, self.up, self.v, self.vp = pair(u), pair(up), pair(v), pair(vp)

    def coords(self):
        out = []
        for p in (self.u, self.up, self.v, self.vp):
            out.extend(p[0])
            out.extend(p[1])
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, V8Vector) and self.alg == other.alg and self.coords() == other.coords()

    def __add__(self, other):
        def add(p, q):
            return (
                tuple(a + b for a, b in zip(p[0], q[0])),
                tuple(a + b for a, b in zip(p[1], q[1])),
            )

        return V8Vector(self.alg, add(self.u, other.u), add(self.up, other.up),
                        add(self.v, other.v), add(self.vp, other.vp))

    def scale(self, s):
        def sc(p):
            return (tuple(s * a for a in p[0]), tuple(s * a for a in p[1]))

        return V8Vector(self.alg, sc(self.u), sc(self.up), sc(self.v), sc(self.vp))

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        return all(v == 0 for v in self.coords())

    def __repr__(self):
        return f"V8(u={self.u}, u'={self.up}, v={self.v}, v'={self.vp})"

    def _vslot(self, p):
        return jordan.from_blocks(self.alg, x2=p[0], x3=p[1])

    def to_lie(self):
        alg = self.alg
        e11 = jordan.basis_e(alg, 1)
        one = jordan.identity(alg)
        E = one - e11
        out = LieElement(alg, m0=phi_matrix(alg, E, self._vslot(self.u)))
        out = out + pos_gen(alg, 2, self._vslot(self.up))
        out = out + pos_gen(alg, 1, self._vslot(self.v))
        out = out + neg_gen(alg, 3, self._vslot(self.vp))
        return out

    @staticmethod
    def from_lie(x):
        alg = x.alg
        dj = jordan.jordan_algebra_dim(alg)
        e22 = jordan.basis_e(alg, 2)
        e33 = jordan.basis_e(alg, 3)

        def apply(m, e):
            col = e.coords()
            out = [sum(m[i, j] * col[j] for j in range(dj) if col[j]) for i in range(dj)]
            return JordanElement.from_coords(alg, out)

        # Phi_{E,u}(e22) = V(0,0,u3), Phi_{E,u}(e33) = V(0,u2,0)
        u3 = apply(x.m0, e22).off[2]
        u2 = apply(x.m0, e33).off[1]
        v8 = V8Vector(
            alg,
            u=(u2, u3),
            up=(x.pos[1].off[1], x.pos[1].off[2]),
            v=(x.pos[0].off[1], x.pos[0].off[2]),
            vp=(x.neg[2].off[1], x.neg[2].off[2]),
        )
        if not (v8.to_lie() - x).is_zero():
            raise ValueError("LieElement is not in V8")
        return v8

    def x_part(self):
        return V8Vector(self.alg, u=self.u, up=self.up)

    def y_part(self):
        return V8Vector(self.alg, v=self.v, vp=self.vp)


def J2_V8(x):
    """J_{2,V8}: (u,u')_X -> (u',-u)_Y, (v,v')_Y -> (v',-v)_X; squares to -1."""

    def neg(p):
        return (tuple(-a for a in p[0]), tuple(-a for a in p[1]))

    return V8Vector(x.alg, u=x.vp, up=neg(x.v), v=x.up, vp=neg(x.u))


# J2' = epsilon o w3 acts by the same coordinate formula as J_{2,V8}.
J2prime = J2_V8


def J2dprime(alg, p):
    """J_2'': C^2 -> C^2, (x2, x3) -> (x3, -x2)."""
    return (tuple(p[1]), tuple(-a for a in p[0]))


def _cross_c2(alg, a_h2, p):
    """Cross product of an H2(C) element with a C^2 slot pair, restricted
    back to the C^2 slots."""
    vx = jordan.from_blocks(alg, x2=p[0], x3=p[1])
    c = jordan_cross(a_h2, vx)
    return (c.off[1], c.off[2])


def JT_apply(tprime, x):
    """J_T on V8, for normal T = d3 x T'; J_T^2 = -n_{H2(C)}(T')."""
    alg = x.alg
    e11 = jordan.basis_e(alg, 1)
    tdp = jordan_cross(e11, tprime)  # T'' = e11 X T'

    def neg(p):
        return (tuple(-a for a in p[0]), tuple(-a for a in p[1]))

    u_new = J2dprime(alg, _cross_c2(alg, tprime, x.u))
    up_new = neg(J2dprime(alg, _cross_c2(alg, tdp, x.up)))
    v_new = neg(J2dprime(alg, _cross_c2(alg, tdp, x.v)))
    vp_new = J2dprime(alg, _cross_c2(alg, tprime, x.vp))
    return V8Vector(alg, u=u_new, up=up_new, v=v_new, vp=vp_new)


def n_H2(tprime):
    """n_{H2(C)}(T') = c2 c3 - n_C(r1)."""
    return tprime.diag[1] * tprime.diag[2] - tprime.algebra.norm_coords(tprime.off[0])


def symplectic_V8(tprime, x, y, via_bracket=False):
    """<x, y>_{V8,T} for normal T = d3 x T'.

    The closed form on Lagrangian pieces is
      <(u,u')_X, (v,v')_Y> = (T', u X v') - (T', e11 X (u' X v)),
    and the general value is computed from bilinearity; via_bracket=True
    recomputes it as (T, [x, y])_V7 inside the Lie algebra.
    """
    alg = x.alg
    if via_bracket:
        t_v7 = normal_T(alg, tprime)
        br = bracket(x.to_lie(), y.to_lie())
        return pair_V7(t_v7, V7Vector.from_lie(br))

    e11 = jordan.basis_e(alg, 1)

    def vs(p):
        return jordan.from_blocks(alg, x2=p[0], x3=p[1])

    def xy(ux, uxp, vy, vyp):
        return trace_pair(tprime, jordan_cross(vs(ux), vs(vyp))) - trace_pair(
            tprime, jordan_cross(e11, jordan_cross(vs(uxp), vs(vy)))
        )

    # <X-part o Y-part> - <Y-part o X-part>; X with X and Y with Y pair to zero
    return xy(x.u, x.up, y.v, y.vp) - xy(y.u, y.up, x.v, x.vp)


# ---------------------------------------------------------------------------
# Weyl elements and sl2 triples of the orthogonal Levi
# ---------------------------------------------------------------------------


def sl2_triples(alg):
    """(e1,h1,f1) and (e2,h2,f2): e1 = E12, f1 = E21; e2 = d3 x e11,
    f2 = -v3 x e11."""
    e11 = jordan.basis_e(alg, 1)
    e1 = sl3_E(alg, 1, 2)
    f1 = sl3_E(alg, 2, 1)
    e2 = neg_gen(alg, 3, e11)
    f2 = pos_gen(alg, 3, e11).scale(-1)
    return (e1, bracket(e1, f1), f1), (e2, bracket(e2, f2), f2)


def weyl_w(alg, j):
    """w_j = exp(ad e_j) exp(-ad f_j) exp(ad e_j) as an operator; j in {1,2,3}
    with w3 = w1 w2."""
    (e1, _, f1), (e2, _, f2) = sl2_triples(alg)

    def op(e, f):
        def act(v):
            return exp_ad(e, exp_ad(f.scale(-1), exp_ad(e, v)))

        return act

    if j == 1:
        return op(e1, f1)
    if j == 2:
        return op(e2, f2)
    if j == 3:
        w1, w2 = weyl_w(alg, 1), weyl_w(alg, 2)
        return lambda v: w1(w2(v))
    raise ValueError("j must be 1, 2 or 3")


def ef_pair(alg):
    """e = d3 x e11 - E12 and f = -v3 x e11 - E21 (compact direction)."""
    e11 = jordan.basis_e(alg, 1)
    e = neg_gen(alg, 3, e11) - sl3_E(alg, 1, 2)
    f = pos_gen(alg, 3, e11).scale(-1) - sl3_E(alg, 2, 1)
    return e, f


def ad_matrix_on_V8(alg, x):
    """Matrix of ad(x) restricted to V8, in V8Vector coordinates."""
    dim = 8 * alg.dim
    cols = []
    for i in range(dim):
        coords = [0] * dim
        coords[i] = 1
        v = _v8_from_coords(alg, coords)
        img = bracket(x, v.to_lie())
        cols.append(V8Vector.from_lie(img).coords())
    m = np.empty((dim, dim), dtype=object)
    for j, col in enumerate(cols):
        for i in range(dim):
            m[i, j] = col[i]
    return m


def v8_map_matrix(alg, fn):
    """Matrix of a V8Vector -> V8Vector map in V8 coordinates."""
    dim = 8 * alg.dim
    m = np.empty((dim, dim), dtype=object)
    for j in range(dim):
        coords = [0] * dim
        coords[j] = 1
        img = fn(_v8_from_coords(alg, coords)).coords()
        for i in range(dim):
            m[i, j] = img[i]
    return m


def _v8_from_coords(alg, coords):
    d = alg.dim
    pairs = []
    for k in range(4):
        base = 2 * d * k
        pairs.append((tuple(coords[base : base + d]), tuple(coords[base + d : base + 2 * d])))
    return V8Vector(alg, *pairs)


def v8_from_coords(alg, coords):
    return _v8_from_coords(alg, coords)


# ---------------------------------------------------------------------------
# quaternionic independence
# ---------------------------------------------------------------------------


def quaternionic_rank(vectors, su2_generators):
    """Dimension of Span_R(SU(2) u_1, ..., SU(2) u_n).

    The span of an orbit is the smallest subspace containing u and closed
    under the three generators, so we saturate under the generator action.
    Vectors are quaternionically independent iff the result is 4n.
    """
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    gens = [np.asarray(g, dtype=float) for g in su2_generators]
    if not vecs:
        return 0
    dim = vecs[0].shape[0]
    for g in gens:
        if g.shape != (dim, dim):
            raise ValueError("generator shape does not match vector dimension")

    def row_basis(rows):
        mat = np.array(rows)
        u, s, vt = np.linalg.svd(mat, full_matrices=False)
        keep = s > 1e-9 * max(1.0, s[0] if len(s) else 1.0)
        return [vt[i] for i in range(len(s)) if keep[i]]

    basis = row_basis(vecs)
    while True:
        new = basis + [g @ v for g in gens for v in basis]
        nb = row_basis(new)
        if len(nb) == len(basis):
            return len(basis)
        basis = nb
