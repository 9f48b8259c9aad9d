"""The Freudenthal module W_J = Q + J + J^vee + Q.

Carries the symplectic form

    <(a,b,c,d), (a',b',c',d')> = a d' - d a' + (c, b') - (b, c')

and the quartic form

    q(a,b,c,d) = (ad - (b,c))^2 + 4 a N(c) + 4 d N(b) - 4 (b#, c#).

The normalization is pinned by three anchors: <(1,0,0,0),(0,0,0,1)> = 1,
q(0,B,0,d) = 4 d N(B), and <w, r0(i)> = ((b,1)-d) + i(a-(c,1)).  All
implemented group elements act on the right through

    <w . g, u> = <w, g . u>,   i.e.   w . g = nu(g) g^{-1} w,

so q(w . g) = nu(g)^2 q(w) and <w1 . g, w2 . g> = nu(g) <w1, w2>.
"""

from __future__ import annotations

from fractions import Fraction

from . import jordan
from .jordan import JordanElement, jordan_cross, jordan_norm, jordan_sharp, trace_pair

__all__ = [
    "FreudenthalVector",
    "symplectic",
    "quartic",
    "alpha_at_identity",
    "alpha_at_identity_exact",
    "norm_squared",
    "PositivityReport",
    "positivity_report",
    "res_W",
    "res_J",
    "TorusT",
    "HTorus",
    "ExpNL",
    "ExpNLDual",
    "Identity",
    "freudenthal_action",
]


class FreudenthalVector:
    """w = (a, b, c, d) with a, d scalars and b in J, c in J^vee."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        if not isinstance(b, JordanElement) or not isinstance(c, JordanElement):
            raise TypeError("b and c components must be JordanElements")
        b._check(c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("FreudenthalVector is immutable")

    @property
    def algebra(self):
        return self.b.algebra

    def __add__(self, other):
        return FreudenthalVector(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def __sub__(self, other):
        return FreudenthalVector(
            self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        return FreudenthalVector(s * self.a, self.b.scale(s), self.c.scale(s), s * self.d)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        return (
            isinstance(other, FreudenthalVector)
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"W(a={self.a}, b={self.b}, c={self.c}, d={self.d})"

    def is_zero(self):
        return self.a == 0 and self.d == 0 and self.b.is_zero() and self.c.is_zero()

    def coords(self):
        return (self.a,) + self.b.coords() + self.c.coords() + (self.d,)

    @staticmethod
    def from_coords(algebra, coords):
        dj = jordan.jordan_algebra_dim(algebra)
        if len(coords) != 2 + 2 * dj:
            raise ValueError("wrong coordinate length")
        b = JordanElement.from_coords(algebra, coords[1 : 1 + dj])
        c = JordanElement.from_coords(algebra, coords[1 + dj : 1 + 2 * dj])
        return FreudenthalVector(coords[0], b, c, coords[-1])

    @staticmethod
    def zero(algebra):
        z = jordan.diag(algebra, 0, 0, 0)
        return FreudenthalVector(0, z, z, 0)


def symplectic(w1, w2):
    """<w1, w2> = a d' - d a' + (c, b') - (b, c')."""
    return (
        w1.a * w2.d
        - w1.d * w2.a
        + trace_pair(w1.c, w2.b)
        - trace_pair(w1.b, w2.c)
    )


def quartic(w):
    """The degree-4 invariant; q(0, B, 0, d) = 4 d N(B) and q < 0 on the
    positive cone (B > 0, d < 0)."""
    s = w.a * w.d - trace_pair(w.b, w.c)
    return (
        s * s
        + 4 * w.a * jordan_norm(w.c)
        + 4 * w.d * jordan_norm(w.b)
        - 4 * trace_pair(jordan_sharp(w.b), jordan_sharp(w.c))
    )


def norm_squared(w):
    """||w||^2 = a^2 + (b,b) + (c,c) + d^2."""
    return (
        w.a * w.a
        + trace_pair(w.b, w.b)
        + trace_pair(w.c, w.c)
        + w.d * w.d
    )


def alpha_at_identity_exact(w):
    """Real and imaginary parts of alpha_w(1) = <w, r0(i)> as exact scalars.

    r0(i) = (1, -i 1_J, -1_J, i) gives alpha = ((b,1) - d) + i (a - (c,1)).
    """
    one = jordan.identity(w.algebra)
    return (trace_pair(w.b, one) - w.d, w.a - trace_pair(w.c, one))


def alpha_at_identity(w):
    re, im = alpha_at_identity_exact(w)
    return complex(re, im)


class PositivityReport:
    """Outcome of the positivity tests for a vector w."""

    __slots__ = ("q_value", "necessary_ok", "special_shape_verdict", "numeric_certificate")

    def __init__(self, q_value, necessary_ok, special_shape_verdict, numeric_certificate):
        object.__setattr__(self, "q_value", q_value)
        object.__setattr__(self, "necessary_ok", necessary_ok)
        object.__setattr__(self, "special_shape_verdict", special_shape_verdict)
        object.__setattr__(self, "numeric_certificate", numeric_certificate)

    def __setattr__(self, *a):
        raise AttributeError("PositivityReport is immutable")

    def __repr__(self):
        return (
            f"PositivityReport(q={self.q_value}, necessary_ok={self.necessary_ok}, "
            f"special={self.special_shape_verdict}, cert={self.numeric_certificate})"
        )


def _default_torus_grid():
    ts = [Fraction(k, 4) for k in range(1, 9)]  # 1/4 .. 2
    return tuple(TorusT(t) for t in ts)


def positivity_report(w, grid=None, tol=1e-9):
    """Necessary positivity tests, the exact (0,B,0,d) verdict, and a
    numerical certificate min |alpha_w(g)| over a torus grid.

    Necessary conditions for w > 0: q(w) < 0, (b# - ac, 1) >= 0,
    (c# - db, 1) >= 0 and (b# - ac)_11 > 0.
    """
    one = jordan.identity(w.algebra)
    q = quartic(w)
    bsh = jordan_sharp(w.b) - w.c.scale(w.a)
    csh = jordan_sharp(w.c) - w.b.scale(w.d)
    necessary = (
        q < 0
        and trace_pair(bsh, one) >= 0
        and trace_pair(csh, one) >= 0
        and bsh.diag[0] > 0
    )
    special = None
    if w.a == 0 and w.c.is_zero():
        special = jordan.is_positive_jordan(w.b) and w.d < 0
    if grid is None:
        grid = _default_torus_grid()
    cert = None
    if grid:
        vals = []
        for g in grid:
            re, im = alpha_at_identity_exact(freudenthal_action(w, g))
            vals.append((float(re) ** 2 + float(im) ** 2) ** 0.5)
        cert = (min(vals), tol)
    return PositivityReport(q, necessary, special, cert)


def res_J(x, literal=False):
    """Restriction map on J; the default projection kills the V(0, x2, x3)
    coordinates, the literal variant is the identity."""
    if literal:
        return x
    z = (0,) * x.algebra.dim
    return JordanElement(x.algebra, x.diag, (x.off[0], z, z))


def res_W(w, literal=False):
    """Componentwise restriction (a, Res_J b, Res_J c, d)."""
    return FreudenthalVector(w.a, res_J(w.b, literal), res_J(w.c, literal), w.d)


# ---------------------------------------------------------------------------
# Levi generators and their right actions on W_J
# ---------------------------------------------------------------------------


class TorusT:
    """The torus element with right action (a,b,c,d) -> (a/t, b, t c, t^2 d);
    similitude nu = t."""

    __slots__ = ("t",)

    def __init__(self, t):
        if t == 0:
            raise ValueError("torus parameter must be nonzero")
        self.t = Fraction(t) if not isinstance(t, float) else t

    @property
    def nu(self):
        return self.t

    def act(self, w):
        t = self.t
        one_over = (Fraction(1, 1) / t) if not isinstance(t, float) else 1.0 / t
        return FreudenthalVector(w.a * one_over, w.b, w.c.scale(t), w.d * t * t)

    def inverse(self):
        return TorusT(Fraction(1, 1) / self.t if not isinstance(self.t, float) else 1.0 / self.t)

    def __repr__(self):
        return f"TorusT({self.t})"


class HTorus:
    """h(y) = the torus at t = sqrt(y); only the square is needed on the
    shapes we act on, so y may be any positive rational with rational sqrt,
    or the vector must have a = 0 and c = 0 (then (0,B,0,d) -> (0,B,0,yd))."""

    __slots__ = ("y",)

    def __init__(self, y):
        if y <= 0:
            raise ValueError("h(y) needs y > 0")
        self.y = Fraction(y)

    @property
    def nu(self):
        r, ok = _fraction_sqrt(self.y)
        if not ok:
            raise ValueError("nu(h(y)) = sqrt(y) is irrational for this y")
        return r

    def act(self, w):
        if w.a == 0 and w.c.is_zero():
            return FreudenthalVector(w.a, w.b, w.c, w.d * self.y)
        r, ok = _fraction_sqrt(self.y)
        if not ok:
            raise ValueError(
                "h(y) acts exactly only on (0,B,0,d) or for square y"
            )
        return TorusT(r).act(w)

    def __repr__(self):
        return f"HTorus({self.y})"


def _fraction_sqrt(y):
    y = Fraction(y)
    from math import isqrt

    pn, pd = isqrt(y.numerator), isqrt(y.denominator)
    if pn * pn == y.numerator and pd * pd == y.denominator:
        return Fraction(pn, pd), True
    return None, False


class ExpNL:
    """Right action of exp(n_L(X)) for X in J; similitude 1.

    (a,b,c,d) -> (a, b + aX, c + X x b + a X#, d + (X,c) + (X#,b) + a N(X)).
    """

    __slots__ = ("x",)

    def __init__(self, x):
        if not isinstance(x, JordanElement):
            raise TypeError("ExpNL takes a JordanElement")
        self.x = x

    nu = 1

    def act(self, w):
        x = self.x
        b2 = w.b + x.scale(w.a)
        c2 = w.c + jordan_cross(x, w.b) + jordan_sharp(x).scale(w.a)
        d2 = (
            w.d
            + trace_pair(x, w.c)
            + trace_pair(jordan_sharp(x), w.b)
            + w.a * jordan_norm(x)
        )
        return FreudenthalVector(w.a, b2, c2, d2)

    def inverse(self):
        return ExpNL(-self.x)

    def __repr__(self):
        return f"ExpNL({self.x})"


class ExpNLDual:
    """Right action of exp(n_L^vee(gamma)) for gamma in J^vee; similitude 1.

    (a,b,c,d) -> (a - (b,g) + (c,g#) - d N(g), b - g x c + d g#, c - d g, d).
    """

    __slots__ = ("gamma",)

    def __init__(self, gamma):
        if not isinstance(gamma, JordanElement):
            raise TypeError("ExpNLDual takes a JordanElement (dual side)")
        self.gamma = gamma

    nu = 1

    def act(self, w):
        g = self.gamma
        a2 = (
            w.a
            - trace_pair(w.b, g)
            + trace_pair(w.c, jordan_sharp(g))
            - w.d * jordan_norm(g)
        )
        b2 = w.b - jordan_cross(g, w.c) + jordan_sharp(g).scale(w.d)
        c2 = w.c - g.scale(w.d)
        return FreudenthalVector(a2, b2, c2, w.d)

    def inverse(self):
        return ExpNLDual(-self.gamma)

    def __repr__(self):
        return f"ExpNLDual({self.gamma})"


class Identity:
    __slots__ = ()
    nu = 1

    def act(self, w):
        return w

    def inverse(self):
        return self

    def __repr__(self):
        return "Identity()"


def freudenthal_action(w, generator):
    """Right action of a supported Levi generator on w."""
    if not hasattr(generator, "act"):
        raise TypeError(f"unsupported generator {generator!r}")
    return generator.act(w)
