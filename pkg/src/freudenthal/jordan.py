"""The cubic Jordan algebra J = H3(C) of Hermitian 3x3 matrices over C.

An element is stored as three diagonal scalars (c1, c2, c3) and three
off-diagonal entries (x1, x2, x3) of C, corresponding to the matrix

    [ c1   x3   x2* ]
    [ x3*  c2   x1  ]
    [ x2   x1*  c3  ]

The cubic norm, quadratic adjoint, cross product, trace pairing and
trilinear form follow the standard formulas

    N(x)  = c1 c2 c3 - sum_i c_i n(x_i) + tr_C((x1 x2) x3)
    x#    = (c2 c3 - n(x1), ... ; conj(x3)conj(x2) - c1 x1, ...)
    x X y = (x + y)# - x# - y#
    (x,y) = sum_i c_i d_i + sum_i <x_i, y_i>
    (x,y,z) = (x X y, z),  so that (x,x,x) = 6 N(x).

These conventions satisfy (x#)# = N(x) x for all four composition algebras
and their split forms.  The dual space J^vee is identified with J through
the trace pairing; JordanDual is an alias kept for signatures that expect
dual-side arguments.
"""

from __future__ import annotations

from fractions import Fraction

from .composition import CompositionElement, composition_algebra

__all__ = [
    "JordanElement",
    "JordanDual",
    "jordan_algebra_dim",
    "jordan_sharp",
    "jordan_cross",
    "jordan_norm",
    "trace_pair",
    "trilinear",
    "jordan_rank",
    "is_positive_jordan",
    "iota_B",
    "diag",
    "from_blocks",
]


def jordan_algebra_dim(algebra):
    """dim H3(C) = 3 + 3 dim(C)."""
    return 3 + 3 * algebra.dim


class JordanElement:
    """Element of H3(C): diagonal scalars plus three off-diagonal C-entries."""

    __slots__ = ("algebra", "diag", "off")

    def __init__(self, algebra, diag, off):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "diag", tuple(diag))
        off = tuple(tuple(o) for o in off)
        if len(self.diag) != 3 or len(off) != 3:
            raise ValueError("JordanElement needs 3 diagonal and 3 off-diagonal entries")
        for o in off:
            if len(o) != algebra.dim:
                raise ValueError("off-diagonal entry has wrong dimension")
        object.__setattr__(self, "off", off)

    def __setattr__(self, *a):
        raise AttributeError("JordanElement is immutable")

    # -- ring-module structure --

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ValueError("mismatched composition algebras")

    def __add__(self, other):
        self._check(other)
        return JordanElement(
            self.algebra,
            tuple(a + b for a, b in zip(self.diag, other.diag)),
            tuple(
                tuple(a + b for a, b in zip(u, v))
                for u, v in zip(self.off, other.off)
            ),
        )

    def __sub__(self, other):
        self._check(other)
        return JordanElement(
            self.algebra,
            tuple(a - b for a, b in zip(self.diag, other.diag)),
            tuple(
                tuple(a - b for a, b in zip(u, v))
                for u, v in zip(self.off, other.off)
            ),
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        return JordanElement(
            self.algebra,
            tuple(s * a for a in self.diag),
            tuple(tuple(s * a for a in o) for o in self.off),
        )

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        return (
            isinstance(other, JordanElement)
            and self.algebra == other.algebra
            and all(a == b for a, b in zip(self.diag, other.diag))
            and all(u == v for u, v in zip(self.off, other.off))
        )

    def __hash__(self):
        return hash((self.algebra.tag, self.diag, self.off))

    def __repr__(self):
        return f"J(diag={list(self.diag)}, off={[list(o) for o in self.off]})"

    def is_zero(self):
        return all(v == 0 for v in self.diag) and all(
            v == 0 for o in self.off for v in o
        )

    # -- coordinates --

    def coords(self):
        """Flat coordinate tuple (c1, c2, c3, x1..., x2..., x3...)."""
        out = list(self.diag)
        for o in self.off:
            out.extend(o)
        return tuple(out)

    @staticmethod
    def from_coords(algebra, coords):
        d = algebra.dim
        if len(coords) != 3 + 3 * d:
            raise ValueError("wrong coordinate length")
        return JordanElement(
            algebra,
            coords[:3],
            (coords[3 : 3 + d], coords[3 + d : 3 + 2 * d], coords[3 + 2 * d :]),
        )

    def off_elements(self):
        return tuple(CompositionElement(self.algebra, o) for o in self.off)

    def as_fractions(self):
        return JordanElement(
            self.algebra,
            tuple(Fraction(v) for v in self.diag),
            tuple(tuple(Fraction(v) for v in o) for o in self.off),
        )

    # -- algebra operations (methods defer to module functions) --

    def sharp(self):
        return jordan_sharp(self)

    def cross(self, other):
        return jordan_cross(self, other)

    def norm(self):
        return jordan_norm(self)

    def pair(self, other):
        return trace_pair(self, other)

    def rank(self):
        return jordan_rank(self)


# The dual cubic space J^vee; identified with J through the trace pairing.
JordanDual = JordanElement


def diag(algebra, c1, c2, c3):
    z = (0,) * algebra.dim
    return JordanElement(algebra, (c1, c2, c3), (z, z, z))


def from_blocks(algebra, c1=0, c2=0, c3=0, x1=None, x2=None, x3=None):
    """Build an element from scalars and optional C-entries (coords or elements)."""
    z = (0,) * algebra.dim

    def co(x):
        if x is None:
            return z
        if isinstance(x, CompositionElement):
            return x.coords
        return tuple(x)

    return JordanElement(algebra, (c1, c2, c3), (co(x1), co(x2), co(x3)))


def identity(algebra):
    return diag(algebra, 1, 1, 1)


def basis_e(algebra, j):
    """e_jj for j = 1, 2, 3."""
    c = [0, 0, 0]
    c[j - 1] = 1
    return diag(algebra, *c)


def jordan_sharp(x):
    """The quadratic adjoint x#, satisfying (x#)# = N(x) x."""
    alg = x.algebra
    c1, c2, c3 = x.diag
    x1, x2, x3 = x.off
    n = alg.norm_coords
    cj = alg.conj_coords
    mul = alg.mul_coords
    y1 = tuple(a - c1 * b for a, b in zip(mul(cj(x3), cj(x2)), x1))
    y2 = tuple(a - c2 * b for a, b in zip(mul(cj(x1), cj(x3)), x2))
    y3 = tuple(a - c3 * b for a, b in zip(mul(cj(x2), cj(x1)), x3))
    return JordanElement(
        alg, (c2 * c3 - n(x1), c3 * c1 - n(x2), c1 * c2 - n(x3)), (y1, y2, y3)
    )


def jordan_cross(x, y):
    """Symmetric bilinear cross product x X y = (x+y)# - x# - y#."""
    x._check(y)
    alg = x.algebra
    c1, c2, c3 = x.diag
    d1, d2, d3 = y.diag
    x1, x2, x3 = x.off
    y1, y2, y3 = y.off
    npair = alg.norm_pairing_coords
    cj = alg.conj_coords
    mul = alg.mul_coords

    def slot(ci, di, xa, xb, ya, yb, xi, yi):
        # polarization of conj(x_{i+2}) conj(x_{i+1}) - c_i x_i
        p = mul(cj(xb), cj(ya))
        q = mul(cj(yb), cj(xa))
        return tuple(
            pp + qq - ci * yy - di * xx for pp, qq, xx, yy in zip(p, q, xi, yi)
        )

    z1 = slot(c1, d1, x2, x3, y2, y3, x1, y1)
    z2 = slot(c2, d2, x3, x1, y3, y1, x2, y2)
    z3 = slot(c3, d3, x1, x2, y1, y2, x3, y3)
    return JordanElement(
        alg,
        (
            c2 * d3 + c3 * d2 - npair(x1, y1),
            c3 * d1 + c1 * d3 - npair(x2, y2),
            c1 * d2 + c2 * d1 - npair(x3, y3),
        ),
        (z1, z2, z3),
    )


def jordan_norm(x):
    """The cubic norm N(x)."""
    alg = x.algebra
    c1, c2, c3 = x.diag
    x1, x2, x3 = x.off
    n = alg.norm_coords
    t = alg.mul_coords(alg.mul_coords(x1, x2), x3)
    return c1 * c2 * c3 - c1 * n(x1) - c2 * n(x2) - c3 * n(x3) + 2 * t[0]


def trace_pair(x, y):
    """The trace pairing (x, y), positive definite over R for definite C."""
    x._check(y)
    alg = x.algebra
    s = sum(a * b for a, b in zip(x.diag, y.diag))
    for u, v in zip(x.off, y.off):
        s += alg.norm_pairing_coords(u, v)
    return s


def trilinear(x, y, z):
    """The symmetric trilinear form (x, y, z) = (x X y, z); (z,z,z) = 6 N(z)."""
    return trace_pair(jordan_cross(x, y), z)


def jordan_rank(x):
    """Rank in {0,1,2,3}: 0 iff x = 0, <=1 iff x# = 0, <=2 iff N(x) = 0."""
    if x.is_zero():
        return 0
    if jordan_sharp(x).is_zero():
        return 1
    if jordan_norm(x) == 0:
        return 2
    return 3


def is_positive_jordan(b):
    """Positive definiteness via nested principal minors.

    c1 > 0, c1 c2 - n(x3) > 0 and N(b) > 0.  Only meaningful for definite C,
    where the corner 2x2 minor is the quadratic norm of the upper block.
    """
    c1, c2, _ = b.diag
    x3 = b.off[2]
    if not c1 > 0:
        return False
    if not c1 * c2 - b.algebra.norm_coords(x3) > 0:
        return False
    return jordan_norm(b) > 0


def iota_B(b, y):
    """Inverse of x -> B X x: iota_B(y) = N(B)^{-1} (B# X y - (1/2)(B,y) B)."""
    nb = jordan_norm(b)
    if nb == 0:
        raise ZeroDivisionError("iota_B requires N(B) != 0")
    w = jordan_cross(jordan_sharp(b), y) - b.scale(Fraction(trace_pair(b, y), 2))
    return w.scale(Fraction(1, 1) / Fraction(nb))
