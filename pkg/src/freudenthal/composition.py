"""Composition algebras over the rationals via Cayley-Dickson doubling.

The four algebras C of dimension 1, 2, 4, 8 are built by doubling from Q.
Basis products are always of the form e_i * e_j = s * e_k with s = +-1, so
the multiplication table is stored as a flat (index, sign) array and every
product costs dim^2 integer multiplications.  Two towers are provided:

* definite: doubling parameter -1 at every step; the norm form is a sum of
  dim squares (anisotropic over R).
* split: doubling parameter +1 at the last step only; the norm form is
  isotropic of signature (dim/2, dim/2).

All arithmetic is exact: coordinates may be ints or fractions.Fraction and
the operations never introduce floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

__all__ = [
    "CompositionAlgebra",
    "CompositionElement",
    "composition_algebra",
]

_VALID_DIMS = (1, 2, 4, 8)


def _double_table(table, gamma):
    """One Cayley-Dickson doubling step on a basis multiplication table.

    Pairs multiply by (a,b)(c,d) = (ac + gamma*conj(d)b, da + b*conj(c)).
    conj flips the sign of every non-identity basis vector.
    """
    d = len(table)
    conj = [1] + [-1] * (d - 1)
    new = [[None] * (2 * d) for _ in range(2 * d)]
    for i in range(2 * d):
        ia, ib = i % d, i >= d
        for j in range(2 * d):
            ja, jb = j % d, j >= d
            if not ib and not jb:
                k, s = table[ia][ja]
                new[i][j] = (k, s)
            elif not ib and jb:
                k, s = table[ja][ia]
                new[i][j] = (k + d, s)
            elif ib and not jb:
                k, s = table[ia][ja]
                new[i][j] = (k + d, s * conj[ja])
            else:
                k, s = table[ja][ia]
                new[i][j] = (k, s * conj[ja] * gamma)
    return new


class CompositionAlgebra:
    """A fixed composition algebra C of dimension 1, 2, 4 or 8.

    Holds the structure constants and the doubling parameters; elements are
    coordinate vectors in the standard doubling basis e_0 = 1, e_1, ...
    The standard order O_C is the Z-span of that basis.
    """

    def __init__(self, dim, split=False):
        if dim not in _VALID_DIMS:
            raise ValueError("composition algebra dimension must be 1, 2, 4 or 8")
        if split and dim == 1:
            raise ValueError("dimension 1 has no split form")
        self.dim = dim
        self.split = bool(split)
        table = [[(0, 1)]]
        gammas = []
        d = 1
        while d < dim:
            gamma = 1 if (split and 2 * d == dim) else -1
            gammas.append(gamma)
            table = _double_table(table, gamma)
            d *= 2
        self.gammas = tuple(gammas)
        # flat structure constants: index i*dim+j -> (k, sign)
        self._tab = tuple(table[i][j] for i in range(dim) for j in range(dim))

    @property
    def tag(self):
        return ("split" if self.split else "definite", self.dim)

    def __repr__(self):
        kind = "split" if self.split else "definite"
        return f"CompositionAlgebra(dim={self.dim}, {kind})"

    def __eq__(self, other):
        return isinstance(other, CompositionAlgebra) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    # -- coordinate-level operations (hot path, no object churn) --

    def mul_coords(self, x, y):
        dim = self.dim
        tab = self._tab
        out = [0] * dim
        for i in range(dim):
            xi = x[i]
            if xi:
                row = i * dim
                for j in range(dim):
                    yj = y[j]
                    if yj:
                        k, s = tab[row + j]
                        out[k] += xi * yj if s > 0 else -xi * yj
        return tuple(out)

    def conj_coords(self, x):
        return (x[0],) + tuple(-v for v in x[1:])

    def norm_coords(self, x):
        # n(x) = x * conj(x); for the doubling basis this is the diagonal form
        # <1, -g1, -g2, g1 g2, -g3, ...> evaluated on the coordinates.
        diag = self.norm_diagonal()
        return sum(d * v * v for d, v in zip(diag, x))

    def trace_coords(self, x):
        return 2 * x[0]

    def norm_pairing_coords(self, x, y):
        """Polarized norm <x,y> = n(x+y) - n(x) - n(y) = tr(x*conj(y))."""
        diag = self.norm_diagonal()
        return sum(2 * d * u * v for d, u, v in zip(diag, x, y))

    @lru_cache(maxsize=None)
    def norm_diagonal(self):
        """Diagonal entries of the norm form in the doubling basis."""
        diag = [1]
        for gamma in self.gammas:
            diag = diag + [-gamma * v for v in diag]
        return tuple(diag)

    # -- element constructors --

    def zero(self):
        return CompositionElement(self, (0,) * self.dim)

    def one(self):
        return CompositionElement(self, (1,) + (0,) * (self.dim - 1))

    def basis(self, i):
        coords = [0] * self.dim
        coords[i] = 1
        return CompositionElement(self, tuple(coords))

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return CompositionElement(self, coords)

    def from_scalar(self, s):
        return CompositionElement(self, (s,) + (0,) * (self.dim - 1))


@lru_cache(maxsize=None)
def composition_algebra(dim, split=False):
    """Shared instance of the composition algebra of the given kind."""
    return CompositionAlgebra(dim, split)


class CompositionElement:
    """An element of a composition algebra: immutable coordinate vector."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, *a):
        raise AttributeError("CompositionElement is immutable")

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ValueError(
                f"mismatched algebras: {self.algebra.tag} vs {other.algebra.tag}"
            )

    def __add__(self, other):
        self._check(other)
        return CompositionElement(
            self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        return CompositionElement(
            self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return CompositionElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, CompositionElement):
            self._check(other)
            return CompositionElement(
                self.algebra, self.algebra.mul_coords(self.coords, other.coords)
            )
        return CompositionElement(self.algebra, tuple(a * other for a in self.coords))

    def __rmul__(self, scalar):
        return CompositionElement(self.algebra, tuple(scalar * a for a in self.coords))

    def __eq__(self, other):
        return (
            isinstance(other, CompositionElement)
            and self.algebra == other.algebra
            and all(a == b for a, b in zip(self.coords, other.coords))
        )

    def __hash__(self):
        return hash((self.algebra.tag, self.coords))

    def __repr__(self):
        return f"C{self.algebra.dim}{list(self.coords)}"

    def conjugate(self):
        return CompositionElement(self.algebra, self.algebra.conj_coords(self.coords))

    def norm(self):
        return self.algebra.norm_coords(self.coords)

    def trace(self):
        return self.algebra.trace_coords(self.coords)

    def norm_pairing(self, other):
        self._check(other)
        return self.algebra.norm_pairing_coords(self.coords, other.coords)

    def is_zero(self):
        return all(v == 0 for v in self.coords)

    def scale(self, s):
        return CompositionElement(self.algebra, tuple(s * a for a in self.coords))

    def as_fractions(self):
        return CompositionElement(self.algebra, tuple(Fraction(v) for v in self.coords))


def comp_mul(x, y):
    """Product in C; raises on mismatched algebras."""
    return x * y
