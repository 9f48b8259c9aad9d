"""Exact and numerical toolkit around the Freudenthal construction.

Submodules:

* composition - composition algebras C of dimension 1, 2, 4, 8 (Cayley-Dickson)
* jordan      - the cubic Jordan algebra J = H3(C)
* wj          - the Freudenthal module W_J with symplectic/quartic forms
* liealg      - the Z/3-graded Lie algebra g(J), V7/V8 geometry, gradings
* specialfn   - K-Bessel, generalized Whittaker values, definite integrals,
                Gaussian eigen-operator checks, holomorphic kernels
* lattices    - quadratic lattice reduction, enumeration and counting bounds
* coefficients- finite Fourier-coefficient families, symmetry checks, tails
* sturm       - quantitative Sturm bound calculators and verifiers
* symbols     - Hilbert symbols, Hasse invariants, metaplectic cocycle values
* cli         - report-emitting command line entry point
"""

__version__ = "0.1.0"

from .composition import CompositionAlgebra, CompositionElement, composition_algebra
from .jordan import JordanDual, JordanElement
from .wj import FreudenthalVector

__all__ = [
    "CompositionAlgebra",
    "CompositionElement",
    "composition_algebra",
    "JordanElement",
    "JordanDual",
    "FreudenthalVector",
    "__version__",
]
