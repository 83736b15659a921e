"""mamlab: exact and numeric certification of moment-angle manifold data.

Given a simplicial complex K on [m], generator vectors a_1..a_m over an
exact rational-function field, and an optional complex column map Psi,
the library certifies fan axioms and completeness, weak normality with a
polytope certificate, admissibility and genericity of Psi, foliation leaf
types, transverse-Kahler potential identities, and the Hermitian-quadric
realization.  See the README for the input schema and CLI.
"""

__version__ = "0.1.0"

from .errors import (
    DivisionByZeroScalar,
    InputError,
    MamlabError,
    NotAFaceError,
    ParseError,
    PrecisionExhausted,
    UnknownSymbolError,
)
from .scalar import Scalar, parse_scalar, print_scalar, sign, to_float
from .symbols import Symbol, SymbolTable

__all__ = [
    "DivisionByZeroScalar",
    "InputError",
    "MamlabError",
    "NotAFaceError",
    "ParseError",
    "PrecisionExhausted",
    "Scalar",
    "Symbol",
    "SymbolTable",
    "UnknownSymbolError",
    "parse_scalar",
    "print_scalar",
    "sign",
    "to_float",
    "__version__",
]
