"""Verifiable computer algebra for Rota-Baxter operators on the Sweedler
algebra H4: exact arithmetic over Q and F_p, the (anti)automorphism group
action, subalgebra classification, a machine-readable catalog of the known
operator families, exhaustive enumeration over F_p, and orbit classification
up to conjugation and dualization.
"""

__version__ = "1.0.0"

from . import algebra, autgroup, catalog, classify, field, linops, rb, search, subalg
from .algebra import StructureAlgebra, h4
from .autgroup import AutoMap, conjugate, enumerate_maps, from_params
from .field import RATIONAL, Scalar, rational, residue
from .linops import LinearOperator, Subspace
from .rb import WeightedOperator, dual, is_rb, is_trivial, rb_defect

__all__ = [
    "AutoMap",
    "LinearOperator",
    "RATIONAL",
    "Scalar",
    "StructureAlgebra",
    "Subspace",
    "WeightedOperator",
    "algebra",
    "autgroup",
    "catalog",
    "classify",
    "conjugate",
    "dual",
    "enumerate_maps",
    "field",
    "from_params",
    "h4",
    "is_rb",
    "is_trivial",
    "linops",
    "rational",
    "rb",
    "rb_defect",
    "residue",
    "search",
    "subalg",
    "__version__",
]
