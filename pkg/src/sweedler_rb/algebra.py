"""Structure-constant algebras; the Sweedler algebra H4 is the canonical instance.

Elements are plain tuples of Scalars (coordinates in the fixed basis).  The H4
basis order is globally fixed as (1, g, x, gx), indices 0..3.
"""

from __future__ import annotations

from .errors import DimMismatch, FieldMismatch
from .field import RATIONAL, Scalar, check_modulus, field_name, one, zero

# H4 basis indices
ONE, G, X, GX = 0, 1, 2, 3

# Basis products of H4 are monomial: e_i * e_j = sign * e_k (sign 0 => zero).
# Derived from g^2 = 1, x^2 = 0, gx = -xg.
H4_PRODUCTS = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, 1), (1, 2): (3, 1), (1, 3): (2, 1),
    (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (None, 0), (2, 3): (None, 0),
    (3, 0): (3, 1), (3, 1): (2, -1), (3, 2): (None, 0), (3, 3): (None, 0),
}


class StructureAlgebra:
    """A finite-dimensional unital associative algebra given by structure constants.

    constants[i][j][k] is the e_k coefficient of e_i * e_j.
    """

    def __init__(self, dim, basis_names, constants, unit_index, p=RATIONAL):
        if p is not RATIONAL:
            check_modulus(p)
        self.dim = dim
        self.basis_names = list(basis_names)
        self.constants = constants
        self.unit_index = unit_index
        self.p = p

    # -- element constructors -------------------------------------------------

    def zero_vec(self):
        return tuple(zero(self.p) for _ in range(self.dim))

    def basis_vector(self, i):
        return tuple(one(self.p) if k == i else zero(self.p) for k in range(self.dim))

    def unit(self):
        return self.basis_vector(self.unit_index)

    def element(self, coords):
        coords = tuple(c if isinstance(c, Scalar) else Scalar(c, self.p) for c in coords)
        if len(coords) != self.dim:
            raise DimMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        for c in coords:
            if c.p != self.p:
                raise FieldMismatch(f"coordinate over {field_name(c.p)} in algebra over {field_name(self.p)}")
        return coords

    # -- arithmetic -----------------------------------------------------------

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple(a - b for a, b in zip(u, v))

    def scale(self, c, u):
        return tuple(c * a for a in u)

    def multiply(self, u, v):
        """Bilinear extension of the structure constants."""
        if len(u) != self.dim or len(v) != self.dim:
            raise DimMismatch("element dimension mismatch")
        out = [zero(self.p)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for k, s in enumerate(self.constants[i][j]):
                    if s:
                        out[k] = out[k] + c * s
        return tuple(out)

    # -- checks ---------------------------------------------------------------

    def verify_presentation(self):
        """Report associativity and unit-law violations; empty list means OK."""
        violations = []
        u = self.unit_index
        for i in range(self.dim):
            ei = self.basis_vector(i)
            if self.multiply(self.basis_vector(u), ei) != ei:
                violations.append(f"unit law fails on the left at {self.basis_names[i]}")
            if self.multiply(ei, self.basis_vector(u)) != ei:
                violations.append(f"unit law fails on the right at {self.basis_names[i]}")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    ei, ej, ek = (self.basis_vector(t) for t in (i, j, k))
                    lhs = self.multiply(self.multiply(ei, ej), ek)
                    rhs = self.multiply(ei, self.multiply(ej, ek))
                    if lhs != rhs:
                        violations.append(
                            "associativity fails at "
                            f"({self.basis_names[i]}, {self.basis_names[j]}, {self.basis_names[k]})"
                        )
        return violations

    def to_json(self):
        return {
            "dim": self.dim,
            "basis_names": self.basis_names,
            "unit_index": self.unit_index,
            "constants": [
                [[str(c) for c in row] for row in plane] for plane in self.constants
            ],
        }

    def format_element(self, u):
        parts = []
        for c, name in zip(u, self.basis_names):
            if c:
                parts.append(f"{c}*{name}")
        return " + ".join(parts) if parts else "0"


def h4(p=RATIONAL):
    """The Sweedler algebra on the basis (1, g, x, gx)."""
    if p is not RATIONAL:
        check_modulus(p)
    constants = [[[zero(p)] * 4 for _ in range(4)] for _ in range(4)]
    for (i, j), (k, s) in H4_PRODUCTS.items():
        if s:
            constants[i][j][k] = Scalar(s, p) if p is not RATIONAL else Scalar(s)
    return StructureAlgebra(4, ["1", "g", "x", "gx"], constants, unit_index=0, p=p)


def f_times_f(p=RATIONAL):
    """The split 2-dimensional algebra F x F; a sanity control for the RB checker."""
    constants = [[[zero(p)] * 2 for _ in range(2)] for _ in range(2)]
    # idempotent basis e0 = (1,0), e1 = (0,1); unit is e0 + e1 -- use basis (1, e)
    # with e^2 = e instead so the unit is a basis vector.
    one_s = one(p)
    constants[0][0][0] = one_s
    constants[0][1][1] = one_s
    constants[1][0][1] = one_s
    constants[1][1][1] = one_s
    return StructureAlgebra(2, ["1", "e"], constants, unit_index=0, p=p)
