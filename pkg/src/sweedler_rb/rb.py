"""The Rota-Baxter identity of weight lambda: defect, checking, duality, triviality.

``is_rb`` checks all 16 ordered basis pairs; by bilinearity of both sides of
the identity this suffices.  The pair order front-loads (1,1), (g,g), (1,g),
(g,1), which kill most non-solutions first, and exits on the first nonzero
defect.  A raw-value fast path avoids Scalar wrappers in the hot loop.
"""

from __future__ import annotations

from math import gcd

from .algebra import H4_PRODUCTS, StructureAlgebra, h4
from .errors import FieldMismatch
from .field import RATIONAL, Scalar
from .linops import LinearOperator

# Most-discriminating pairs first (they carry most of the constraints).
PAIR_ORDER = [(0, 0), (1, 1), (0, 1), (1, 0)] + [
    (i, j) for i in range(4) for j in range(4) if not (i < 2 and j < 2)
]

# Nonzero H4 basis products as (i, j, k, sign).
_SPARSE = [(i, j, k, s) for (i, j), (k, s) in H4_PRODUCTS.items() if s]


class WeightedOperator:
    """A linear operator together with its Rota-Baxter weight."""

    __slots__ = ("op", "weight")

    def __init__(self, op, weight):
        if op.p != weight.p:
            raise FieldMismatch("operator and weight over different fields")
        self.op = op
        self.weight = weight

    @property
    def p(self):
        return self.op.p

    def __eq__(self, other):
        return (
            isinstance(other, WeightedOperator)
            and self.op == other.op
            and self.weight == other.weight
        )

    def __hash__(self):
        return hash((self.op, self.weight))

    def to_json(self):
        return {"weight": str(self.weight), "images": self.op.to_json()}

    def __repr__(self):
        return f"WeightedOperator(weight={self.weight}, op={self.op.cols})"


def _mult_raw(u, v):
    out = [0, 0, 0, 0]
    for i, j, k, s in _SPARSE:
        ui = u[i]
        vj = v[j]
        if ui and vj:
            out[k] += s * ui * vj
    return out


def _defect_raw(cols, lam_scaled, scale, i, j, p):
    """Raw-value defect at basis pair (i, j), up to a positive factor.

    Over F_p: cols are residues, scale = 1, lam_scaled = lam.  Over Q: cols
    are integers C = d*R for a common denominator d, scale = v and
    lam_scaled = d*u for lam = u/v; the returned values are d^2*v times the
    true defect, so zero-testing is unchanged and stays in int arithmetic.
    """
    u = cols[i]
    v = cols[j]
    lhs = _mult_raw(u, v)
    # t (scaled) = scale*(R(e_i)*e_j + e_i*R(e_j)) + lam_scaled*(e_i e_j)
    t = [0, 0, 0, 0]
    for a in range(4):
        ua = u[a]
        if ua:
            k, s = H4_PRODUCTS[(a, j)]
            if s:
                t[k] += s * ua
        va = v[a]
        if va:
            k, s = H4_PRODUCTS[(i, a)]
            if s:
                t[k] += s * va
    if scale != 1:
        t = [scale * e for e in t]
    k, s = H4_PRODUCTS[(i, j)]
    if s:
        t[k] += s * lam_scaled
    out = []
    for k in range(4):
        acc = scale * lhs[k]
        for m in range(4):
            tm = t[m]
            if tm:
                acc -= tm * cols[m][k]
        out.append(acc % p if p is not RATIONAL else acc)
    return out


def _raw_cols(w):
    """(cols, lam_scaled, scale): integer data for _defect_raw."""
    if w.p is not RATIONAL:
        return [[e.v for e in col] for col in w.op.cols], w.weight.v, 1
    d = 1
    for col in w.op.cols:
        for e in col:
            q = e.v.denominator
            if q != 1:
                d = d * q // gcd(d, q)
    cols = [[int(e.v * d) for e in col] for col in w.op.cols]
    lam = w.weight.v
    return cols, d * lam.numerator, lam.denominator


def rb_defect(w, a, b, algebra=None):
    """R(a)R(b) - R(R(a)b + aR(b) + lambda*ab); zero iff the identity holds at (a, b)."""
    A = algebra if algebra is not None else h4(w.p)
    if any(c.p != w.p for c in a) or any(c.p != w.p for c in b):
        raise FieldMismatch("elements and operator over different fields")
    ra = w.op.apply(a)
    rbv = w.op.apply(b)
    lhs = A.multiply(ra, rbv)
    t = A.add(A.add(A.multiply(ra, b), A.multiply(a, rbv)), A.scale(w.weight, A.multiply(a, b)))
    return A.sub(lhs, w.op.apply(t))


def is_rb(w, algebra=None):
    """True iff the weight-lambda identity holds on all ordered basis pairs."""
    if algebra is None or (algebra.dim == 4 and algebra.basis_names == ["1", "g", "x", "gx"]):
        cols, lam_scaled, scale = _raw_cols(w)
        p = w.p
        for i, j in PAIR_ORDER:
            if any(_defect_raw(cols, lam_scaled, scale, i, j, p)):
                return False
        return True
    A = algebra
    for i in range(A.dim):
        for j in range(A.dim):
            d = rb_defect(w, A.basis_vector(i), A.basis_vector(j), A)
            if any(d):
                return False
    return True


def dual(w):
    """The operator -lambda*id - R, same weight; an involution on RB operators."""
    neg_lam = LinearOperator.scalar(-w.weight, w.op.dim, w.p)
    return WeightedOperator(neg_lam.add(w.op.neg()), w.weight)


def is_trivial(w):
    """True iff the operator is 0 or -lambda*id."""
    if w.op == LinearOperator.zero(w.op.dim, w.p):
        return True
    return w.op == LinearOperator.scalar(-w.weight, w.op.dim, w.p)
