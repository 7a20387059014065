"""Subalgebras of H4: multiplicative closure, enumeration over F_p, and
classification into the eight canonical isomorphism classes.

"Subalgebra" here means a multiplicatively closed subspace; it need not
contain 1 (span{x, gx} is one).  Classification is by structural invariants
(presence of 1, intersection with span{x, gx}, and the discriminant-style
condition c3^2 = c4^2 for nilpotent generators c3*x + c4*gx), so it works
over Q as well as over F_p.
"""

from __future__ import annotations

from itertools import combinations, product

from .algebra import StructureAlgebra, h4
from .errors import InvalidDim, NotASubalgebra
from .field import RATIONAL, Scalar, check_modulus, enumerate_field, one, zero
from .linops import Subspace

DIM2_LABELS = ["<1-g,x-gx>", "<1,g>", "<1,x-gx>", "<1,x>", "<x,gx>"]
DIM3_LABELS = ["<1-g,x,gx>", "<1,g,x-gx>", "<1,x,gx>"]


def is_subalgebra(s, algebra=None):
    """True iff the subspace is closed under multiplication."""
    A = algebra if algebra is not None else h4(s.p)
    for u in s.basis:
        for v in s.basis:
            if not s.contains(A.multiply(u, v)):
                return False
    return True


def _nilpotent_part(s):
    """Basis of the intersection with span{x, gx}."""
    j_rows = [
        (zero(s.p), zero(s.p), one(s.p), zero(s.p)),
        (zero(s.p), zero(s.p), zero(s.p), one(s.p)),
    ]
    return s.intersect(Subspace(j_rows, 4, s.p))


def classify_subalgebra(s, algebra=None):
    """The canonical label of the subalgebra's isomorphism class."""
    A = algebra if algebra is not None else h4(s.p)
    if not is_subalgebra(s, A):
        raise NotASubalgebra(f"{s!r} is not closed under multiplication")
    d = s.dim_value
    has_one = s.contains(A.unit())
    nil = _nilpotent_part(s)
    if d == 3:
        if not has_one:
            return "<1-g,x,gx>"
        return "<1,x,gx>" if nil.dim_value == 2 else "<1,g,x-gx>"
    if d == 2:
        if nil.dim_value == 2:
            return "<x,gx>"
        if not has_one:
            return "<1-g,x-gx>"
        # S = span{1, w}; inspect the non-unit echelon row.
        w = next(row for row in s.basis if not row[0])
        if w[1]:
            return "<1,g>"
        c3, c4 = w[2], w[3]
        return "<1,x-gx>" if c3 * c3 == c4 * c4 else "<1,x>"
    raise InvalidDim(f"classification covers dims 2 and 3, got {d}")


def enumerate_subspaces(p, d):
    """All d-dimensional subspaces of F_p^4, one canonical echelon basis each."""
    check_modulus(p)
    if d not in (1, 2, 3):
        raise InvalidDim(f"subspace dimension must be 1..3, got {d}")
    elems = enumerate_field(p)
    z, o = zero(p), one(p)
    out = []
    for pivots in combinations(range(4), d):
        free_positions = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, 4):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in product(elems, repeat=len(free_positions)):
            rows = [[z] * 4 for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = o
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = v
            out.append(Subspace(rows, 4, p))
    return out


def enumerate_subalgebras(p, d):
    """All d-dimensional subalgebras of H4 over F_p, each exactly once."""
    if d not in (2, 3):
        raise InvalidDim(f"subalgebra enumeration covers dims 2 and 3, got {d}")
    A = h4(p)
    return [s for s in enumerate_subspaces(p, d) if is_subalgebra(s, A)]


def apply_map_to_subspace(phi, s):
    """Image of a subspace under an AutoMap's linear part."""
    return Subspace([phi.op.apply(row) for row in s.basis], s.ambient_dim, s.p)


def census(p):
    """Per-class counts of 2- and 3-dimensional subalgebras over F_p."""
    counts = {}
    entries = []
    for d in (2, 3):
        for s in enumerate_subalgebras(p, d):
            label = classify_subalgebra(s)
            counts[label] = counts.get(label, 0) + 1
            entries.append(
                {"basis": [[str(e) for e in row] for row in s.basis], "class_label": label}
            )
    return {"p": p, "counts": counts, "subalgebras": entries}
