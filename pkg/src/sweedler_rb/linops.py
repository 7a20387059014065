"""Exact linear algebra on the algebra's coordinate space.

Operators store their matrix column-wise: cols[j] are the coordinates of the
image of basis vector e_j.  Kernels and images are returned as Subspaces whose
basis rows are in reduced row-echelon form, which makes subspace equality a
plain tuple comparison.
"""

from __future__ import annotations

from .errors import DimMismatch, FieldMismatch, Singular
from .field import RATIONAL, Scalar, one, zero


def rref(rows, p=RATIONAL):
    """Reduced row-echelon form of a list of coordinate rows; zero rows dropped.

    Deterministic: pivot = first nonzero entry in column order.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return ()
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        piv = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        inv_p = rows[pivot_row][col].inv()
        rows[pivot_row] = [e * inv_p for e in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return tuple(tuple(r) for r in rows[:pivot_row] if any(r))


class Subspace:
    """A subspace given by its canonical reduced-echelon basis rows."""

    def __init__(self, rows, ambient_dim, p=RATIONAL):
        self.basis = rref(rows, p)
        self.ambient_dim = ambient_dim
        self.p = p

    @property
    def dim_value(self):
        return len(self.basis)

    def contains(self, u):
        """Membership test: reducing u by the echelon basis must leave zero."""
        u = list(u)
        for row in self.basis:
            lead = next(i for i, e in enumerate(row) if e)
            if u[lead]:
                f = u[lead]
                u = [a - f * b for a, b in zip(u, row)]
        return not any(u)

    def intersect(self, other):
        """Intersection via the kernel of the stacked-coordinates trick."""
        # Solve: u in both spans.  Row space intersection = kernel computation
        # on the stacked matrix [A; B] expressed in combination coordinates.
        a, b = list(self.basis), list(other.basis)
        if not a or not b:
            return Subspace([], self.ambient_dim, self.p)
        # Coefficients (s, t) with s*A = t*B <=> (s, t) in kernel of [A^T | -B^T].
        n = self.ambient_dim
        cols = []
        for i in range(n):
            cols.append([row[i] for row in a] + [-row[i] for row in b])
        ker = _kernel_rows(cols, len(a) + len(b), self.p)
        rows = []
        for coeffs in ker:
            vec = [zero(self.p)] * n
            for s, row in zip(coeffs[: len(a)], a):
                vec = [v + s * e for v, e in zip(vec, row)]
            rows.append(vec)
        return Subspace(rows, n, self.p)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.p == other.p
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim_value}, basis={self.basis})"


def _kernel_rows(eq_rows, nvars, p):
    """Solutions of the homogeneous system given by eq_rows (each of length nvars)."""
    reduced = rref(eq_rows, p)
    lead_cols = []
    for row in reduced:
        lead_cols.append(next(i for i, e in enumerate(row) if e))
    free_cols = [c for c in range(nvars) if c not in lead_cols]
    basis = []
    for fc in free_cols:
        sol = [zero(p)] * nvars
        sol[fc] = one(p)
        for row, lc in zip(reduced, lead_cols):
            sol[lc] = -row[fc]
        basis.append(tuple(sol))
    return basis


class LinearOperator:
    """A dim x dim matrix; cols[j] = coordinates of the image of e_j."""

    __slots__ = ("cols", "dim", "p")

    def __init__(self, cols, p=RATIONAL):
        self.cols = tuple(tuple(c) for c in cols)
        self.dim = len(self.cols)
        self.p = p
        for c in self.cols:
            if len(c) != self.dim:
                raise DimMismatch("operator matrix must be square")

    @classmethod
    def from_columns(cls, cols, p=RATIONAL):
        return cls(cols, p)

    @classmethod
    def identity(cls, dim, p=RATIONAL):
        return cls(
            [[one(p) if i == j else zero(p) for i in range(dim)] for j in range(dim)], p
        )

    @classmethod
    def zero(cls, dim, p=RATIONAL):
        z = zero(p)
        return cls([[z] * dim for _ in range(dim)], p)

    @classmethod
    def scalar(cls, c, dim, p=RATIONAL):
        z = zero(p)
        return cls([[c if i == j else z for i in range(dim)] for j in range(dim)], p)

    def entry(self, row, col):
        return self.cols[col][row]

    def apply(self, u):
        if len(u) != self.dim:
            raise DimMismatch("vector dimension mismatch")
        out = [zero(self.p)] * self.dim
        for j, uj in enumerate(u):
            if not uj:
                continue
            col = self.cols[j]
            out = [o + uj * e for o, e in zip(out, col)]
        return tuple(out)

    def compose(self, other):
        """self o other (matrix product self * other)."""
        if self.dim != other.dim:
            raise DimMismatch("operator dimension mismatch")
        if self.p != other.p:
            raise FieldMismatch("operators over different fields")
        return LinearOperator([self.apply(c) for c in other.cols], self.p)

    def add(self, other):
        return LinearOperator(
            [tuple(a + b for a, b in zip(c1, c2)) for c1, c2 in zip(self.cols, other.cols)],
            self.p,
        )

    def neg(self):
        return LinearOperator([tuple(-a for a in c) for c in self.cols], self.p)

    def scale(self, c):
        return LinearOperator([tuple(c * a for a in col) for col in self.cols], self.p)

    def rows(self):
        return tuple(
            tuple(self.cols[j][i] for j in range(self.dim)) for i in range(self.dim)
        )

    def kernel(self):
        """Canonical echelon basis of {u : R(u) = 0}."""
        return Subspace(_kernel_rows(list(self.rows()), self.dim, self.p), self.dim, self.p)

    def image(self):
        """Canonical echelon basis of the column space."""
        return Subspace(list(self.cols), self.dim, self.p)

    def rank(self):
        return len(rref(list(self.cols), self.p))

    def invert(self):
        """Exact inverse; raises Singular when rank < dim."""
        n = self.dim
        aug = []
        for i in range(n):
            row = [self.cols[j][i] for j in range(n)]
            row += [one(self.p) if k == i else zero(self.p) for k in range(n)]
            aug.append(row)
        reduced = rref(aug, self.p)
        if len(reduced) < n or any(
            reduced[i][i] != one(self.p) for i in range(n)
        ):
            raise Singular("operator is not invertible")
        inv_cols = [[reduced[i][n + j] for i in range(n)] for j in range(n)]
        return LinearOperator(inv_cols, self.p)

    def __eq__(self, other):
        return (
            isinstance(other, LinearOperator)
            and self.p == other.p
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.p, self.cols))

    def sort_key(self):
        """Row-major entry-wise key with the field's total scalar order."""
        return tuple(e.sort_key() for row in self.rows() for e in row)

    def to_json(self):
        return [[str(e) for e in col] for col in self.cols]

    def __repr__(self):
        return f"LinearOperator(cols={self.cols!r})"


def apply(op, u):
    return op.apply(u)


def compose(s, r):
    return s.compose(r)


def kernel(op):
    return op.kernel()


def image(op):
    return op.image()


def invert(op):
    return op.invert()
