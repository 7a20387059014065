"""(Anti)automorphisms of H4 and their conjugation action on weighted operators.

An automorphism is determined by
    phi(g) = eps*g + a*x + b*gx,   phi(x) = p*x + q*gx,
with eps = +-1 and p^2 - q^2 != 0; then phi(gx) = eps*q*x + eps*p*gx.
An antiautomorphism uses the same data but reverses products, which flips the
sign of the gx column: phi(gx) = phi(x)phi(g) = -(eps*q*x + eps*p*gx).
Conjugation phi^-1 R phi is applied uniformly in both cases.
"""

from __future__ import annotations

from .errors import InvalidParams
from .field import RATIONAL, Scalar, enumerate_field, one, zero
from .linops import LinearOperator
from .rb import WeightedOperator


class AutoMap:
    """An (anti)automorphism of H4 stored as a linear map plus an anti flag."""

    __slots__ = ("op", "anti", "params")

    def __init__(self, op, anti=False, params=None):
        self.op = op
        self.anti = anti
        self.params = params  # (eps, a, b, p, q) when built from the parametrization

    def __eq__(self, other):
        return (
            isinstance(other, AutoMap)
            and self.op == other.op
            and self.anti == other.anti
        )

    def __hash__(self):
        return hash((self.op, self.anti))

    def to_json(self):
        return {
            "anti": self.anti,
            "params": None
            if self.params is None
            else dict(zip(("eps", "a", "b", "p", "q"), (str(v) for v in self.params))),
            "matrix": self.op.to_json(),
        }

    def __repr__(self):
        kind = "anti" if self.anti else "auto"
        return f"AutoMap({kind}, params={self.params})"


def from_params(eps, a, b, p_coef, q_coef, anti=False):
    """Build the (anti)automorphism with the given parameters."""
    fld = eps.p
    if eps * eps != one(fld):
        raise InvalidParams("eps^2 must equal 1")
    if p_coef * p_coef == q_coef * q_coef:
        raise InvalidParams("p^2 - q^2 must be nonzero")
    z = zero(fld)
    sign = -one(fld) if anti else one(fld)
    cols = [
        (one(fld), z, z, z),                      # phi(1) = 1
        (z, eps, a, b),                           # phi(g)
        (z, z, p_coef, q_coef),                   # phi(x)
        (z, z, sign * eps * q_coef, sign * eps * p_coef),  # phi(gx)
    ]
    return AutoMap(LinearOperator(cols, fld), anti, (eps, a, b, p_coef, q_coef))


def validate(phi, algebra):
    """Direct check of (reversed) multiplicativity on all basis pairs, and phi(1)=1."""
    if phi.op.apply(algebra.unit()) != algebra.unit():
        return False
    try:
        phi.op.invert()
    except Exception:
        return False
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            ei, ej = algebra.basis_vector(i), algebra.basis_vector(j)
            lhs = phi.op.apply(algebra.multiply(ei, ej))
            fi, fj = phi.op.apply(ei), phi.op.apply(ej)
            rhs = algebra.multiply(fj, fi) if phi.anti else algebra.multiply(fi, fj)
            if lhs != rhs:
                return False
    return True


def _param_space(p):
    elems = enumerate_field(p)
    eps_values = [one(p), -one(p)]
    pq = [(pp, qq) for pp in elems for qq in elems if pp * pp != qq * qq]
    for anti in (False, True):
        for eps in eps_values:
            for a in elems:
                for b in elems:
                    for pp, qq in pq:
                        yield eps, a, b, pp, qq, anti


def iter_maps(p, include_anti=True):
    """Lazy enumeration of all (anti)automorphisms over F_p, each exactly once."""
    for eps, a, b, pp, qq, anti in _param_space(p):
        if anti and not include_anti:
            continue
        yield from_params(eps, a, b, pp, qq, anti)


def enumerate_maps(p, include_anti=True):
    """All (anti)automorphisms over F_p; materialized for p <= 7, lazy above."""
    it = iter_maps(p, include_anti)
    if p <= 7:
        return list(it)
    return it


def conjugate(w, phi):
    """The operator phi^-1 R phi, same weight."""
    inv = phi.op.invert()
    return WeightedOperator(inv.compose(w.op).compose(phi.op), w.weight)
