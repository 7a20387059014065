from fractions import Fraction

import numpy as np
import pytest

from sweedler_rb import catalog
from sweedler_rb.errors import Singular
from sweedler_rb.field import Scalar, one, rational, residue, zero
from sweedler_rb.linops import LinearOperator, Subspace, rref


def _rand_op(rng, p=None, dim=4):
    if p is None:
        cols = [[Scalar(Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))))
                 for _ in range(dim)] for _ in range(dim)]
    else:
        cols = [[residue(int(rng.integers(0, p)), p) for _ in range(dim)]
                for _ in range(dim)]
    return LinearOperator(cols, p)


def test_rref_is_idempotent_and_canonical():
    rows = [
        [rational(2), rational(4), rational(0), rational(2)],
        [rational(1), rational(2), rational(1), rational(0)],
        [rational(3), rational(6), rational(1), rational(2)],
    ]
    r1 = rref(rows, None)
    r2 = rref(r1, None)
    assert r1 == r2
    # leading entries are 1 and sit in strictly increasing columns
    lead_cols = []
    for row in r1:
        j = next(k for k, e in enumerate(row) if e)
        assert row[j] == rational(1)
        lead_cols.append(j)
    assert lead_cols == sorted(lead_cols)


def test_subspace_equality_is_basis_independent():
    a = Subspace([[rational(1), rational(1), rational(0), rational(0)]], 4, None)
    b = Subspace([[rational(2), rational(2), rational(0), rational(0)]], 4, None)
    assert a == b
    assert hash(a) == hash(b)


def test_subspace_contains_and_intersect():
    p = 3
    xy = Subspace([[zero(p), zero(p), one(p), zero(p)],
                   [zero(p), zero(p), zero(p), one(p)]], 4, p)
    diag = Subspace([[zero(p), zero(p), one(p), one(p)]], 4, p)
    assert xy.contains((zero(p), zero(p), residue(2, p), one(p)))
    assert not xy.contains((one(p), zero(p), zero(p), zero(p)))
    cap = xy.intersect(diag)
    assert cap == diag


@pytest.mark.parametrize("p", [None, 3, 5])
def test_rank_nullity(p):
    rng = np.random.default_rng(7)
    for _ in range(40):
        op = _rand_op(rng, p)
        assert op.rank() + op.kernel().dim_value == 4
        assert op.image().dim_value == op.rank()


def test_apply_matches_columns():
    rng = np.random.default_rng(8)
    op = _rand_op(rng, 5)
    for j in range(4):
        e = tuple(one(5) if k == j else zero(5) for k in range(4))
        assert list(op.apply(e)) == list(op.cols[j])


def test_compose_associativity_and_identity():
    rng = np.random.default_rng(9)
    a, b, c = (_rand_op(rng, 3) for _ in range(3))
    ident = LinearOperator.identity(4, 3)
    assert a.compose(ident) == a
    assert ident.compose(a) == a
    assert a.compose(b.compose(c)) == (a.compose(b)).compose(c)


def test_invert_round_trip_and_singular():
    rng = np.random.default_rng(10)
    ident = LinearOperator.identity(4, None)
    found = 0
    while found < 10:
        op = _rand_op(rng)
        try:
            inv = op.invert()
        except Singular:
            continue
        found += 1
        assert op.compose(inv) == ident
        assert inv.compose(op) == ident
    with pytest.raises(Singular):
        LinearOperator.zero(4, None).invert()


def test_kernel_of_known_operator():
    # R(1) = -1, R(g) = -g, R(x) = R(gx) = 0: kernel is span{x, gx}
    w = catalog.instantiate("final-4", rational(1))
    ker = w.op.kernel()
    expected = Subspace([[rational(0), rational(0), rational(1), rational(0)],
                         [rational(0), rational(0), rational(0), rational(1)]],
                        4, None)
    assert ker == expected
    img = w.op.image()
    assert img == Subspace([[rational(1), rational(0), rational(0), rational(0)],
                            [rational(0), rational(1), rational(0), rational(0)]],
                           4, None)


def test_scalar_operator():
    s = LinearOperator.scalar(rational(-2), 4, None)
    v = (rational(1), rational(0), rational(3), rational(-1))
    assert s.apply(v) == tuple(rational(-2) * c for c in v)
