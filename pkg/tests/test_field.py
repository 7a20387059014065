from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sweedler_rb.errors import (
    BadReduction,
    DivisionByZero,
    FieldMismatch,
    InvalidModulus,
)
from sweedler_rb.field import (
    RATIONAL,
    Scalar,
    enumerate_field,
    one,
    parse_scalar,
    rational,
    reduce_scalar_mod_p,
    residue,
    zero,
)

rationals = st.fractions(min_value=-(10**6), max_value=10**6,
                         max_denominator=10**4)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    x, y, z = Scalar(a), Scalar(b), Scalar(c)
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + Scalar(Fraction(0)) == x
    assert x * Scalar(Fraction(1)) == x
    assert x + (-x) == Scalar(Fraction(0))


@given(rationals)
def test_rational_inverse(a):
    x = Scalar(a)
    if not x.v:
        with pytest.raises(DivisionByZero):
            x.inv()
    else:
        assert x * x.inv() == rational(1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_modular_inverses_exhaustive(p):
    for a in enumerate_field(p):
        if not a.v:
            with pytest.raises(DivisionByZero):
                a.inv()
        else:
            assert a * a.inv() == one(p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_modular_field_axioms_exhaustive(p):
    elems = enumerate_field(p)
    for a in elems:
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            assert (a - b) + b == a


def test_residues_are_canonical():
    assert residue(7, 3) == residue(1, 3)
    assert residue(-1, 5).v == 4
    assert str(residue(-1, 3)) == "2"


def test_rational_str_round_trip():
    for text in ["0", "1", "-1", "2/3", "-7/4", "10"]:
        assert str(parse_scalar(text, RATIONAL)) == text


def test_parse_residue():
    assert parse_scalar("5", 3) == residue(2, 3)
    assert parse_scalar("-1", 7) == residue(6, 7)


def test_field_mixing_is_an_error():
    with pytest.raises(FieldMismatch):
        rational(1) + residue(1, 3)
    with pytest.raises(FieldMismatch):
        residue(1, 3) * residue(1, 5)


@pytest.mark.parametrize("p", [2, 4, 9, 1, -3, 15])
def test_invalid_moduli_rejected(p):
    with pytest.raises(InvalidModulus):
        enumerate_field(p)


def test_sort_key_orders_residues():
    keys = [a.sort_key() for a in enumerate_field(5)]
    assert keys == sorted(keys)


def test_sort_key_is_total_on_rationals():
    vals = [rational(Fraction(n, d)) for n in range(-3, 4) for d in (1, 2, 3)]
    keys = [v.sort_key() for v in vals]
    assert len(set(keys)) == len(set(vals))


def test_reduce_mod_p():
    assert reduce_scalar_mod_p(rational(Fraction(-1, 2)), 3) == residue(1, 3)
    assert reduce_scalar_mod_p(rational(7), 5) == residue(2, 5)
    with pytest.raises(BadReduction):
        reduce_scalar_mod_p(rational(Fraction(1, 3)), 3)


def test_zero_one_helpers():
    assert zero(RATIONAL) == rational(0)
    assert one(3) == residue(1, 3)
    assert not zero(5)
    assert one(5)
