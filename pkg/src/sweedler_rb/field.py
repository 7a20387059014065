"""Exact scalar arithmetic over Q and over prime fields F_p (p an odd prime).

A Scalar is immutable and tagged with its field: ``p is None`` means a
rational (value is a ``fractions.Fraction`` in lowest terms), otherwise the
value is a residue in ``{0, ..., p-1}``.  Mixing scalars from different
fields is a hard error, never a coercion.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, InvalidModulus

RATIONAL = None  # field tag for Q


def _is_odd_prime(p):
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_modulus(p):
    if not _is_odd_prime(p):
        raise InvalidModulus(f"modulus must be an odd prime >= 3, got {p!r}")
    return p


class Scalar:
    """An exact element of Q or of F_p."""

    __slots__ = ("p", "v")

    def __init__(self, v, p=RATIONAL, _checked=False):
        if _checked:
            self.p = p
            self.v = v
            return
        if p is RATIONAL:
            self.p = RATIONAL
            self.v = Fraction(v)
        else:
            check_modulus(p)
            self.p = p
            self.v = int(v) % p

    def _match(self, other):
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if self.p != other.p:
            raise FieldMismatch(f"cannot mix fields {field_name(self.p)} and {field_name(other.p)}")

    def __add__(self, other):
        self._match(other)
        v = self.v + other.v
        return Scalar(v if self.p is RATIONAL else v % self.p, self.p, _checked=True)

    def __sub__(self, other):
        self._match(other)
        v = self.v - other.v
        return Scalar(v if self.p is RATIONAL else v % self.p, self.p, _checked=True)

    def __mul__(self, other):
        self._match(other)
        v = self.v * other.v
        return Scalar(v if self.p is RATIONAL else v % self.p, self.p, _checked=True)

    def __neg__(self):
        v = -self.v
        return Scalar(v if self.p is RATIONAL else v % self.p, self.p, _checked=True)

    def inv(self):
        if not self.v:
            raise DivisionByZero(f"inverse of zero in {field_name(self.p)}")
        if self.p is RATIONAL:
            return Scalar(1 / self.v, RATIONAL, _checked=True)
        return Scalar(pow(self.v, -1, self.p), self.p, _checked=True)

    def __truediv__(self, other):
        self._match(other)
        return self * other.inv()

    def is_zero(self):
        return not self.v

    def __bool__(self):
        return bool(self.v)

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.p == other.p and self.v == other.v

    def __hash__(self):
        return hash((self.p, self.v))

    def sort_key(self):
        # Fixed total order: residue order in F_p, (numerator, denominator) for Q.
        if self.p is RATIONAL:
            return (self.v.numerator, self.v.denominator)
        return (self.v,)

    def __lt__(self, other):
        self._match(other)
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.p is RATIONAL and self.v.denominator != 1:
            return f"{self.v.numerator}/{self.v.denominator}"
        return str(self.v if self.p is RATIONAL else self.v)

    def __repr__(self):
        if self.p is RATIONAL:
            return f"Scalar({self})"
        return f"Scalar({self.v}, p={self.p})"


def rational(n, d=1):
    return Scalar(Fraction(n, d), RATIONAL)


def residue(v, p):
    return Scalar(v, p)


def zero(p=RATIONAL):
    return rational(0) if p is RATIONAL else Scalar(0, p)


def one(p=RATIONAL):
    return rational(1) if p is RATIONAL else Scalar(1, p)


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def inv(a):
    return a.inv()


def enumerate_field(p):
    """All elements of F_p in ascending residue order."""
    check_modulus(p)
    return [Scalar(v, p, _checked=True) for v in range(p)]


def field_name(p):
    return "Q" if p is RATIONAL else f"F_{p}"


def parse_scalar(text, p=RATIONAL):
    """Parse the text encoding: "n/d" (or "n") for Q, a decimal residue for F_p."""
    text = text.strip()
    if p is RATIONAL:
        return Scalar(Fraction(text), RATIONAL)
    return Scalar(int(text), p)


def reduce_scalar_mod_p(a, p):
    """Reduce a rational scalar into F_p; the denominator must be a unit mod p."""
    from .errors import BadReduction

    if a.p is not RATIONAL:
        raise FieldMismatch("reduce_scalar_mod_p expects a rational scalar")
    check_modulus(p)
    den = a.v.denominator
    if den % p == 0:
        raise BadReduction(f"denominator of {a} vanishes mod {p}")
    return Scalar(a.v.numerator * pow(den, -1, p), p)
