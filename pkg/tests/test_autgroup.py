from itertools import product

import numpy as np
import pytest

from sweedler_rb import catalog
from sweedler_rb.algebra import h4
from sweedler_rb.autgroup import (
    AutoMap,
    conjugate,
    enumerate_maps,
    from_params,
    iter_maps,
    validate,
)
from sweedler_rb.errors import InvalidParams
from sweedler_rb.field import enumerate_field, one, rational, residue, zero
from sweedler_rb.linops import LinearOperator
from sweedler_rb.rb import is_rb


def test_counts_over_f3():
    autos = enumerate_maps(3, include_anti=False)
    both = enumerate_maps(3, include_anti=True)
    assert len(autos) == 72
    assert len(both) == 144


def test_counts_over_f5():
    # per anti-class: 2 (eps) * 25 (a, b) * 16 (p, q with p^2 != q^2)
    assert len(enumerate_maps(5, include_anti=False)) == 800
    assert len(enumerate_maps(5, include_anti=True)) == 1600


def test_all_maps_validate_over_f3():
    A = h4(3)
    for phi in enumerate_maps(3, include_anti=True):
        assert validate(phi, A)


def test_enumeration_has_no_duplicates():
    maps = enumerate_maps(3, include_anti=True)
    keys = {(phi.anti, tuple(tuple(e.v for e in col) for col in phi.op.cols))
            for phi in maps}
    assert len(keys) == len(maps)


def test_invalid_params_rejected():
    with pytest.raises(InvalidParams):
        from_params(rational(2), rational(0), rational(0), rational(1), rational(0))
    with pytest.raises(InvalidParams):
        from_params(rational(1), rational(0), rational(0), rational(2), rational(2))
    with pytest.raises(InvalidParams):
        from_params(one(3), zero(3), zero(3), residue(1, 3), residue(2, 3))


def test_antiautomorphism_flips_gx():
    # psi(g) = g, psi(x) = x reversing products forces psi(gx) = -gx
    psi = from_params(rational(1), rational(0), rational(0), rational(1),
                      rational(0), anti=True)
    A = h4()
    assert validate(psi, A)
    gx = A.basis_vector(3)
    assert psi.op.apply(gx) == A.scale(rational(-1), gx)


def test_parametrization_is_surjective_over_f3():
    # every unital linear map determined by images of g and x that satisfies
    # (reversed) multiplicativity is in the enumeration
    A = h4(3)
    elems = enumerate_field(3)
    expected = {(phi.anti, tuple(tuple(e.v for e in col) for col in phi.op.cols))
                for phi in enumerate_maps(3, include_anti=True)}
    found = set()
    for anti in (False, True):
        for img_g in product(elems, repeat=4):
            for img_x in product(elems, repeat=4):
                if anti:
                    img_gx = A.multiply(img_x, img_g)
                else:
                    img_gx = A.multiply(img_g, img_x)
                cols = [tuple(A.unit()), tuple(img_g), tuple(img_x),
                        tuple(img_gx)]
                phi = AutoMap(LinearOperator([list(c) for c in cols], 3), anti)
                if validate(phi, A):
                    found.add((anti, tuple(tuple(e.v for e in col)
                                           for col in phi.op.cols)))
    assert found == expected


def test_group_closure_over_f3():
    maps = enumerate_maps(3, include_anti=True)
    mats = {(phi.anti, tuple(tuple(e.v for e in col) for col in phi.op.cols))
            for phi in maps}
    rng = np.random.default_rng(11)
    for _ in range(200):
        f = maps[int(rng.integers(len(maps)))]
        g = maps[int(rng.integers(len(maps)))]
        comp = f.op.compose(g.op)
        key = (f.anti != g.anti, tuple(tuple(e.v for e in col) for col in comp.cols))
        assert key in mats


def test_conjugation_preserves_rb():
    rng = np.random.default_rng(12)
    maps = enumerate_maps(3, include_anti=True)
    w = catalog.reduce_mod_p(
        catalog.instantiate("final-12", rational(1), [rational(2)]), 3)
    for _ in range(50):
        phi = maps[int(rng.integers(len(maps)))]
        assert is_rb(conjugate(w, phi))


def test_conjugate_inverse_round_trip():
    maps = enumerate_maps(3, include_anti=True)
    w = catalog.reduce_mod_p(catalog.instantiate("final-4", rational(1)), 3)
    phi = maps[37]
    inv_op = phi.op.invert()
    back = conjugate(conjugate(w, phi), AutoMap(inv_op, phi.anti))
    assert back.op == w.op


def test_lazy_iteration_matches_enumeration():
    assert [phi.op.cols for phi in iter_maps(3, include_anti=False)] == [
        phi.op.cols for phi in enumerate_maps(3, include_anti=False)]
