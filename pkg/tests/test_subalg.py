import pytest

from sweedler_rb.algebra import h4
from sweedler_rb.autgroup import enumerate_maps
from sweedler_rb.errors import InvalidDim, NotASubalgebra
from sweedler_rb.field import one, rational, zero
from sweedler_rb.linops import Subspace
from sweedler_rb.subalg import (
    DIM2_LABELS,
    DIM3_LABELS,
    apply_map_to_subspace,
    census,
    classify_subalgebra,
    enumerate_subalgebras,
    enumerate_subspaces,
    is_subalgebra,
)

# counts verified against the closure predicate on the full subspace lists
F3_CENSUS = {
    "<1-g,x-gx>": 12,
    "<1,g>": 9,
    "<1,x-gx>": 2,
    "<1,x>": 2,
    "<x,gx>": 1,
    "<1-g,x,gx>": 2,
    "<1,g,x-gx>": 6,
    "<1,x,gx>": 1,
}


def _span_q(rows):
    return Subspace([[rational(v) for v in row] for row in rows], 4, None)


def test_subspace_enumeration_counts_f3():
    # Gaussian binomial coefficients [4 choose d] at q = 3
    assert len(enumerate_subspaces(3, 1)) == 40
    assert len(enumerate_subspaces(3, 2)) == 130
    assert len(enumerate_subspaces(3, 3)) == 40


def test_census_f3_counts():
    result = census(3)
    assert result["counts"] == F3_CENSUS
    assert sum(result["counts"].values()) == len(result["subalgebras"])


@pytest.mark.parametrize("p", [3, 5])
def test_all_eight_classes_attained(p):
    labels = {e["class_label"] for e in census(p)["subalgebras"]}
    assert labels == set(DIM2_LABELS) | set(DIM3_LABELS)


def test_classification_examples_over_q():
    assert classify_subalgebra(_span_q([[1, 0, 0, 0], [0, 1, 0, 0]])) == "<1,g>"
    assert classify_subalgebra(_span_q([[1, 0, 0, 0], [0, 0, 1, 3]])) == "<1,x>"
    assert classify_subalgebra(_span_q([[1, 0, 0, 0], [0, 0, 1, 1]])) == "<1,x-gx>"
    assert classify_subalgebra(_span_q([[1, 0, 0, 0], [0, 0, 1, -1]])) == "<1,x-gx>"
    assert classify_subalgebra(_span_q([[0, 0, 1, 0], [0, 0, 0, 1]])) == "<x,gx>"
    assert classify_subalgebra(_span_q([[1, -1, 0, 0], [0, 0, 1, -1]])) == "<1-g,x-gx>"
    assert classify_subalgebra(
        _span_q([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])) == "<1,x,gx>"
    assert classify_subalgebra(
        _span_q([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1]])) == "<1,g,x-gx>"
    assert classify_subalgebra(
        _span_q([[1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])) == "<1-g,x,gx>"


def test_non_subalgebra_raises():
    # span{1, gx + x... } closed; span{g + x} alone is not closed: (g+x)^2 = 1 - gx...
    s = _span_q([[0, 1, 1, 0], [1, 0, 0, 0]])
    assert is_subalgebra(s)
    bad = _span_q([[0, 1, 1, 0]])
    assert not is_subalgebra(bad)
    with pytest.raises(NotASubalgebra):
        classify_subalgebra(bad)


def test_invalid_dims():
    with pytest.raises(InvalidDim):
        enumerate_subalgebras(3, 4)
    with pytest.raises(InvalidDim):
        classify_subalgebra(_span_q([[1, 0, 0, 0]]))


def test_labels_are_aut_invariant_over_f3():
    A = h4(3)
    maps = enumerate_maps(3, include_anti=True)
    subs = enumerate_subalgebras(3, 2) + enumerate_subalgebras(3, 3)
    for s in subs:
        label = classify_subalgebra(s, A)
        for phi in maps[::7]:
            assert classify_subalgebra(apply_map_to_subspace(phi, s), A) == label


def test_every_closed_subspace_is_counted_f3():
    A = h4(3)
    for d in (2, 3):
        closed = [s for s in enumerate_subspaces(3, d) if is_subalgebra(s, A)]
        assert closed == enumerate_subalgebras(3, d)
