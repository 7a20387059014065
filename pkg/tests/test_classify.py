import numpy as np
import pytest

from sweedler_rb import catalog, search
from sweedler_rb.autgroup import conjugate, enumerate_maps
from sweedler_rb.classify import (
    canonical_form,
    classification_report,
    enumerate_rb,
    match_catalog,
    op_to_matrix,
    partition_orbits,
    report_json,
    verify_corollary,
    verify_kernel_theorems,
)
from sweedler_rb.errors import WeightMismatch
from sweedler_rb.field import rational, residue
from sweedler_rb.rb import dual

# orbit census over F_3 at weight 1: canonical packed value -> (size, families)
F3_ORBITS = {
    0: (2, ["trivial"]),
    5: (24, ["final-14"]),
    328: (12, ["final-13"]),
    488: (18, ["final-4"]),
    2152016: (144, ["final-12"]),
    2152496: (144, ["final-1"]),
    4901067: (36, ["final-11"]),
    4901150: (48, ["final-2"]),
    4901395: (24, ["final-3"]),
    4901555: (4, ["final-8"]),
    5196312: (36, ["final-5"]),
    5196640: (72, ["final-7"]),
    5196800: (36, ["final-10"]),
    19368072: (36, ["final-9"]),
    19368400: (36, ["final-6"]),
}


@pytest.fixture(scope="module")
def ops_f3():
    return enumerate_rb(3, 1, strategy="exhaustive")


@pytest.fixture(scope="module")
def report_f3(ops_f3):
    return match_catalog(partition_orbits(ops_f3, 3), "final")


def test_enumeration_count_and_order(ops_f3):
    assert len(ops_f3) == 672
    packed = [int(search.pack(op_to_matrix(w)[None, :, :], 3)[0]) for w in ops_f3]
    assert packed == sorted(packed)
    assert len(set(packed)) == 672


def test_strategies_agree():
    a = enumerate_rb(3, 1, strategy="exhaustive")
    b = enumerate_rb(3, 1, strategy="backtracking")
    assert [w.op for w in a] == [w.op for w in b]


def test_weight_rescaling_bijection(ops_f3):
    # R -> 2R maps the weight-1 set onto the weight-2 set
    two = enumerate_rb(3, 2, strategy="exhaustive")
    assert len(two) == len(ops_f3)
    scaled = {
        int(search.pack((2 * op_to_matrix(w)[None, :, :]) % 3, 3)[0])
        for w in ops_f3
    }
    packed_two = {
        int(search.pack(op_to_matrix(w)[None, :, :], 3)[0]) for w in two
    }
    assert scaled == packed_two


def test_canonical_form_is_orbit_invariant(ops_f3):
    rng = np.random.default_rng(13)
    maps = enumerate_maps(3, include_anti=True)
    for _ in range(25):
        w = ops_f3[int(rng.integers(len(ops_f3)))]
        c = canonical_form(w)
        assert canonical_form(c).op == c.op
        phi = maps[int(rng.integers(len(maps)))]
        assert canonical_form(conjugate(w, phi)).op == c.op
        assert canonical_form(dual(w)).op == c.op


def test_canonical_form_rejects_rational_operators():
    w = catalog.instantiate("final-4", rational(1))
    with pytest.raises(WeightMismatch):
        canonical_form(w)


def test_orbit_census_f3(report_f3):
    got = {
        o["_packed"]: (o["size"], o["matched_families"])
        for o in report_f3["orbits"]
    }
    assert got == F3_ORBITS
    assert sum(o["size"] for o in report_f3["orbits"]) == 672
    assert report_f3["trivial_count"] == 2
    assert report_f3["unmatched"] == []


def test_final_families_pairwise_inequivalent(report_f3):
    fo = report_f3["family_orbits"]
    assert set(fo) == {f"final-{n}" for n in range(1, 15)}
    singletons = [orbits for orbits in fo.values()]
    assert all(len(orbits) == 1 for orbits in singletons)
    assert len({orbits[0] for orbits in singletons}) == 14


def test_witnesses_present_and_labeled(report_f3):
    for o in report_f3["orbits"]:
        fams = [f for f in o["matched_families"] if f != "trivial"]
        if not fams:
            continue
        w = o["witness"]
        assert w["family"] in fams
        assert isinstance(w["dual"], bool)
        assert {"anti", "params", "matrix"} <= set(w["map"])


def test_report_json_strips_private_keys(report_f3):
    blob = report_json(report_f3)
    assert all("_packed" not in o and "_members" not in o for o in blob["orbits"])
    assert blob["total_rb_count"] == 672


def test_classification_report_pipeline_matches(report_f3):
    rep = classification_report(3, 1, strategy="exhaustive")
    assert {o["_packed"]: o["size"] for o in rep["orbits"]} == {
        o["_packed"]: o["size"] for o in report_f3["orbits"]
    }
    assert rep["strategy"] == "exhaustive"


def test_kernel_theorems_pass_f3(ops_f3):
    res = verify_kernel_theorems(3, 1, enumerated=ops_f3)
    assert res["pass"]
    assert len(res["theorems"]) == 12
    counts = {(t["scope"], t["label"]): t["count"] for t in res["theorems"]}
    assert counts[("kernel", "<x,gx>")] == 27
    assert counts[("kernel", "0")] == 19
    assert counts[("image", "<1,g,x-gx>")] == 21


def test_kernel_theorems_detect_mutation(ops_f3):
    # dropping an operator from the enumeration must surface as missing
    from sweedler_rb.classify import label_subspace

    target = label_subspace("<x,gx>", 3)
    victim = next(w for w in ops_f3 if w.op.kernel() == target)
    res = verify_kernel_theorems(
        3, 1, enumerated=[w for w in ops_f3 if w.op is not victim.op])
    assert not res["pass"]
    bad = [t for t in res["theorems"] if not t["pass"]]
    assert len(bad) == 1 and bad[0]["missing"]


@pytest.fixture(scope="module")
def corollary():
    return verify_corollary(rational(1), samples=8, seed=0, primes=(3,))


def test_corollary_exact_items(corollary):
    by = {it["item"]: it for it in corollary["items"]}
    assert by["i"]["pass"] and by["ii"]["pass"]


def test_corollary_conjugacy_items(corollary):
    by = {it["item"]: it for it in corollary["items"]}
    for name in ("iii", "iv", "vii"):
        assert by[name]["pass"], name
        assert by[name]["witness"]["map"]


def test_corollary_items_v_vi_fail_with_verified_findings(corollary):
    by = {it["item"]: it for it in corollary["items"]}
    assert not corollary["pass"]

    v = by["v"]
    assert not v["pass"] and v["hits"] < v["checked"]
    assert [f["pass"] for f in v["finding"]] == [True, True]
    assert "final-2" in v["finding"][0]["claim"]
    assert "final-3" in v["finding"][1]["claim"]

    vi = by["vi"]
    assert not vi["pass"] and vi["hits"] == 0
    assert len(vi["finding"]) == 1 and vi["finding"][0]["pass"]
    assert "final-12" in vi["finding"][0]["claim"]


def test_corollary_rejects_modular_weight():
    with pytest.raises(WeightMismatch):
        verify_corollary(residue(1, 3))
    with pytest.raises(WeightMismatch):
        verify_corollary(rational(0))
