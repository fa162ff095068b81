import pytest

import hammaps


def test_construct():
    r = hammaps.construct(2, 3)
    assert r["type"] == "{4,4}_6"
    assert r["invariants"]["genus"] == 1
    assert r["invariants"]["aut_order"] == 36
    inv = hammaps.invariants(r["map"])
    assert inv["type_string"] == "{4,4}_6"
    assert inv["regular"]


def test_enumerate():
    r = hammaps.enumerate_maps(2, 5)
    assert r["count"] == 2
    assert r["expected_count"] == 2
    assert hammaps.enumerate_maps(2, 5, workers=2) == r


def test_merged():
    r = hammaps.enumerate_maps(2, 4, merged=[2])
    assert r["verdict"] == "none"


def test_galois():
    g = hammaps.galois(25)
    assert g["degree"] == 4
    assert g["quotient_invariants"] == [2, 2]


def test_mirror_and_wilson():
    h = hammaps.construct(2, 5)["map"]
    m = hammaps.mirror(h)
    assert hammaps.iso(h, m)["isomorphic"] is False
    assert hammaps.iso(h, h)["isomorphic"] is True
    assert hammaps.canonical_code(hammaps.wilson(h, 7)) == hammaps.canonical_code(m)


def test_report_formats():
    rows = hammaps.report(2, 5)["rows"]
    assert len(rows) == 2
    csv = hammaps.report(2, 5, format="csv")
    assert csv.startswith("d,q,omega")


def test_errors():
    with pytest.raises(ValueError):
        hammaps.construct(2, 6)
    with pytest.raises(ValueError):
        hammaps.construct(2, 9, omega="t")
    with pytest.raises(hammaps.CapExceeded):
        hammaps.construct(2, 3, arc_cap=10)
    with pytest.raises(hammaps.CapExceeded):
        hammaps.enumerate_maps(2, 3, group_cap=10)
