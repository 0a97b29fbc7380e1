import pytest

from orientdist.config import Caps, InvalidInputError, ResourceCapError, caps_from_env
from orientdist.report import csv_text, table_text
from orientdist.verify import TABLE1, TABLE2, TableRow, compute_instance, instances, parse_rows, plan, verify_table


def test_parse_rows():
    assert parse_rows("all", 1) == list(range(1, 12))
    assert parse_rows("1-3,8, 10", 2) == [1, 2, 3, 8, 10]
    for bad in ("x", "0", "1-18"):
        with pytest.raises(InvalidInputError):
            parse_rows(bad, 2)


def test_instance_policy():
    even_cycles = next(r for r in TABLE1 if r.row == 6)
    assert instances(even_cycles, 12) == ["cycle:8", "cycle:10", "cycle:12"]
    assert instances(even_cycles, 9) == ["cycle:8"]
    assert instances(even_cycles, 7) == []
    first_paths = next(r for r in TABLE2 if r.row == 1)
    assert instances(first_paths, 12) == ["path:4", "path:6", "path:8"]
    assert plan(1, [6], 7, explicit=False) == []
    with pytest.raises(ResourceCapError):
        plan(1, [6], 7, explicit=True)


def test_expected_values_spot_checks():
    c4 = compute_instance(1, 3, "cycle:4")
    assert [c4.expected[c] for c in ("Dmin", "Dmax", "chiDmin", "chiDmax")] == [1, 2, 2, 4]
    assert c4.match and c4.mismatches() == []
    k33 = compute_instance(2, 14, "biclique:3,3")
    assert [k33.computed[c] for c in ("D'min", "D'max", "chi'Dmin", "chi'Dmax")] == [1, 2, 3, 4]
    k4 = compute_instance(2, 9, "complete:4")
    assert k4.expected["chi'Dmax"] == 3 and k4.match


def test_unbalanced_rows():
    # K_{2,4} has no rigid orientation, so the minimum column is left open and recomputed as 2
    row = compute_instance(1, 11, "biclique:2,4")
    assert row.expected["Dmin"] is None and row.computed["Dmin"] == 2
    # K_{2,3}: the arc index sits on the boundary of the closed form
    row = compute_instance(2, 17, "biclique:2,3")
    assert row.expected["D'"] is None and row.computed["D'"] == 2 and row.match


def test_verify_table_parallel_matches_serial():
    serial = verify_table(2, [3, 8, 13], max_size=6)
    parallel = verify_table(2, [3, 8, 13], max_size=6, jobs=3)
    assert [r.as_dict() for r in serial] == [r.as_dict() for r in parallel]
    assert all(r.match for r in serial)
    with pytest.raises(InvalidInputError):
        verify_table(3)


def test_mismatch_rendering():
    row = TableRow(1, 3, "C_4", "cycle:4", {"Dmin": 1, "Dmax": 3}, {"Dmin": 1, "Dmax": 2})
    assert not row.match and row.mismatches() == ["Dmax"]
    text = table_text([row], 1)
    assert "2!=3" in text and text.splitlines()[1].endswith("NO")
    assert csv_text([row], 1).splitlines()[0].startswith("row,instance,chi")


def test_caps_from_env(monkeypatch):
    assert caps_from_env("") == Caps()
    assert caps_from_env("max_edges=10, labelling_nodes=5").max_edges == 10
    for bad in ("max_edges", "nope=1", "max_edges=x", "max_edges=-1"):
        with pytest.raises(InvalidInputError):
            caps_from_env(bad)
    monkeypatch.setenv("ORIENTDIST_CAPS", "max_edges=3")
    assert caps_from_env().max_edges == 3


@pytest.mark.slow
@pytest.mark.parametrize("table", [1, 2])
def test_full_tables_at_default_size(table):
    rows = verify_table(table, max_size=12, jobs=4)
    spec_rows = TABLE1 if table == 1 else TABLE2
    assert {r.row for r in rows} == {r.row for r in spec_rows if instances(r, 12)}
    assert [r.instance for r in rows if not r.match] == []
