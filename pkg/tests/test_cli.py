import csv
import json
import subprocess
import sys

import pytest

from orientdist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize(
    "family,orientation,param,value",
    [
        ("cycle:4", "0010", "OchiD", 4),  # C4 with two sources and two sinks
        ("cycle:4", "0001", "OchiD", 3),  # the directed 4-cycle
        ("path:4", "000", "OD", 1),
        ("star:3", "000", "OD", 3),
    ],
)
def test_compute(capsys, family, orientation, param, value):
    code, rep = run_json(capsys, "compute", "--family", family, "--orientation", orientation, "--param", param)
    assert code == 0 and rep["status"] == "ok"
    assert rep["value"] == value
    assert rep["witness_mask"] == orientation
    assert rep["elapsed_ms"] is None


@pytest.mark.parametrize(
    "family,param,direction,value",
    [("cycle:6", "OchiDp", "max", 3), ("biclique:1,4", "OD", "min", 2), ("complete:4", "OD", "max", 2)],
)
def test_extremal(capsys, family, param, direction, value):
    code, rep = run_json(capsys, "extremal", "--family", family, "--param", param, "--dir", direction)
    assert code == 0 and rep["value"] == value


def test_extremal_jobs_agree(capsys):
    args = ("extremal", "--family", "complete:4", "--param", "OchiDp", "--dir", "max")
    _, one = run_json(capsys, *args)
    _, four = run_json(capsys, *args, "--jobs", "4")
    for key in ("value", "witness_mask", "witness_labelling", "orientations_scanned"):
        assert one[key] == four[key]


def test_witness_reingestion(capsys):
    for family, param in (("cycle:6", "OchiDp"), ("biclique:2,3", "OchiD"), ("complete:4", "ODp")):
        _, rep = run_json(capsys, "extremal", "--family", family, "--param", param, "--dir", "max")
        code, check = run_json(
            capsys,
            "compute", "--family", family, "--orientation", rep["witness_mask"],
            "--param", param, "--labelling", rep["witness_labelling"],
        )
        assert code == 0 and check["distinguishing"] and check["valid_witness"]


def test_bad_witness_exit_1(capsys):
    code, rep = run_json(capsys, "compute", "--family", "cycle:4", "--orientation", "0001", "--param", "OD", "--labelling", "1,1,1,1")
    assert code == 1 and rep["distinguishing"] is False


def test_json_byte_identical(capsys):
    args = ("extremal", "--family", "cycle:5", "--param", "OchiD", "--dir", "min", "--json")
    _, a = run(capsys, *args)
    _, b = run(capsys, *args)
    assert a == b


def test_text_output_default(capsys):
    code, out = run(capsys, "compute", "--family", "path:4", "--orientation", "000", "--param", "OD")
    assert code == 0
    assert "value\t1" in out.splitlines()


def test_quiet(capsys):
    code, out = run(capsys, "compute", "--family", "path:4", "--orientation", "000", "--param", "OD", "--quiet")
    assert code == 0 and out == ""


def test_timing(capsys):
    _, rep = run_json(capsys, "compute", "--family", "path:4", "--orientation", "000", "--param", "OD", "--timing")
    assert isinstance(rep["elapsed_ms"], float)


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--family", "cycle:2", "--orientation", "00", "--param", "OD"],
        ["compute", "--family", "cycle:4", "--orientation", "001", "--param", "OD"],
        ["compute", "--family", "cycle:4", "--orientation", "0010", "--param", "chi"],
        ["extremal", "--family", "cycle:4", "--param", "OD"],
        ["verify", "--table", "3"],
        ["verify", "--table", "1", "--rows", "99"],
        ["construct", "latin"],
        ["construct", "words", "--m", "3", "--deleted", "01"],
        ["bogus"],
        [],
    ],
)
def test_invalid_input_exit_2(capsys, argv):
    assert main(argv) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["extremal", "--family", "complete:8", "--param", "OD", "--dir", "max"],
        ["verify", "--table", "1", "--rows", "11", "--max-size", "3"],
        ["construct", "rigid", "--family", "biclique:6,40"],
    ],
)
def test_resource_cap_exit_3(capsys, argv):
    assert main(argv) == 3


def test_verify_with_outputs(capsys, tmp_path):
    fig, table = tmp_path / "t.png", tmp_path / "t.csv"
    code, rep = run_json(capsys, "verify", "--table", "1", "--rows", "3,10", "--max-size", "9", "--csv", str(table), "--figure", str(fig))
    assert code == 0 and rep["all_match"]
    assert [r["instance"] for r in rep["rows"]] == ["cycle:4", "biclique:2,2", "biclique:3,3"]
    c4 = rep["rows"][0]["computed"]
    assert (c4["Dmin"], c4["Dmax"], c4["chiDmin"], c4["chiDmax"]) == (1, 2, 2, 4)
    assert fig.stat().st_size > 1000 and fig.read_bytes()[:4] == b"\x89PNG"
    rows = list(csv.DictReader(table.open()))
    assert len(rows) == 3 and all(r["match"] == "1" for r in rows)


def test_verify_text_is_tab_delimited(capsys):
    code, out = run(capsys, "verify", "--table", "2", "--rows", "14")
    assert code == 0
    lines = out.splitlines()
    header = next(l for l in lines if l.startswith("row\t"))
    assert header.split("\t")[2:6] == ["chi'", "D'", "chi'D", "D'min"]
    row = next(l for l in lines if l.startswith("14\t")).split("\t")
    assert row[1] == "biclique:3,3" and row[-5:] == ["1", "2", "3", "4", "yes"]


def test_construct_rigid(capsys):
    code, rep = run_json(capsys, "construct", "rigid", "--family", "biclique:4,13")
    assert code == 0
    assert rep["deleted_words"] == "1110,1100,1000"
    assert rep["certificate"] == {"rigid": True, "group_size": 1}
    code, rep = run_json(capsys, "construct", "rigid", "--family", "biclique:2,4")
    assert code == 0 and rep["existence"] == "no" and rep["example_automorphism"]


def test_construct_words(capsys):
    code, rep = run_json(capsys, "construct", "words", "--m", "3", "--deleted", "010,011,111", "--analyze")
    assert code == 0
    assert rep["words"] == "000,001,100,101,110"
    assert rep["in_degrees"] == rep["in_degrees_from_deleted"] == [3, 1, 2]
    assert rep["full_twins"] == []
    assert rep["rigid"] is True  # twin-free with distinct X in-degrees
    _, twins = run_json(capsys, "construct", "words", "--m", "3", "--words", "000,000,110,111,011", "--analyze")
    assert twins["full_twins"] == ["{y1,y2}"]
    assert twins["pair_antitwins"]["{x1,x3}"] == ["{y3,y5}"]


def test_construct_cycling(capsys):
    code, rep = run_json(capsys, "construct", "theorem54", "--m", "3", "--n", "8")
    assert code == 0
    assert rep["y_out_degrees"] == [2, 1, 2, 1, 2, 1, 2, 1]
    assert rep["labels_used"] == 4 and rep["distinguishing"]
    assert rep["proper_labels_used"] == 5 and rep["proper"] and rep["proper_distinguishing"]


def test_construct_latin(capsys):
    code, rep = run_json(capsys, "construct", "latin", "--order", "7", "--budget", "100000", "--seed", "42")
    assert code == 0 and rep["found"] and rep["asymmetric"]
    assert rep["all_out_colouring"] == {"proper": True, "distinguishing": True, "labels_used": 7}
    code, rep = run_json(capsys, "construct", "latin", "--order", "4")
    assert code == 0 and rep["found"] is False


def test_console_entry_point(tmp_path):
    edge_file = tmp_path / "g.txt"
    edge_file.write_text("p 3 2\ne 1 2\ne 2 3\n")
    proc = subprocess.run(
        [sys.executable, "-m", "orientdist", "compute", "--family", f"file:{edge_file}", "--orientation", "01", "--param", "OD", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 2
