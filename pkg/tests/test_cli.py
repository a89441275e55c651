import json
import os
import subprocess
import sys

import pytest

from knotgrid.cli import run


def _capture(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_catalog_list(capsys):
    code, out = _capture(["catalog", "list"], capsys)
    assert code == 0
    for name in ("unknot", "figure8", "KT", "C", "KT_family", "C_family",
                 "unknot-clasp", "torus(2,k)"):
        assert name in out


def test_alexander_human_and_json(capsys):
    code, out = _capture(["alexander", "--link", "catalog:trefoil"], capsys)
    assert code == 0 and out.strip() == "t - 1 + t^{-1}"
    code, out = _capture(["alexander", "--link", "catalog:trefoil", "--json"], capsys)
    assert code == 0
    assert json.loads(out) == {"halves": [[2, 1], [0, -1], [-2, 1]]}


def test_hfk_json_matches_spec_format(capsys):
    code, out = _capture(["hfk", "--link", "catalog:torus(2,3)", "--json"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj == {"l": 1, "n": 5, "ranks": [[-2, -2, 1], [-1, 0, 1], [0, 2, 1]]}


def test_hfk_csv(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, _ = _capture(["hfk", "--link", "catalog:figure8", "--csv", str(path)], capsys)
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "M,A,rank"
    assert "0,0,3" in lines


def test_tau_command(capsys):
    code, out = _capture(["tau", "--link", "catalog:trefoil", "--json"], capsys)
    assert code == 0 and json.loads(out) == {"tau": 1}


def test_link_parsing_forms(tmp_path, capsys):
    code, out = _capture(["alexander", "--link", "braid:2:1,1,1"], capsys)
    assert code == 0 and "t - 1" in out
    grid = {"size": 2, "X": [1, 0], "O": [0, 1]}
    p = tmp_path / "g.json"
    p.write_text(json.dumps(grid))
    code, out = _capture(["alexander", "--link", f"grid:@{p}"], capsys)
    assert code == 0 and out.strip() == "1"


def test_verify_recursion_exit_codes(capsys):
    code, out = _capture(
        ["verify", "recursion", "--family", "catalog:unknot-clasp", "--range=-3..3", "--json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["all_passed"] is True


def test_verify_random_skein_seeded(capsys):
    code, out1 = _capture(["verify", "skein", "--random", "6", "--seed", "5", "--json"], capsys)
    assert code == 0
    _, out2 = _capture(["verify", "skein", "--random", "6", "--seed", "5", "--json"], capsys)
    assert out1 == out2


def test_usage_error_exit_2(capsys):
    code = run(["verify", "skein"])  # missing --family/--n/--random
    assert code == 2


def test_resource_error_exit_2(capsys):
    code = run(["hfk", "--link", "catalog:figure8", "--max-states", "5"])
    assert code == 2


def test_unknown_catalog_lists_names(capsys):
    code = run(["alexander", "--link", "catalog:nope"])
    assert code == 2
    err = capsys.readouterr().err
    assert "unknot" in err and "KT" in err


def test_cache_byte_identity(tmp_path, capsys):
    cache = str(tmp_path / "cache")
    argv = ["hfk", "--link", "catalog:figure8", "--json", "--cache-dir", cache]
    code, out1 = _capture(argv, capsys)
    assert code == 0
    files = os.listdir(cache)
    assert len(files) == 1
    code, out2 = _capture(argv, capsys)
    assert code == 0 and out1 == out2


def test_threads_do_not_change_output(capsys):
    base = ["hfk", "--link", "catalog:figure8", "--json"]
    _, out1 = _capture(base + ["--threads", "1"], capsys)
    _, out2 = _capture(base + ["--threads", "8"], capsys)
    assert out1 == out2


def test_alexander_window_flag(capsys):
    code, out = _capture(
        ["hfk", "--link", "braid:2:1,1,1,1,1", "--alexander-window", "1..3", "--json"],
        capsys,
    )
    assert code == 0
    obj = json.loads(out)
    assert all(2 <= a2 <= 6 for _, a2, _ in obj["ranks"])
    # half-integer bounds parse too
    code, _ = _capture(
        ["hfk", "--link", "braid:2:1,1,1,1,1", "--alexander-window", "3/2..5/2", "--json"],
        capsys,
    )
    assert code == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "knotgrid.cli", "catalog", "list"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "KT_family" in proc.stdout
