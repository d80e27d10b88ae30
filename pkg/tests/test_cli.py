import csv
import io
import json
import subprocess
import sys

import pytest

from motzkin.cli import main
from motzkin.linalg import Matrix01


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    code, out, _ = run(capsys, "count", 0)
    assert code == 0 and "|Mo_0| = 1" in out
    code, out, _ = run(capsys, "count", 3, "--format", "json")
    d = json.loads(out)
    assert d["size"] == "51"
    assert [c["lcell"] for c in d["cells"]] == ["1", "3", "5", "4"]


def test_gram_pretty(capsys):
    code, out, _ = run(capsys, "gram", 3, 1)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "rank 5 over Q"
    assert len(lines) == 7


def test_gram_fields(capsys):
    for f in ("GF2", "GF3"):
        code, out, _ = run(capsys, "gram", 3, 1, "--field", f)
        assert out.strip().endswith(f"rank 5 over {f}")
    code, out, _ = run(capsys, "gram", 4, 2, "--format", "json")
    d = json.loads(out)
    assert d["rank"] == "8" and len(d["order"]) == 9


def test_gram_matrix_and_csv_round_trip(capsys, tmp_path):
    _, text, _ = run(capsys, "gram", 4, 2, "--matrix")
    m = Matrix01.from_text(text)
    assert m.shape == (9, 9)
    _, out, _ = run(capsys, "gram", 4, 2, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "top" and len(rows[0]) == 10
    body = [[int(x) for x in r[1:]] for r in rows[1:]]
    assert Matrix01.from_rows(body) == m
    path = tmp_path / "m.txt"
    path.write_text(text)
    code, out, _ = run(capsys, "rank", path)
    assert code == 0 and out == "rank 8 over Q\n"
    code, out, _ = run(capsys, "rank", path, "--field", "GF2", "--format", "json")
    assert json.loads(out)["rank"] == "8"


def test_table(capsys):
    code, out, _ = run(capsys, "table", 4, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "k", "ssdim", "rank_Q", "rank_GF2"]
    r = next(r for r in rows if r["n"] == "4" and r["k"] == "2")
    assert (r["ssdim"], r["rank_Q"]) == ("9", "8")


def test_cells(capsys):
    code, out, _ = run(capsys, "cells", 3)
    assert code == 0
    assert "J_1  (5 x 5, 11 idempotents)" in out
    code, out, _ = run(capsys, "cells", 2, "--format", "csv")
    assert out.splitlines()[0] == "n,k,top,bottom,idempotent"
    code, out, _ = run(capsys, "cells", 3, "--format", "json")
    assert [c["idempotents"] for c in json.loads(out)["cells"]] == ["1", "3", "11", "16"]


@pytest.mark.parametrize("which,extra,header", [
    ("ssdim-vs-k", ["--n", 20], "k,ssdim"),
    ("summand-vs-t", ["--n", 25], "t,summand"),
    ("peak-vs-n", ["--range", "100:300:100"], "n,peak_t,n_over_3"),
    ("nthroot", [], "n,nth_root,limit_curve"),
    ("ratios", ["--range", "500,1000"], "n,ssgapr,gapr_root,faithr"),
])
def test_curves(capsys, which, extra, header):
    code, out, _ = run(capsys, "curve", which, *extra, "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == header


def test_curve_needs_n(capsys):
    code, _, err = run(capsys, "curve", "ssdim-vs-k")
    assert code == 2 and "needs --n" in err


def test_connected(capsys):
    code, out, _ = run(capsys, "connected", 4, "--format", "json")
    (row,) = json.loads(out)
    assert row["null"] and row["left"] and row["right"] and row["well"]


def test_submatrix(capsys):
    code, out, _ = run(capsys, "submatrix", 5, 1)
    assert out.strip().endswith("rank 9 over Q")


def test_stickel(capsys):
    code, out, _ = run(capsys, "stickel", 5, "--seed", 3, "--trials", 20, "--format", "json")
    d = json.loads(out)
    assert d["agree"] is True and d["statistics"]["agree"] == "20"
    _, again, _ = run(capsys, "stickel", 5, "--seed", 3, "--trials", 20, "--format", "json")
    assert again == out


@pytest.mark.parametrize("argv", [
    ["gram", 3, 5],
    ["gram", 3, 1, "--field", "GF4"],
    ["table", 3, "--fields", "X"],
    ["curve", "peak-vs-n", "--range", "a:b"],
    ["stickel", 1],
])
def test_argument_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert len(err.strip().splitlines()) == 1


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gram"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [["gram", 9, 1], ["cells", 9], ["connected", 7], ["table", 9]])
def test_size_guards(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and "--force" in err


def test_force_lifts_guard(capsys):
    code, out, _ = run(capsys, "count", 30)
    assert code == 0
    code, out, _ = run(capsys, "gram", 9, 9, "--force")
    assert code == 0 and out.strip().endswith("rank 1 over Q")


def test_output_file(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", 2, "--format", "csv", "--output", path)
    assert code == 0 and out == ""
    assert path.read_text().startswith("n,k,ssdim")


def test_executable_is_deterministic():
    cmd = ["motzkin", "table", "4", "--format", "csv"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"n,k,ssdim")
    out = subprocess.run([sys.executable, "-m", "motzkin.cli", "count", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and "|Mo_2| = 9" in out.stdout
