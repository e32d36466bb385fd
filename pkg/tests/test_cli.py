import csv
import io
import json

import pytest

from biscount.cli import run
from biscount.graphs import serialize_bipartite, serialize_coloured, uncoloured

from conftest import PATH, TRIANGLE


def call(argv):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.bis"
    p.write_text(serialize_bipartite(PATH))
    return str(p)


def result_of(text):
    return json.loads(text)["results"]["result"]


def test_count_brute_lis(path_file):
    code, out = call(["--json", "count", "--alg", "brute", "--problem", "lis", "--l", "1", path_file])
    assert code == 0 and result_of(out) == "2"


def test_count_table_and_flag_position(path_file):
    code, out = call(["count", "--alg", "brute", "--problem", "lis", "--l", "1", path_file])
    assert code == 0 and "result" in out and " 2\n" in out
    code, out = call(["count", "--problem", "lis", "--l", "1", path_file, "--json"])
    assert result_of(out) == "2"


@pytest.mark.parametrize("problem, extra, expected", [
    ("is", [], "5"), ("isk", ["--k", "2"], "1"), ("lis", ["--l", "2"], "1"),
    ("nlr", ["--l", "1", "--r", "1"], "2"),
])
def test_count_problems_agree(path_file, problem, extra, expected):
    for alg in ("brute", "bounded"):
        code, out = call(["--json", "count", "--alg", alg, "--problem", problem, *extra, path_file])
        assert code == 0 and result_of(out) == expected


def test_count_maxlis_prints_both(path_file):
    code, out = call(["--json", "count", "--problem", "maxlis", "--l", "1", path_file])
    res = json.loads(out)["results"]
    assert res == {"mu_l": "1", "result": "2"}


def test_count_profile(path_file):
    code, out = call(["--json", "count", "--problem", "nlr", "--l", "1", path_file])
    res = json.loads(out)["results"]
    assert res["N[1]"] == "2" and res["N[0]"] == "0"


def test_approx(path_file):
    code, out = call(["--json", "approx", "--k", "0", "--eps", "0.5", "--seed", "1", path_file])
    assert code == 0 and result_of(out) == "1"
    code, out = call(["--json", "approx", "--k", "2", "--eps", "1/2", "--seed", "1", path_file])
    assert json.loads(out)["results"]["samples"] == "160"


def test_reports_are_reproducible(path_file):
    argv = ["--json", "approx", "--k", "2", "--eps", "0.5", "--seed", "4", path_file]
    a = json.loads(call(argv)[1])
    b = json.loads(call(argv)[1])
    a.pop("millis"), b.pop("millis")
    assert a == b


def test_verify():
    code, out = call(["verify", "--problem", "lis", "--l", "2", "--delta", "3",
                      "--trials", "50", "--n", "12", "--seed", "9"])
    assert code == 0 and "50/50 agree" in out


def test_verify_hom_ind():
    for problem in ("hom", "ind"):
        code, out = call(["--json", "verify", "--problem", problem, "--trials", "10", "--n", "10"])
        assert code == 0 and result_of(out) == "10/10 agree"


def test_usage_errors(path_file):
    assert call(["frobnicate"])[0] == 1
    assert call([])[0] == 1
    assert call(["count", "--problem", "lis", path_file])[0] == 1
    assert call(["count", "--problem", "bogus", path_file])[0] == 1


def test_computation_errors(tmp_path, path_file, monkeypatch):
    bad = tmp_path / "bad.bis"
    bad.write_text("p bis 1 1 1\ne 2 1\n")
    assert call(["count", "--problem", "is", str(bad)])[0] == 2
    assert call(["count", "--problem", "lis", "--l", "1", str(tmp_path / "missing")])[0] == 2
    monkeypatch.setenv("BISCOUNT_GUARD", "2")
    assert call(["count", "--alg", "brute", "--problem", "is", path_file])[0] == 2


def test_reduce_pipelines(tmp_path, path_file):
    col = tmp_path / "tri.col"
    col.write_text(serialize_coloured(TRIANGLE))
    code, out = call(["--json", "reduce", "--pipeline", "maxis", path_file])
    doc = json.loads(out)
    assert code == 0 and result_of(out) == "1"
    assert doc["trace"]["reduction"] == "maxis_via_maxlis"
    assert result_of(call(["--json", "reduce", "--pipeline", "domset", "--k", "1", str(col)])[1]) == "3"
    assert result_of(call(["--json", "reduce", "--pipeline", "clique-gadget", "--k", "3", str(col)])[1]) == "1"
    assert result_of(call(["--json", "reduce", "--pipeline", "clique-complement", "--k", "2", path_file])[1]) == "1"
    two = tmp_path / "two.col"
    two.write_text("p col 4 2 2\nv 1 1\nv 2 2\nv 3 1\nv 4 2\ne 1 2\ne 3 4\n")
    assert result_of(call(["--json", "reduce", "--pipeline", "rainbow", "--t", "1", str(two)])[1]) == "2"
    assert call(["reduce", "--pipeline", "domset", str(col)])[0] == 1


def test_gen_and_count(tmp_path):
    target = tmp_path / "g.bis"
    code, _ = call(["gen", "--nl", "5", "--nr", "5", "--delta", "3", "--seed", "2", "--out", str(target)])
    assert code == 0 and target.read_text().startswith("p bis 5 5")
    code, text = call(["gen", "--nl", "5", "--nr", "5", "--seed", "2"])
    assert text == target.read_text()
    code, text = call(["gen", "--kind", "col", "--n", "4", "--q", "2"])
    assert text.startswith("p col 4")


def test_bench_csv():
    code, out = call(["bench", "--problem", "lis", "--param", "2", "--alg", "both", "--sizes", "20,40"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert list(rows[0]) == ["n", "m", "delta", "param", "algorithm", "millis", "result_digest"]
    assert rows[0]["result_digest"] == rows[1]["result_digest"]


def test_csv_output(path_file):
    code, out = call(["--csv", "count", "--problem", "lis", "--l", "1", path_file])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["result"] == "2"
