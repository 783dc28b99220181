import csv
import json
import os

import pytest

from fockhall import cli, hall, wedge
from fockhall.combinatorics import partitions_of


@pytest.fixture(autouse=True)
def _restore_globals():
    fields, cap, cache = hall.FIELD_SIZES, wedge.TRUNCATION_CAP, hall.current_cache()
    yield
    hall.set_field_sizes(fields)
    wedge.TRUNCATION_CAP = cap
    hall._cache = cache


def run(*argv):
    return cli.main([str(a) for a in argv])


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_canonical_matrix_shapes(tmp_path):
    out = tmp_path / "out"
    assert run("canonical", "--n", 2, "--max-size", 3, "--out", out) == cli.EXIT_OK
    for N in range(4):
        for tag in ("plus", "minus"):
            with open(out / f"canonical_{tag}_N{N}.csv") as fh:
                rows = list(csv.reader(fh))
            p = len(partitions_of(N))
            assert len(rows) == p + 1
            assert all(len(r) == p + 1 for r in rows)
    with open(out / "canonical_plus_N0.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[1][1] == "1*v^0"
    report = json.load(open(out / "positivity.json"))
    assert report["ok"] and [w["N"] for w in report["weights"]] == [0, 1, 2, 3]
    tables = json.load(open(out / "canonical.json"))["tables"]
    assert len(tables) == 8


def test_canonical_n2_N2_entries(tmp_path):
    out = tmp_path / "out"
    assert run("canonical", "--n", 2, "--max-size", 2, "--out", out, "--format", "json") == 0
    assert not os.path.exists(out / "canonical_plus_N2.csv")
    tables = json.load(open(out / "canonical.json"))["tables"]
    t = next(t for t in tables if t["N"] == 2 and t["sign"] == "+")
    order = [tuple(p) for p in t["order"]]
    col = order.index((2,))
    row = order.index((1, 1))
    # b+_(2) = |(2)> + v |(1,1)>
    assert t["matrix"][row][col] == [[1, 1]]
    assert t["matrix"][col][col] == [[0, 1]]


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("canonical", "--n", 3, "--max-size", 3, "--out", out) == 0
        assert run("crystal", "--n", 3, "--max-size", 3, "--out", out) == 0
        assert run("verify", "--n", 2, "--max-size", 3, "--out", out, "--checks", "ladder,boson_vacuum") == 0
    names = sorted(os.listdir(a))
    assert names == sorted(os.listdir(b))
    for name in names:
        assert read(a / name) == read(b / name), name


def test_crystal_edges(tmp_path):
    out = tmp_path / "out"
    assert run("crystal", "--n", 2, "--max-size", 4, "--out", out) == 0
    text = open(out / "crystal_n2_N4.dot").read()
    edges = [line for line in text.splitlines() if "->" in line]
    assert len(edges) == len(list(cli.crystal_edges(2, 4)))
    assert 'pempty -> p1 [label="0"];' in text
    assert 'p1 -> p2 [label="1"];' in text
    # non-regular nodes are drawn dashed
    assert any("p1_1 [" in line and "dashed" in line for line in text.splitlines())
    assert not any("p2_1 [" in line and "dashed" in line for line in text.splitlines())


def test_crystal_single_edge(tmp_path):
    out = tmp_path / "out"
    assert run("crystal", "--n", 3, "--max-size", 1, "--out", out) == 0
    edges = [line for line in open(out / "crystal_n3_N1.dot").read().splitlines() if "->" in line]
    assert len(edges) == 1


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["canonical", "--n", "1"],
    ["canonical", "--max-size", "11"],
    ["canonical", "--format", "xml"],
    ["verify", "--checks", "nope"],
    ["verify", "--fields", "2,6"],
    ["canonical", "--n", "two"],
])
def test_usage_errors(tmp_path, argv):
    with pytest.raises(SystemExit) as info:
        code = run(*argv, "--out", tmp_path)
        raise SystemExit(code)
    assert info.value.code == cli.EXIT_USAGE


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 3, "max_size": 1, "out": str(tmp_path / "fromfile")}))
    assert run("crystal", "--config", cfg) == 0
    assert os.path.exists(tmp_path / "fromfile" / "crystal_n3_N1.dot")
    assert run("crystal", "--config", cfg, "--n", 2, "--out", tmp_path / "flags") == 0
    assert os.path.exists(tmp_path / "flags" / "crystal_n2_N1.dot")
    cfg.write_text(json.dumps({"n": 3, "colour": "red"}))
    assert run("crystal", "--config", cfg) == cli.EXIT_USAGE


def test_verify_report_and_corrupted_cache(tmp_path):
    cache = tmp_path / "cache.json"
    out = tmp_path / "out"
    assert run("verify", "--n", 2, "--out", out, "--cache", cache, "--checks", "column_coproduct") == 0
    report = json.load(open(out / "verify.json"))
    assert report["schema"] == cli.REPORT_SCHEMA and report["ok"]
    assert [c["check"] for c in report["checks"]] == ["column_coproduct"]
    data = json.load(open(cache))
    for entry in data["entries"].values():
        counts = entry[sorted(entry)[0]]
        for k in counts:
            counts[k] += 5
    cache.write_text(json.dumps(data))
    assert run("verify", "--n", 2, "--out", out, "--cache", cache, "--checks", "column_coproduct") == cli.EXIT_FAIL
    failure = json.load(open(out / "failure.json"))
    assert "interpolation" in failure["message"]
    cache.write_text("{ not json")
    assert run("verify", "--n", 2, "--out", out, "--cache", cache, "--checks", "column_coproduct") == cli.EXIT_FAIL


def test_list_checks(capsys):
    assert run("list-checks") == 0
    assert set(capsys.readouterr().out.split()) == set(cli.checks.CHECKS)
