import json
import math
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from isingmaps import cache as C
from isingmaps.cli import main
from isingmaps.oracle import ising_polynomials


@st.composite
def tables(draw):
    rows = set()
    for _ in range(draw(st.integers(0, 8))):
        e = 3 * draw(st.integers(1, 4))
        a = draw(st.integers(0, 6))
        b = a + 3 * draw(st.integers(0, 2))
        rows.add((e, draw(st.integers(0, 3)), a, b))
    return C.CoeffTable(12, [r + (draw(st.integers(1, 10**30)),) for r in rows])


@given(tables())
def test_json_and_csv_round_trip(table):
    assert C.loads(C.dumps_json(table), "json") == table
    back = C.loads(C.dumps_csv(table), "csv")
    assert back.rows == table.rows
    assert C.dumps_csv(back) == C.dumps_csv(table)


def test_three_edges(tmp_path):
    table, _ = C.compute_cached(3, tmp_path / "c.json")
    assert table.rows == [(3, 0, 0, 0, 240), (3, 0, 0, 3, 480), (3, 0, 1, 1, 720),
                          (3, 1, 0, 0, 240), (3, 1, 0, 3, 120)]
    assert table.polynomial(3, 0)[(3, 0)] == 480


def test_six_edges_match_enumeration(tmp_path):
    table, _ = C.compute_cached(6, tmp_path / "c.json")
    for g, p in ising_polynomials(2).items():
        assert table.polynomial(6, g) == {(a, b): int(c) for (a, b, _), c in p.terms.items()}


def test_warm_cache_is_not_rewritten(tmp_path):
    path = tmp_path / "c.json"
    C.compute_cached(12, path)
    before, stamp = path.read_bytes(), path.stat().st_mtime_ns
    C.compute_cached(12, path, mode="fast")
    C.compute_cached(9, path)
    assert path.read_bytes() == before and path.stat().st_mtime_ns == stamp


def test_resume_gives_the_same_file(tmp_path):
    C.compute_cached(9, tmp_path / "a.json")
    C.compute_cached(21, tmp_path / "a.json", mode="fast")
    C.compute_cached(21, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


@pytest.mark.parametrize("damage", ["checksum", "version", "garbage"])
def test_corrupt_cache_is_refused(tmp_path, damage):
    path = tmp_path / "c.json"
    C.compute_cached(6, path)
    doc = json.loads(path.read_text())
    if damage == "checksum":
        doc["rows"][0][4] += 1
        path.write_text(json.dumps(doc))
    elif damage == "version":
        doc["version"] = 99
        path.write_text(json.dumps(doc))
    else:
        path.write_text("{not json")
    before = path.read_bytes()
    with pytest.raises(C.CacheError):
        C.compute_cached(9, path)
    assert path.read_bytes() == before


def test_lock_excludes_a_second_writer(tmp_path):
    path = tmp_path / "c.json"
    with C.locked(path):
        with pytest.raises(C.CacheBusy):
            C.compute_cached(3, path)


def test_invalid_rows_rejected():
    with pytest.raises(ValueError):
        C.CoeffTable(3, [(3, 0, 3, 0, 1)])
    with pytest.raises(ValueError):
        C.CoeffTable(3, [(3, 0, 0, 0, 0)])


# command line

def test_cli_compute_export(tmp_path, capsys):
    cache = str(tmp_path / "c.json")
    assert main(["compute", "--max-edges", "3", "--cache", cache]) == 0
    out = tmp_path / "t.csv"
    assert main(["export", "--format", "csv", "--out", str(out), "--cache", cache]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "e,g,a,b,c" and len(lines) == 6
    assert main(["export", "--format", "json", "--out", str(tmp_path / "t.json"), "--cache", cache]) == 0
    doc = json.loads((tmp_path / "t.json").read_text())
    assert set(doc) == {"version", "max_edges", "rows"} and doc["rows"][0] == {"e": 3, "g": 0, "a": 0, "b": 0, "c": 240}


def test_cli_export_empty_cache(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["export", "--format", "csv", "--out", str(out), "--cache", str(tmp_path / "none.json")]) == 0
    assert out.read_text() == "e,g,a,b,c\n"


def test_cli_verify_needs_depth(tmp_path, capsys):
    cache = str(tmp_path / "c.json")
    assert main(["verify", "--max-edges", "6", "--cache", cache]) == 2
    main(["compute", "--max-edges", "6", "--cache", cache])
    assert main(["verify", "--suite", "oracle", "--max-edges", "9", "--cache", cache]) == 2
    assert main(["verify", "--suite", "oracle", "--max-edges", "6", "--cache", cache]) == 0


def test_cli_verify_names_perturbed_coefficient(tmp_path):
    cache = tmp_path / "c.json"
    main(["compute", "--max-edges", "18", "--mode", "fast", "--cache", str(cache)])
    table = C.load(cache)
    # one extra rooted map on top of the (6n-1)! labelings keeps the table well formed
    bump = math.factorial(23)
    rows = [r[:4] + (r[4] + bump,) if r[:4] == (12, 1, 0, 3) else r for r in table.rows]
    C.save(C.CoeffTable(table.max_edges, rows), cache)
    report = tmp_path / "r.json"
    assert main(["verify", "--suite", "pde", "--max-edges", "18", "--cache", str(cache),
                 "--report", str(report)]) == 1
    result = json.loads(report.read_text())["results"][0]
    assert result["status"] == "fail"
    assert result["details"]["first"] == {"edges": 12, "genus": 1}


def test_cli_rejects_small_max_edges(capsys):
    with pytest.raises(SystemExit):
        main(["compute", "--max-edges", "2"])


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "isingmaps", "compute", "--max-edges", "3",
                           "--cache", str(tmp_path / "c.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and "maximal genus 1" in proc.stdout
