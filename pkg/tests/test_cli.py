import csv
import subprocess
import sys

import pytest

from wsheap.cli import main
from wsheap.indextree import degree_bound
from wsheap.instrument import format_trace, random_trace, read_constants
from wsheap.sssp import gen_graph, write_dimacs


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_trace_push_push_pop(tmp_path, capsys):
    f = write(tmp_path, "t.txt", "push 3\npush 1\npop\n")
    assert main(["trace", f]) == 0
    assert capsys.readouterr().out.splitlines() == ["pop 1"]


def test_trace_peek_on_empty(tmp_path, capsys):
    f = write(tmp_path, "t.txt", "peek\npush 2\npeek\n")
    assert main(["trace", f, "--audit"]) == 0
    assert capsys.readouterr().out.splitlines() == ["peek none", "peek 2"]


def test_trace_key_increase_fails(tmp_path, capsys):
    f = write(tmp_path, "t.txt", "push 5\ndeckey 1 9\n")
    assert main(["trace", f]) != 0
    assert "KeyIncrease" in capsys.readouterr().err


def test_trace_parse_error_reports_line(tmp_path, capsys):
    f = write(tmp_path, "t.txt", "push 1\nbogus\n")
    assert main(["trace", f]) == 2
    assert "line 2" in capsys.readouterr().err


def test_trace_missing_file(tmp_path):
    assert main(["trace", str(tmp_path / "nope.txt")]) == 2


def test_trace_10k_generated(tmp_path, capsys):
    f = write(tmp_path, "t.txt", format_trace(random_trace(10_000, seed=31)))
    assert main(["trace", f]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out and all(line.split()[0] in ("pop", "peek") for line in out)


def test_audit_command(capsys):
    assert main(["audit", "--ops", "300", "--seed", "5", "--traces", "3"]) == 0
    assert "0 failure(s)" in capsys.readouterr().out


def test_emit_tree_m8_raw(tmp_path):
    out = str(tmp_path / "tree.csv")
    assert main(["emit-tree", "--m", "8", "--out", out, "--no-subdivide"]) == 0
    leaves = read_rows(str(tmp_path / "tree_leaves.csv"))
    assert [int(r["depth"]) for r in leaves] == [1] * 8


def test_emit_tree_m10k(tmp_path):
    out = str(tmp_path / "tree.csv")
    leaves = str(tmp_path / "l.csv")
    assert main(["emit-tree", "--m", "10000", "--out", out, "--leaves", leaves]) == 0
    rows = read_rows(leaves)
    assert len(rows) == 10_000
    assert max(int(r["depth"]) for r in rows) <= 14
    assert all(int(r["max_path_children"]) <= degree_bound(int(r["i"])) for r in rows)
    nodes = read_rows(out)
    assert list(nodes[0]) == ["kind", "k", "j", "lo", "hi", "children", "depth"]


def test_emit_tree_m30_consistent(tmp_path):
    out = str(tmp_path / "tree.csv")
    assert main(["emit-tree", "--m", "30", "--out", out, "--no-subdivide"]) == 0
    nodes = read_rows(out)
    leaf30 = next(r for r in read_rows(str(tmp_path / "tree_leaves.csv")) if r["i"] == "30")
    # leaf 30 lies under (3,1) = [27, 31), which hangs off (2,2) under the root
    owners = [r for r in nodes if r["kind"] == "internal" and int(r["lo"]) <= 30 < int(r["hi"])]
    assert {(r["k"], r["j"]) for r in owners} == {("1", "3"), ("2", "2")}
    deepest = max(int(r["depth"]) for r in owners)
    assert int(leaf30["depth"]) == deepest + 1
    assert int(leaf30["max_path_children"]) == max(int(r["children"]) for r in nodes if r["kind"] == "internal")


def test_emit_tree_rejects_zero(tmp_path):
    assert main(["emit-tree", "--m", "0", "--out", str(tmp_path / "x.csv")]) == 2


def test_sssp_command(tmp_path):
    g = gen_graph("grid", 16, seed=3)
    gr = tmp_path / "g.gr"
    with open(gr, "w", encoding="utf-8") as fh:
        write_dimacs(g, fh)
    outs = []
    for heap in ("workset", "binary"):
        out = str(tmp_path / f"{heap}.csv")
        assert main(["sssp", "--graph", str(gr), "--source", "1", "--heap", heap, "--out", out]) == 0
        outs.append([r["distance"] for r in read_rows(out)])
    assert outs[0] == outs[1] and outs[0][0] == "0"


def test_sssp_bad_input(tmp_path):
    gr = write(tmp_path, "g.gr", "p sp 2 1\na 1 2 0\n")
    assert main(["sssp", "--graph", gr]) == 2
    gr = write(tmp_path, "h.gr", "p sp 2 1\na 1 2 4\n")
    assert main(["sssp", "--graph", gr, "--source", "3"]) == 2


def test_bench_grid_three_rows(tmp_path):
    out = str(tmp_path / "b.csv")
    assert main(["bench", "--workload", "grid", "--sizes", "256", "--out", out]) == 0
    rows = read_rows(out)
    assert len(rows) == 3
    assert {r["heap"] for r in rows} == {"workset", "binary", "fibonacci"}


def test_bench_zero_size_is_infeasible(tmp_path, capsys):
    assert main(["bench", "--workload", "random", "--sizes", "0", "--out", str(tmp_path / "b.csv")]) != 0
    assert "error" in capsys.readouterr().err


def test_bench_deterministic_modulo_wall_clock(tmp_path):
    def run(name):
        out = str(tmp_path / name)
        assert main(["bench", "--sizes", "64", "256", "--seed", "7", "--out", out]) == 0
        return [{k: v for k, v in r.items() if k != "wall_ms"} for r in read_rows(out)]

    assert run("a.csv") == run("b.csv")


def test_calibrate_writes_constants(tmp_path):
    out = tmp_path / "c.txt"
    assert main(["calibrate", "--out", str(out)]) == 0
    with open(out, encoding="utf-8") as fh:
        consts = read_constants(fh)
    assert set(consts) >= {"C_push", "C_dk", "C_pop"}
    assert all(v > 0 for v in consts.values())


def test_module_entry_point(tmp_path):
    f = write(tmp_path, "t.txt", "push 4\npush 2\npop\n")
    r = subprocess.run([sys.executable, "-m", "wsheap", "trace", f], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "pop 2"


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
