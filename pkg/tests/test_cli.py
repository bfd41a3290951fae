import csv
import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from secluded.cli import main, solve
from secluded.generators import fig1_graph, path_graph, random_connected
from secluded.graph import format_graph
from secluded.oracle import bf_secluded_kpath

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def gfile(tmp_path):
    def write(g, name="g.graph"):
        p = tmp_path / name
        p.write_text(format_graph(g))
        return str(p)
    return write


def test_fig1_oracle(capsys, gfile):
    code, out, _ = run(capsys, "solve", "--algo", "oracle", "--graph", gfile(fig1_graph()),
                       "--k", "5", "--l", "5", "--exact-k")
    rec = json.loads(out)
    assert code == 0 and rec["answer"] is True
    assert rec["witness"]["length"] == len(rec["witness"]["path"]) == 5


def test_shortest_on_path(capsys, gfile):
    code, out, _ = run(capsys, "solve", "--algo", "shortest", "--graph", gfile(path_graph(4)))
    assert code == 0 and json.loads(out)["answer"] == 0


@pytest.mark.parametrize("algo", ["nd", "tc", "cw"])
def test_engines_agree_with_oracle(capsys, gfile, tmp_path, algo):
    g = random_connected(7, 10, 3)
    path = gfile(g)
    extra = ["--naive-expr"] if algo == "cw" else []
    for k in range(2, 8):
        for l in range(0, 8):
            flags = ["--graph", path, "--k", str(k), "--l", str(l), "--exact-k"]
            _, a, _ = run(capsys, "solve", "--algo", algo, *flags, *extra)
            _, b, _ = run(capsys, "solve", "--algo", "oracle", *flags)
            assert json.loads(a)["answer"] == json.loads(b)["answer"] == bf_secluded_kpath(g, k, l)


def test_witness_revalidates(gfile):
    g = random_connected(8, 12, 5)
    for algo in ("oracle", "nd", "tc"):
        rep = solve(g, algo, 6, 8, exact_k=True)
        if rep.witness:
            assert rep.witness.length == 6 and rep.witness.neighbor_count <= 8


@pytest.mark.parametrize("argv", [
    ["solve", "--algo", "cw", "--k", "3", "--l", "1"],                 # cw without --expr
    ["solve", "--algo", "shortest", "--k", "3"],                       # shortest takes no k
    ["solve", "--algo", "nd"],                                         # missing k, l
    ["solve", "--algo", "oracle", "--k", "99", "--l", "1"],            # k out of range
])
def test_input_errors(capsys, gfile, argv):
    argv = argv[:2] + [argv[2], "--graph", gfile(fig1_graph())] + argv[3:]
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_missing_and_malformed_files(capsys, tmp_path):
    code, _, _ = run(capsys, "solve", "--algo", "shortest", "--graph", str(tmp_path / "nope"))
    assert code == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("p edge 3 1\ne 1 7\n")
    code, _, _ = run(capsys, "solve", "--algo", "shortest", "--graph", str(bad))
    assert code == 2


def test_caps_exit_3(capsys, gfile):
    path = gfile(fig1_graph())
    code, _, err = run(capsys, "solve", "--algo", "cw", "--naive-expr", "--graph", path,
                       "--k", "5", "--l", "5")
    assert code == 3 and "cap" in err
    code, _, _ = run(capsys, "solve", "--algo", "tc", "--graph", gfile(path_graph(20)),
                     "--k", "5", "--l", "5")
    assert code == 3
    code, out, _ = run(capsys, "solve", "--algo", "tc", "--graph", gfile(path_graph(20)),
                       "--k", "20", "--l", "0", "--no-caps")
    assert code == 0 and json.loads(out)["answer"] is True


def test_oracle_budget_exit_3(capsys, gfile):
    from secluded.generators import complete_graph
    code, _, _ = run(capsys, "solve", "--algo", "oracle", "--graph", gfile(complete_graph(10)),
                     "--k", "10", "--l", "0", "--budget", "50")
    assert code == 3


def test_timing_is_opt_in(capsys, gfile):
    path = gfile(fig1_graph())
    _, out, _ = run(capsys, "solve", "--algo", "nd", "--graph", path, "--k", "5", "--l", "5")
    assert "micros" not in json.loads(out)
    _, out, _ = run(capsys, "solve", "--algo", "nd", "--graph", path, "--k", "5", "--l", "5",
                    "--timing")
    assert json.loads(out)["micros"] >= 0


def test_gen_is_deterministic(capsys):
    outs = [run(capsys, "gen", "--family", "random", "--n", "10", "--p", "0.4", "--seed", "7")[1]
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0].startswith("# family random")
    a = run(capsys, "gen", "--family", "mc-reduction", "--k", "3", "--seed", "1")[1]
    b = run(capsys, "gen", "--family", "mc-reduction", "--k", "3", "--seed", "1")[1]
    assert a == b and "threshold" in a


def test_gen_writes_companions(capsys, tmp_path):
    out = tmp_path / "k5.graph"
    assert main(["gen", "--family", "clique", "--n", "5", "--out", str(out), "--golden"]) == 0
    assert out.with_suffix(".expr").exists()
    gold = json.loads(out.with_suffix(".golden").read_text())
    assert gold["shortest"] == 3 and [5, 0] in gold["profile"]   # s, t adjacent
    assert main(["gen", "--family", "clique", "--n", "5", "--golden"]) == 2


def test_crosscheck_shipped_corpus(capsys):
    code, out, _ = run(capsys, "crosscheck", "--corpus", str(CORPUS))
    summary = json.loads(out.strip().splitlines()[-1])
    assert code == 0 and summary["disagreements"] == 0 and summary["instances"] >= 40


def test_crosscheck_detects_corrupt_golden(capsys, tmp_path):
    for f in CORPUS.glob("path-5.*"):
        shutil.copy(f, tmp_path)
    gold = tmp_path / "path-5.golden"
    rec = json.loads(gold.read_text())
    rec["shortest"] += 1
    gold.write_text(json.dumps(rec))
    code, out, _ = run(capsys, "crosscheck", "--corpus", str(tmp_path))
    assert code == 1 and '"agree": false' in out


def test_crosscheck_empty_corpus(capsys, tmp_path):
    code, out, err = run(capsys, "crosscheck", "--corpus", str(tmp_path))
    assert code == 0 and "warning" in err and json.loads(out)["instances"] == 0


def test_crosscheck_parallel_matches_serial(capsys, tmp_path):
    for name in ("path-5", "grid-2x3", "fig1"):
        for f in CORPUS.glob(f"{name}.*"):
            shutil.copy(f, tmp_path)
    serial = run(capsys, "crosscheck", "--corpus", str(tmp_path))[1]
    parallel = run(capsys, "crosscheck", "--corpus", str(tmp_path), "--jobs", "2")[1]
    assert serial == parallel


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "4,5", "--solvers", "oracle,nd,tc,shortest")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["instance", "solver", "param", "k", "l", "answer", "micros", "states"]
    assert {r["solver"] for r in rows} == {"oracle", "nd", "tc", "shortest"}
    by_key = {}
    for r in rows:
        if r["k"]:
            by_key.setdefault((r["instance"], r["k"]), set()).add(r["answer"])
    assert all(len(v) == 1 for v in by_key.values())


def test_module_entry_point(tmp_path):
    p = tmp_path / "p4.graph"
    p.write_text(format_graph(path_graph(4)))
    res = subprocess.run([sys.executable, "-m", "secluded", "solve", "--algo", "wshortest",
                          "--graph", str(p)], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["answer"] == 0
