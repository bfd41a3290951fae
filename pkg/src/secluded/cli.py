"""Command-line front end: ``python3 -m secluded {solve,crosscheck,gen,bench} ...``.

Exit codes: 0 solved (the answer may be "no"), 1 crosscheck disagreement,
2 input error, 3 budget or parameter cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import cw, generators as gen, oracle
from .errors import BudgetExceeded, InputError
from .expression import builder_expression, format_expression, linear_expression, naive_expression, \
    parse_expression, eval_expression
from .graph import Graph, format_graph, parse_graph
from .nd import NdSolver
from .oracle import PathWitness, make_witness
from .shortest import shortest_secluded, weighted_shortest_secluded
from .tc import TcSolver

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

CAPS = {"nd": 16, "tc": 8, "cw": 8}
ALGOS = ("oracle", "cw", "nd", "tc", "shortest", "wshortest")


@dataclass
class RunReport:
    instance: str
    solver: str
    k: Optional[int] = None
    l: Optional[int] = None
    exact_k: bool = False
    exact_l: bool = False
    answer: object = None           # bool for decisions, neighbor count for shortest
    witness: Optional[PathWitness] = None
    param: Optional[int] = None     # labels, modules or cover size
    stats: dict = field(default_factory=dict)
    micros: Optional[int] = None

    def to_json(self) -> str:
        rec = {"instance": self.instance, "solver": self.solver}
        if self.k is not None:
            rec.update(k=self.k, l=self.l, exact_k=self.exact_k, exact_l=self.exact_l)
        rec["answer"] = self.answer
        rec["witness"] = self.witness.to_dict() if self.witness else None
        rec["param"] = self.param
        rec["stats"] = dict(sorted(self.stats.items()))
        if self.micros is not None:
            rec["micros"] = self.micros
        return json.dumps(rec, sort_keys=False)


# -- solving -------------------------------------------------------------

def _decide_from_pairs(pairs, k, l, exact_k, exact_l):
    return any((kk == k if exact_k else kk <= k) and (ll == l if exact_l else ll <= l)
               for kk, ll in pairs)


def solve(g: Graph, algo: str, k=None, l=None, exact_k=False, exact_l=False,
          tree=None, caps=None, instance="-", budget=10 ** 7) -> RunReport:
    """Run one solver and return its report; raises InputError / BudgetExceeded."""
    caps = CAPS if caps is None else caps
    if algo not in ALGOS:
        raise InputError(f"unknown algorithm {algo!r}")
    rep = RunReport(instance, algo)
    if algo in ("shortest", "wshortest"):
        if k is not None or l is not None:
            raise InputError(f"--algo {algo} takes no --k/--l")
        if algo == "shortest":
            if g.weighted:
                raise InputError("--algo shortest needs an unweighted graph (use wshortest)")
            w = shortest_secluded(g, check=True)
        else:
            w = weighted_shortest_secluded(g if g.weighted else g.with_unit_weights(),
                                           budget=budget, stats=rep.stats)
            if w is not None:
                w = make_witness(g, w.vertices)
        rep.witness = w
        rep.answer = None if w is None else w.neighbor_count
        return rep
    if k is None or l is None:
        raise InputError(f"--algo {algo} needs --k and --l")
    if not 2 <= k <= g.n or not 0 <= l <= g.n:
        raise InputError(f"need 2 <= k <= {g.n} and 0 <= l <= {g.n}")
    if g.weighted:
        raise InputError(f"--algo {algo} works on unweighted graphs")
    rep.k, rep.l, rep.exact_k, rep.exact_l = k, l, exact_k, exact_l
    kk_range = [k] if exact_k else range(2, k + 1)
    if algo == "oracle":
        paths = list(oracle.enumerate_st_paths(g, k, budget))
        hits = [p for p in paths
                if _decide_from_pairs([(p.length, p.neighbor_count)], k, l, exact_k, exact_l)]
        rep.stats["paths"] = len(paths)
        rep.answer = bool(hits)
        if hits:
            rep.witness = min(hits, key=lambda p: (p.length, p.neighbor_count, p.vertices))
    elif algo == "cw":
        if tree is None:
            raise InputError("--algo cw needs --expr")
        rep.param = tree.r
        if caps.get("cw") is not None and tree.r > caps["cw"]:
            raise BudgetExceeded(f"parameter too large: {tree.r} labels exceed the cap of {caps['cw']}")
        pairs = cw.accepted_pairs(tree, k, l, stats=rep.stats)
        rep.answer = _decide_from_pairs(pairs, k, l, exact_k, exact_l)
    else:
        if algo == "nd":
            solver = NdSolver(g, caps.get("nd"))
            rep.param = solver.inst.r
        else:
            solver = TcSolver(g, caps.get("tc"))
            rep.param = len(solver.cover)
        for kk in kk_range:
            rep.witness = solver.secluded_kpath(kk, l, exact_l)
            if rep.witness:
                break
        rep.answer = rep.witness is not None
        rep.stats.update(solver.stats)
    if rep.witness is not None:
        make_witness(g, rep.witness.vertices)   # revalidate
    return rep


def _read_text(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_tree(path, g):
    tree = parse_expression(_read_text(path))
    h, _ = eval_expression(tree)
    if h != g:
        raise InputError("expression does not evaluate to the given graph and terminals")
    return tree


def cmd_solve(args) -> int:
    g = parse_graph(_read_text(args.graph))
    tree = _load_tree(args.expr, g) if args.expr else None
    if args.algo == "cw" and tree is None and args.naive_expr:
        tree = naive_expression(g)
    caps = dict(CAPS)
    if args.no_caps:
        caps = {}
    start = time.perf_counter()
    rep = solve(g, args.algo, args.k, args.l, args.exact_k, args.exact_l, tree, caps,
                instance=Path(args.graph).name, budget=args.budget)
    if args.timing:
        rep.micros = int((time.perf_counter() - start) * 1e6)
    print(rep.to_json())
    return EXIT_OK


# -- crosscheck ----------------------------------------------------------

def golden_record(g: Graph) -> dict:
    """Oracle answers stored next to corpus graphs."""
    rec = {}
    if not g.weighted:
        rec["profile"] = sorted(list(p) for p in oracle.path_profile(g))
    w = oracle.bf_shortest_secluded(g)
    rec["shortest"] = None if w is None else w.neighbor_count
    return rec


def _crosscheck_one(path: Path):
    """Returns (lines, disagreements) for one corpus graph."""
    g = parse_graph(path.read_text())
    name = path.name
    expr = path.with_suffix(".expr")
    tree = _load_tree(expr, g) if expr.exists() else None
    truth = golden_record(g)
    lines, bad = [], 0
    gold_path = path.with_suffix(".golden")
    if gold_path.exists():
        gold = json.loads(gold_path.read_text())
        ok = gold == truth
        bad += not ok
        lines.append({"instance": name, "solver": "golden", "agree": ok})
    if not g.weighted:
        prof = {tuple(p) for p in truth["profile"]}
        queries = [(k, l) for k in range(2, g.n + 1) for l in range(g.n + 1)]
        engines = []
        if tree is not None and tree.r <= CAPS["cw"]:
            pairs = cw.cw_profile(tree)
            engines.append(("cw", lambda k, l, e: (k, l) in pairs if e else
                            any(kk == k and ll <= l for kk, ll in pairs)))
        for label, cls, cap in (("nd", NdSolver, CAPS["nd"]), ("tc", TcSolver, CAPS["tc"])):
            try:
                solver = cls(g, cap)
            except BudgetExceeded:
                lines.append({"instance": name, "solver": label, "skipped": "parameter cap"})
                continue
            engines.append((label, lambda k, l, e, s=solver: s.secluded_kpath(k, l, e) is not None))
        for label, decide in engines:
            wrong = []
            for k, l in queries:
                for exact in (False, True):
                    want = (k, l) in prof if exact else any(kk == k and ll <= l for kk, ll in prof)
                    if decide(k, l, exact) != want:
                        wrong.append([k, l, exact, want])
            bad += bool(wrong)
            lines.append({"instance": name, "solver": label, "queries": 2 * len(queries),
                          "disagreements": wrong})
        w = shortest_secluded(g, check=True)
        got = None if w is None else w.neighbor_count
        bad += got != truth["shortest"]
        lines.append({"instance": name, "solver": "shortest", "value": got,
                      "oracle": truth["shortest"]})
    w = weighted_shortest_secluded(g if g.weighted else g.with_unit_weights())
    got = None if w is None else w.neighbor_count
    bad += got != truth["shortest"]
    lines.append({"instance": name, "solver": "wshortest", "value": got, "oracle": truth["shortest"]})
    return lines, bad


def cmd_crosscheck(args) -> int:
    files = sorted(Path(args.corpus).glob("*.graph"))
    if not files:
        print(f"warning: no *.graph files under {args.corpus}", file=sys.stderr)
        print(json.dumps({"instances": 0, "disagreements": 0}))
        return EXIT_OK
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_crosscheck_one, files))
    else:
        results = [_crosscheck_one(f) for f in files]
    total = 0
    for lines, bad in results:
        total += bad
        for rec in lines:
            print(json.dumps(rec))
    print(json.dumps({"instances": len(files), "disagreements": total}))
    return EXIT_DISAGREE if total else EXIT_OK


# -- generation ----------------------------------------------------------

FAMILIES = ("random", "connected", "clique", "path", "cycle", "star", "grid", "biclique",
            "fig1", "modules", "cluster", "mc", "mc-reduction")


def generate(args):
    """(graph text, expression text or None) for the requested family."""
    f, seed = args.family, args.seed
    tree = None
    if f == "random":
        g = gen.random_graph(args.n, args.p, seed)
    elif f == "connected":
        m = args.m if args.m is not None else min(2 * args.n, args.n * (args.n - 1) // 2)
        g = gen.random_connected(args.n, m, seed)
    elif f == "clique":
        g, tree = gen.complete_graph(args.n), builder_expression("clique", args.n)
    elif f == "path":
        g, tree = gen.path_graph(args.n), builder_expression("path", args.n)
    elif f == "cycle":
        g = gen.cycle_graph(args.n)
    elif f == "star":
        g = gen.star_graph(args.n - 1)
    elif f == "grid":
        g = gen.grid_graph(args.rows, args.cols)
    elif f == "biclique":
        g = gen.complete_bipartite_graph(args.a, args.b)
        tree = builder_expression("complete-bipartite", args.a, args.b)
    elif f == "fig1":
        g = gen.fig1_graph()
    elif f == "modules":
        g = gen.random_modules([args.module_size] * args.n, args.p, seed)
    elif f == "cluster":
        g = gen.random_cluster(args.cover, [args.module_size] * args.n, args.p, seed)
    elif f in ("mc", "mc-reduction"):
        r = args.k - 1 if args.r is None else args.r
        mc = gen.random_mc(args.k, args.part_size, r, seed)
        if f == "mc":
            return gen.format_mc(mc, f"multicolored clique k={mc.k} r={mc.r} seed={seed}"), None
        red = gen.reduce_mc(mc)
        note = (f"reduction of a multicolored clique instance k={mc.k} r={mc.r} seed={seed}\n"
                f"threshold {red.threshold} d {red.d} clique {gen.has_multicolored_clique(mc)}")
        return format_graph(red.graph, note), None
    else:
        raise InputError(f"unknown family {f!r}")
    if tree is None and getattr(args, "linear_expr", False):
        tree = linear_expression(g)
    return format_graph(g, f"family {f}"), (format_expression(tree) if tree else None)


def cmd_gen(args) -> int:
    if args.golden and args.out is None:
        raise InputError("--golden needs --out")
    text, expr = generate(args)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    Path(args.out).write_text(text)
    if expr is not None:
        Path(args.out).with_suffix(".expr").write_text(expr)
    if args.golden:
        rec = golden_record(parse_graph(text))
        Path(args.out).with_suffix(".golden").write_text(json.dumps(rec) + "\n")
    return EXIT_OK


# -- bench ---------------------------------------------------------------

BENCH_FIELDS = ["instance", "solver", "param", "k", "l", "answer", "micros", "states"]


def _state_count(stats):
    for key in ("dp_states", "ilp_nodes", "skeleton_states", "paths_visited"):
        if key in stats:
            return stats[key]
    return ""


def _bench_instance(job):
    family, n, seed, solvers, p = job
    args = argparse.Namespace(family=family, n=n, p=p, m=None, seed=seed, cover=2,
                              module_size=2, rows=2, cols=n // 2, a=n // 2, b=n - n // 2,
                              k=3, r=None, part_size=2)
    text, _ = generate(args)
    g = parse_graph(text)
    name = f"{family}-n{g.n}-s{seed}"
    rows = []
    for solver in solvers:
        tree = naive_expression(g) if solver == "cw" else None
        ks = [None] if solver in ("shortest", "wshortest") else range(2, g.n + 1)
        for k in ks:
            l = None if k is None else g.n // 2
            start = time.perf_counter()
            try:
                rep = solve(g, solver, k, l, True, False, tree, caps={}, instance=name)
                answer = rep.answer
            except BudgetExceeded:
                rep, answer = RunReport(name, solver), "budget"
            micros = int((time.perf_counter() - start) * 1e6)
            rows.append({"instance": name, "solver": solver, "param": rep.param or "",
                         "k": "" if k is None else k, "l": "" if l is None else l,
                         "answer": answer, "micros": micros, "states": _state_count(rep.stats)})
    return rows


def cmd_bench(args) -> int:
    solvers = args.solvers.split(",")
    for s in solvers:
        if s not in ALGOS:
            raise InputError(f"unknown solver {s!r}")
    sizes = [int(x) for x in args.sizes.split(",")]
    jobs = [(args.family, n, args.seed, solvers, args.p) for n in sizes]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_instance, jobs))
    else:
        results = [_bench_instance(j) for j in jobs]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, BENCH_FIELDS, lineterminator="\n")
        writer.writeheader()
        for rows in results:
            writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# -- entry point ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="python3 -m secluded",
                                 description="Secluded s-t path solvers.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="run one solver on one instance")
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--graph", required=True)
    p.add_argument("--expr", help="expression tree file (cw)")
    p.add_argument("--naive-expr", action="store_true",
                   help="cw without --expr: use the one-label-per-vertex tree")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--exact-k", action="store_true", help="exactly k vertices (default: at most)")
    p.add_argument("--exact-l", action="store_true", help="exactly l neighbors (default: at most)")
    p.add_argument("--no-caps", action="store_true", help="lift the parameter caps")
    p.add_argument("--budget", type=int, default=10 ** 7, help="path enumeration budget")
    p.add_argument("--timing", action="store_true", help="add wall time in microseconds")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("crosscheck", help="compare every applicable solver with the oracle")
    p.add_argument("--corpus", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--m", type=int)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--cover", type=int, default=2)
    p.add_argument("--module-size", type=int, default=2)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--part-size", type=int, default=2)
    p.add_argument("--r", type=int)
    p.add_argument("--out")
    p.add_argument("--golden", action="store_true", help="also write oracle answers (needs --out)")
    p.add_argument("--linear-expr", action="store_true",
                   help="write a linear expression when the family has no dedicated one")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing sweep, CSV output")
    p.add_argument("--family", default="random", choices=("random", "modules", "cluster", "path",
                                                          "clique", "cycle", "grid"))
    p.add_argument("--sizes", default="4,5,6,7,8")
    p.add_argument("--solvers", default="oracle,nd,tc")
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BrokenPipeError:
        os._exit(EXIT_OK)
