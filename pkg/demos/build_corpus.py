"""Regenerate the shipped corpus in ../corpus with the command-line generator.

Every instance gets a .graph file, a .golden file with the oracle's answers
and, for unweighted graphs, a .expr file for the clique-width engine.

    python3 demos/build_corpus.py [target-dir]
"""

import sys
from pathlib import Path

from secluded.cli import main

ROOT = Path(__file__).resolve().parent.parent


def specs():
    for n in range(3, 9):
        yield f"clique-{n}", ["--family", "clique", "--n", str(n)]
    for n in range(2, 11):
        yield f"path-{n}", ["--family", "path", "--n", str(n)]
    for n in (4, 6, 8, 10):
        yield f"star-{n}", ["--family", "star", "--n", str(n)]
    for n in (5, 6, 7, 9):
        yield f"cycle-{n}", ["--family", "cycle", "--n", str(n)]
    for rows, cols in ((2, 2), (2, 3), (2, 4), (3, 3), (2, 5)):
        yield f"grid-{rows}x{cols}", ["--family", "grid", "--rows", str(rows), "--cols", str(cols)]
    for a, b in ((2, 3), (3, 3)):
        yield f"biclique-{a}-{b}", ["--family", "biclique", "--a", str(a), "--b", str(b)]
    yield "fig1", ["--family", "fig1"]
    for n in (6, 8, 10):
        for seed in (1, 2, 3):
            yield f"connected-{n}-{seed}", ["--family", "connected", "--n", str(n), "--seed", str(seed)]
    for seed in (1, 2):
        yield f"modules-{seed}", ["--family", "modules", "--n", "4", "--seed", str(seed)]
        yield f"cluster-{seed}", ["--family", "cluster", "--n", "3", "--seed", str(seed)]
        yield f"mc-reduction-{seed}", ["--family", "mc-reduction", "--k", "3", "--seed", str(seed)]


def build(target: Path) -> int:
    target.mkdir(parents=True, exist_ok=True)
    count = 0
    for name, flags in specs():
        code = main(["gen", *flags, "--out", str(target / f"{name}.graph"), "--golden",
                     "--linear-expr"])
        if code:
            raise SystemExit(f"generation of {name} failed with exit code {code}")
        count += 1
    return count


if __name__ == "__main__":
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "corpus"
    print(f"wrote {build(out)} instances to {out}")
