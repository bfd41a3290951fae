import random

from hypothesis import strategies as st

from secluded.graph import Graph


def random_graphs(count, n_min=2, n_max=8, seed=0):
    """Seeded G(n, p) graphs with terminals 0 and n-1 and varied density."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        p = rng.choice([0.2, 0.35, 0.5, 0.7, 0.9])
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        out.append(Graph(n, edges, 0, n - 1))
    return out


@st.composite
def graphs(draw, n_min=2, n_max=7):
    n = draw(st.integers(n_min, n_max))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    s = draw(st.integers(0, n - 1))
    t = draw(st.integers(0, n - 2))
    if t >= s:
        t += 1
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep], s, t)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines, which pytest would otherwise capture."""
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
