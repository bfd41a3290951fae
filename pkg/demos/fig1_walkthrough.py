"""The twelve-vertex example graph, solved every way the package offers.

The direct route s-p1-p2-p3-t has five vertices and five neighbors.  The
detour s-n1-o1-n4-t also has five vertices but only four neighbors, and no
s-t path with four vertices exists at all.

    python3 demos/fig1_walkthrough.py
"""

from secluded import cw_profile, linear_expression, path_profile
from secluded.generators import fig1_graph
from secluded.nd import NdSolver
from secluded.oracle import make_witness
from secluded.tc import TcSolver
from secluded.graph import twin_cover, twin_partition

NAMES = ["s", "p1", "p2", "p3", "t", "n1", "n2", "n4", "n5", "n6", "o1", "o2"]


def show(path):
    return "-".join(NAMES[v] for v in path.vertices) + f"  ({path.length} vertices, " \
        f"{path.neighbor_count} neighbors)"


g = fig1_graph()
print(f"graph: {g.n} vertices, {g.m} edges")
print("direct route:", show(make_witness(g, [0, 1, 2, 3, 4])))

profile = sorted(path_profile(g))
print("every (length, neighbors) pair of an s-t path:", profile)

tree = linear_expression(g)
print(f"\nclique-width engine, expression with {tree.r} labels:",
      sorted(cw_profile(tree)) == profile)

nd = NdSolver(g)
print(f"neighborhood diversity engine, {nd.inst.r} modules "
      f"(coarsest twin partition has {twin_partition(g).size}):")
for k, l in ((5, 5), (5, 4), (4, 5)):
    w = nd.secluded_kpath(k, l)
    print(f"  k={k} l<={l}:", show(w) if w else "no path")

tc = TcSolver(g)
print(f"twin cover engine, cover {sorted(twin_cover(g).cover)}:")
w = tc.secluded_kpath(5, 4)
print("  k=5 l<=4:", show(w))
print(f"  {tc.stats['skeletons']} skeletons from {tc.stats['skeleton_states']} search states")
