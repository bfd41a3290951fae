"""Why weighted Shortest Secluded Path is hard: the multicolored clique reduction.

A random regular multicolored instance is turned into a weighted graph where
every shortest s-t path picks one vertex per part.  Edges between picked
vertices are shared neighbors, so a clique is exactly what pushes the
neighbor count down to the threshold.

    python3 demos/hardness_reduction.py [seeds]
"""

import sys

from secluded.generators import has_multicolored_clique, random_mc, reduce_mc
from secluded.shortest import dijkstra, weighted_shortest_secluded

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 8
print(f"{'seed':>4} {'k':>2} {'n':>3} {'r':>2} {'clique':>6} {'reduced n':>9} "
      f"{'dist':>4} {'best':>4} {'threshold':>9}")
for seed in range(seeds):
    mc = random_mc(3, 4, 3, seed)
    red = reduce_mc(mc)
    g = red.graph
    best = weighted_shortest_secluded(g)
    clique = has_multicolored_clique(mc)
    assert clique == (best.neighbor_count <= red.threshold)
    print(f"{seed:>4} {mc.k:>2} {mc.graph.n:>3} {mc.r:>2} {str(clique):>6} {g.n:>9} "
          f"{dijkstra(g, g.s)[g.t]:>4} {best.neighbor_count:>4} {red.threshold:>9}")
