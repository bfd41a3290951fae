"""Layers of a shortest-path DAG and the edge-indexed program over them.

On a grid every vertex lies on some shortest corner-to-corner path, so the
layers are the anti-diagonals.  Pendant vertices hanging off the grid sit
outside the layers yet still count as neighbors.

    python3 demos/shortest_layers.py
"""

from secluded.generators import grid_graph
from secluded.graph import Graph
from secluded.oracle import bf_shortest_secluded
from secluded.shortest import edge_dp_table, layering, shortest_secluded

base = grid_graph(3, 4)
# two pendants on the top row make the top route less secluded
g = Graph(base.n + 2, list(base.edges()) + [(1, 12), (2, 13)], base.s, base.t)

lay = layering(g, check=True)
print(f"dist(s, t) = {lay.k} edges")
for i, layer in enumerate(lay.layers):
    print(f"  layer {i}: {list(layer)}")
print("outside the layers:", sorted(lay.R(g.n)))

table = edge_dp_table(g)
print("\nlast edge -> fewest neighbors of a shortest prefix ending there:")
for (a, b), v in sorted(table.items(), key=lambda kv: (lay.layer_of[kv[0][1]], kv[0])):
    print(f"  {a:>2}-{b:<2} {v}")

best = shortest_secluded(g)
print("\nbest path:", list(best.vertices), "with", best.neighbor_count, "neighbors")
print("brute force agrees:", bf_shortest_secluded(g).neighbor_count == best.neighbor_count)
