"""Minimum-congestion routing on a directed graph.

For a vertex-arc incidence matrix A, solving A x = b routes the demand b
through the graph, and ||x||_inf is the congestion of the most loaded arc.
Minimizing it spreads flow across parallel routes.
"""

import numpy as np

from irlsreg import DirectedGraph, incidence_matrix, optimize

# a small ladder: two parallel 3-hop paths from vertex 0 to vertex 5,
# plus a rung connecting them in the middle
edges = [
    (0, 1), (1, 2), (2, 5),   # top path
    (0, 3), (3, 4), (4, 5),   # bottom path
    (1, 4),                   # rung
]
g = DirectedGraph(n_vertices=6, edges=edges)
A = incidence_matrix(g)

demand = np.zeros(6)
demand[0] = 1.0    # one unit leaves vertex 0
demand[5] = -1.0   # and arrives at vertex 5

res = optimize(A, demand, eps=0.02, norm="linf")
print("congestion:", res.value)
print("arc flows:")
for (u, v), f in zip(edges, res.x):
    bar = "#" * int(round(abs(f) * 40))
    print(f"  {u} -> {v}: {f:+.4f}  {bar}")

# with two disjoint 3-hop routes the best congestion is 1/2; the rung
# carries (essentially) nothing
print()
print("the same demand, l1 objective (total flow instead of bottleneck):")
res = optimize(A, demand, eps=0.02, norm="l1")
print("  total flow:", res.value, "(any single path costs 3)")
