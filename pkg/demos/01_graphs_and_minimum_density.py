"""Topology zoo: algebraic connectivity and minimum density side by side.

The minimum density delta = (N/2) * min_cuts b/(N1*N2) plays the same role
for the discontinuous coupling layer that the algebraic connectivity lambda2
plays for the diffusive one: the denser the graph, the smaller the gain needed.
This script prints both measures for the named topologies and checks the
closed forms against exact cut enumeration.
"""

import numpy as np

import pwsync as ps

N = 10

print(f"named topologies on N = {N} vertices")
print(f"{'topology':<22} {'edges':>5} {'lambda2':>12} {'delta exact':>12} {'delta formula':>14}")
for kind, l in [("complete", None), ("star", None), ("path", None), ("ring", None),
                ("nearest_neighbours", 2)]:
    g = ps.generate_topology(kind, N, l=l)
    lam2 = ps.algebraic_connectivity(g)
    delta = ps.min_density_exact(g).delta
    formula = ps.min_density_closed_form(kind, N, l=l)
    label = kind if l is None else f"{kind}(l={l})"
    print(f"{label:<22} {g.n_edges:>5} {lam2:>12.6f} {delta:>12.6f} {formula:>14.6f}")

print()
print("sparsest cut of a random graph (exact enumeration)")
g = ps.erdos_renyi_graph(12, 0.3, seed=5)
result = ps.min_density_exact(g)
cut = result.sparsest_cut
print(f"  G(12, 0.3) with {g.n_edges} edges: delta = {result.delta:.6f}")
print(f"  cut sides {cut.side1()} | {cut.side2()}")
print(f"  crossing edges b = {cut.crossing_edges} (N1 = {cut.n1}, N2 = {cut.n2})")

heur = ps.min_density_heuristic(g, seed=0)
print(f"  size-constrained local search finds delta = {heur.delta:.6f} "
      f"({'matches' if abs(heur.delta - result.delta) < 1e-12 else 'upper bound'})")

print()
print("the heuristic scales past the enumeration cap:")
big = ps.erdos_renyi_graph(60, 0.15, seed=1)
res = ps.min_density_heuristic(big, seed=1)
print(f"  G(60, 0.15), {big.n_edges} edges: delta <= {res.delta:.6f} "
      f"(b = {res.sparsest_cut.crossing_edges}, "
      f"{res.sparsest_cut.n1}+{res.sparsest_cut.n2} split)")

print()
print("removing edges can only lower the minimum density:")
ring = ps.ring_graph(10)
path = ps.remove_edges(ring, [(0, 9)])
print(f"  ring(10):  delta = {ps.min_density_exact(ring).delta:.4f}")
print(f"  minus one edge (a path): delta = {ps.min_density_exact(path).delta:.4f}")
