# Growing finite pieces of the extension graph of the pentagon
import numpy as np

from raagext.extension import diagnostics, grow
from raagext.graphs import chromatic_number, clique_number, standard_graph

C5 = standard_graph("cycle", 5)

for r in range(3):
    a = grow(C5, radius=r)
    print(f"radius {r}: {len(a):4d} vertices, {a.graph.num_edges:4d} edges, "
          f"clique number {clique_number(a.graph)}, chromatic number {chromatic_number(a.graph)}")

a = grow(C5, radius=2)
d = diagnostics(a, seed=0)
dist = np.asarray(d["distances"])
print("\ndistance matrix shape:", dist.shape)
print("diameter:", d["diameter"])
print("vertices by representative length:", d["growth"])

# how far vertices sit from the base copy v0..v4
from_base = dist[:5].min(axis=0)
print("distance to the base pentagon:", np.bincount(from_base.astype(int)))

# doubling along a vertex: two pentagons glued along a star
b = grow(C5, doubling=["v0"])
print("\nafter one doubling:", len(b), "vertices")
for v in b.vertices:
    print("  ", v.label)
