# Every forest sits in P4^e; no triangle-free graph is universal
import networkx as nx

from raagext.embeddability import P4, decide, embed_forest_in_p4e, verify_certificate
from raagext.graphs import Graph, chromatic_number, mycielskian, standard_graph

T = nx.balanced_tree(2, 2)
tree = Graph([f"t{v}" for v in T.nodes], [(f"t{a}", f"t{b}") for a, b in T.edges])
cert = embed_forest_in_p4e(tree)
print("binary tree of depth 2 inside P4^e:")
for k in tree.vertices:
    print(f"  {k} -> {cert.assignment[k].label}")
print("verified:", verify_certificate(cert))

# decide goes through the same construction for any target containing an induced P4
v = decide(tree, standard_graph("cycle", 5))
print("\ntree into A(C5):", v.kind, f"({v.certificate.note})")

# the Mycielski tower beats any fixed triangle-free target
g = standard_graph("cycle", 5)
for step in range(2):
    h = mycielskian(g)
    no = decide(h, g)
    yes = decide(g, h)
    print(f"\nchi {chromatic_number(g)} -> {chromatic_number(h)}")
    print("  A(M) in A(G):", no.kind, no.obstruction.kind if no.is_no else "")
    print("  A(G) in A(M):", yes.kind)
    g = h
