# Word problem in A(P4): normal forms, pure factors, centralizers
from raagext.graphs import Graph
from raagext.words import (centralizer_generators, double_coset_member, normalize,
                           pure_factor_decomposition)

P4 = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])

# b commutes with a, so the conjugate collapses
print("b a b^-1      ->", normalize(P4, "b a b^-1"))
# d does not commute with b
print("d b a b^-1 d^-1 ->", normalize(P4, "d b a b^-1 d^-1"))

g = normalize(P4, "c a d a d c^-1")
dec = pure_factor_decomposition(g)
print("\ng =", g)
print("conjugator:", dec.conjugator)
for f, e in dec.factors:
    print(f"  pure factor ({f})^{e}")

print("\ncentralizer of g is generated by:")
for h in centralizer_generators(g):
    print("  ", h, "| commutes:", g * h == h * g)

# membership in <st c><st b>
for w in ["a^3", "a a d^-1", "d a c"]:
    z = normalize(P4, w)
    print(f"{w!r:12} in <st c><st b>: {double_coset_member(z, P4.star('c'), P4.star('b'))}")
