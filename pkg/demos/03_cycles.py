# Which cycles embed in which: A(C_m) <= A(C_n) iff m = n + k(n - 4)
from raagext.embeddability import cycle_in_cycle, verify_certificate

ms = range(4, 15)
print("n\\m " + " ".join(f"{m:3d}" for m in ms))
for n in range(4, 9):
    row = []
    for m in ms:
        v = cycle_in_cycle(m, n)
        row.append("  Y" if v.is_yes else "  .")
    print(f"{n:3d} " + " ".join(row))

# an 8-cycle inside the extension graph of the hexagon
v = cycle_in_cycle(8, 6)
print("\nC8 in C6^e, k =", v.report["k"])
for k, u in v.certificate.assignment.items():
    print(f"  {k} -> {u.label}")
print("verified:", verify_certificate(v.certificate))

# and the arithmetic obstruction for C9
print("\nC9 into C6:", cycle_in_cycle(9, 6).obstruction.detail)
