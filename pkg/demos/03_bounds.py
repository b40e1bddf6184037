"""
Exclusion bounds
================

For each sign vector s the lattice point a_s closest to the signed target
(s_sigma sigma(X_n)) gives constants C_{s,sigma}.  A unit all of whose
|log|sigma(eps)|| exceed these constants has no expansion of that type.
"""

from z2pcf import bound_excludes, bound_table, nearest_lattice, parse_elem, rel_unit_from
from z2pcf.intervals import midpoint_str

for t in ("12", "03"):
    print(f"type {t}, n = 2")
    for e in bound_table(2, t).rows():
        s = "".join("+" if v > 0 else "-" for v in e.s)
        print(f"  s={s} sigma={e.sigma} a_s={str(e.a_s):10s} C={midpoint_str(e.C, 10)}")

# a_s = 1 for the all-ones sign vector on every layer checked
for n in range(1, 5):
    print(f"n={n}: a_(1,...,1) =", nearest_lattice(n, (1,) * (1 << (n - 1))).a)

# (3+2sqrt2)^3 is too large to be of type (1,2); the divisibility test agrees
w = rel_unit_from(parse_elem("L1:[99,70]"))
print("99+70X_1 excluded:", bound_excludes(w, "12"))
