"""
Arithmetic in Z[X_n]
====================

X_n = 2cos(2pi/2^(n+2)) generates the ring of integers of the n-th layer.
Each layer sits on top of the previous one through X_n^2 = 2 + X_{n-1}.
"""

from z2pcf import RingElem, absolute_norm, minimal_poly, relative_norm, tower_split
from z2pcf.galois_embed import embed, sigma
from z2pcf.intervals import format_interval

# minimal polynomials, constant term first
for n in range(4):
    print(f"f_{n}:", minimal_poly(n))

x = RingElem.gen(2)
print("X_2^2 =", x * x)
print("X_2^4 =", x ** 4)

# every element splits as p + X_n q one level down
eps = RingElem(2, [-1, -2, 1, 1])
p, q = tower_split(eps)
print(f"{eps} = ({p}) + X_2 ({q})")
print("relative norm:", relative_norm(eps), "  absolute norm:", absolute_norm(eps))

# the Galois group is cyclic; sigma sends 2cos(t) to 2cos(3t)
for j in range(4):
    print(f"sigma^{j}(X_2) = {sigma(x, j)}  ~  {format_interval(embed(x, j))}")

# exact inverse of a unit
print("1/(1 + X_1) =", RingElem(1, [1, 1]).inverse())
