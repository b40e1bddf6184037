"""
Periodic continued fractions for X_n
====================================

Relative units of norm +1 passing the divisibility and sign tests give
expansions [a0, bar(a1, a2)]; those of norm -1 give [bar(a1, a2, a3)].
delta_n and eta_n realize both shapes on every layer.
"""

from z2pcf import (delta, eta, evaluate, parse_elem, pcf03_from_unit, pcf12_from_unit, pcf13,
                   rel_unit_from, truncated_value)
from z2pcf.intervals import format_interval

# the classical case: 3 + 2sqrt2 gives sqrt2 = [1, bar(2, 2)]
u = rel_unit_from(parse_elem("L1:[3,2]"))
pcf = pcf12_from_unit(u)
print(u, "->", pcf, "->", evaluate(pcf))

for n in range(1, 4):
    a = pcf12_from_unit(delta(n))
    b = pcf03_from_unit(eta(n))
    print(f"\nn = {n}")
    print("  delta:", a, "=", evaluate(a))
    print("  eta:  ", b, "=", evaluate(b))
    print("  30 periods of delta's expansion:", format_interval(truncated_value(a, 30)))

# the (1,3) relaxation reproduces eta_n from its second convergent
relaxed, sol = pcf13(2)
print("\n", relaxed)
print("  p_2 =", sol.x, "  q_2 =", sol.y, "  p_2 + X_2 q_2 == eta_2:", sol.unit() == eta(2).elem)
