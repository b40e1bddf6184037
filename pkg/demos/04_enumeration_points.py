"""
Log-embedding point clouds
==========================

Enumerates +- prod sigma^j(eta_2)^(e_j), |e_j| <= 6, and writes the plot
data for the two log coordinates.  Members of either type cluster near the
axes.  (The enumeration covers all relative units only under Weber's
class-number conjecture.)
"""

import csv
import io
import sys

from z2pcf import emit_points

out = sys.argv[1] if len(sys.argv) > 1 else "points_n2.csv"
text = emit_points(2, 6, "csv", out)
rows = list(csv.DictReader(io.StringIO(text)))
print(f"{len(rows)} units written to {out}")

for col in ("member12", "member03"):
    pts = [(float(r["log_0"]), float(r["log_1"])) for r in rows if r[col] == "1"]
    ratio = [min(abs(a), abs(b)) / max(abs(a), abs(b)) for a, b in pts]
    print(f"{col}: {len(pts)} points, min|l|/max|l| at most {max(ratio):.3f}")
    for a, b in pts:
        print(f"   ({a:+.4f}, {b:+.4f})")
