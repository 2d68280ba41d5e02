"""
How far the non-defectivity bound reaches
=========================================

The bound counts how many tangent spaces collapse into osculating spaces of
higher order. Past n = r^2 + 3r + 1 it grows like a power of (n+1)/(r+1);
here we tabulate it and compare it with the linear bound it improves on.
"""

from oscgrass.bounds import TABLE_ROWS, bound_report, comparison_sweep, flagged_cells
from oscgrass.combinat import GrassSpec

print(" r     n   h_thm+1   polynomial")
for r, row in TABLE_ROWS.items():
    n = r * r + 3 * r + 1
    rep = bound_report(GrassSpec(r, n))
    print(f"{r:2d} {n:5d} {rep.h_thm + 1:9d} {row((n + 1) // (r + 1)):12d}")

#############################################################################
# Growth in n for fixed r = 4, against the older (n - r)/3 + 1 bound.

for n in (29, 59, 119, 239):
    rep = bound_report(GrassSpec(4, n))
    print(f"n={n:3d}: h_thm+1={rep.h_thm + 1:5d}  h_cor={rep.h_cor:3d}  h_aop={rep.h_aop:3d}")

#############################################################################
# The linear weakening beats the older bound everywhere except two cells.

print(flagged_cells(comparison_sweep(range(4, 9))))
