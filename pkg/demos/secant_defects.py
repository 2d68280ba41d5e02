"""
Finding defective secant varieties
==================================

Terracini's lemma turns the dimension of the h-th secant variety into the
rank of h stacked tangent frames at random points. A cell is defective
when that rank falls short of min(h dim G + h - 1, N).
"""

from oscgrass.terracini import defect_sweep, defective_cells

seed = 20240601

#############################################################################
# Sweep r = 2, 3 over n in the standard range and h up to 5.

reports = []
for r in (2, 3):
    reports += defect_sweep([r], range(2 * r + 1, 10), 5, seed=seed)

print("defective cells (r, n, h):", defective_cells(reports))

#############################################################################
# Each defective cell with a small Plücker space is re-checked over the
# rationals; the exact value never exceeds the sampled one.

for rep in reports:
    if rep.defect:
        print(f"G({rep.r},{rep.n}) h={rep.h}: dim {rep.computed_dim} instead of "
              f"{rep.expected_dim} (exact check: {rep.exact_dim})")

#############################################################################
# Lines are the classic defective family: skew matrices of rank <= 2h.

for rep in defect_sweep([1], [5], 3, seed=seed):
    print(f"G(1,5) h={rep.h}: defect {rep.defect}")
