"""
Osculating spaces of a Grassmannian
===================================

A chart point of G(r, n) is an (r+1) x (n-r) matrix A; its Plücker
coordinates are the maximal minors of [I | A]. Differentiating those minors
up to order s spans the s-th osculating space. Here we compare the jet
ranks with the closed formula, order by order.
"""

import numpy as np

from oscgrass.combinat import GrassSpec
from oscgrass.exact import PrimeField
from oscgrass.grassmann import osc_dim_formula, osculating_frame, random_chart

fp = PrimeField()
rng = np.random.default_rng(1)

#############################################################################
# A random point on G(2, 7), with frames up to order r+1 = 3.

spec = GrassSpec(2, 7)
frame = osculating_frame(random_chart(spec, rng, fp), 3)
print(f"G(2,7) sits in P^{spec.N} and has dimension {spec.dim}")
for s in range(4):
    formula = osc_dim_formula(spec, s) if s <= spec.r else spec.N
    print(f"  s={s}: jets give {frame.projective_dim(s):3d}, formula {formula}")

#############################################################################
# At order r+1 the osculating space fills the whole Plücker space. The
# same holds across a range of (r, n).

for r in (1, 2, 3):
    for n in range(2 * r + 1, 2 * r + 4):
        spec = GrassSpec(r, n)
        f = osculating_frame(random_chart(spec, rng, fp), r + 1)
        dims = [f.projective_dim(s) for s in range(r + 2)]
        print(f"G({r},{n}): {dims}  (N = {spec.N})")
