"""
A hyperplane certificate for a flat limit
=========================================

On G(2, 5) the tangent space at e_345 moves towards e_012 along a rational
normal curve. The limit of the span of the static point and the moving
tangent space lies inside the second osculating space at e_012. The
certificate is a form in the Plücker coordinates that vanishes identically
in t on every generator and reduces to p_345 at t = 0.
"""

from oscgrass.combinat import GrassSpec, distance
from oscgrass.degeneration import (
    DegenerationMode,
    build_family,
    certify_target,
    verify_limit_containment,
)

spec = GrassSpec(2, 5)
mode = DegenerationMode.two_point(0, 1)
family = build_family(spec, mode)
print(f"{len(family.static)} static and {len(family.moving)} moving generators")

cert = certify_target(family, (3, 4, 5))
for J, c in sorted(cert.coeffs.items(), key=lambda kv: distance((3, 4, 5), kv[0])):
    print(f"  {int(c):+d} t^{distance((3, 4, 5), J)} p_{''.join(map(str, J))}")
print("level coefficients:", [int(x) for x in cert.levels])

#############################################################################
# Every generator is annihilated exactly, not just at sampled values of t.

print(all(cert.form_on(g.coords).is_zero() for g in family.generators))

#############################################################################
# A larger case: three moving blocks on G(5, 17).

rep = verify_limit_containment(GrassSpec(5, 17), DegenerationMode.multi_point(2))
print(f"G(5,17): {rep.targets} targets, {rep.trivial} trivial, {rep.solved} solved, "
      f"verdict {rep.verdict}")
