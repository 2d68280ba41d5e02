"""Closed-form non-defectivity bounds for Grassmannians and their comparison.

Naming convention for the returned integers:

* ``h_thm``: the largest ``h`` for which ``G(r, n)`` is certified **not
  (h+1)-defective** by the h_alpha bound.
* ``h_cor``: the largest ``h`` certified **not h-defective** by its linear
  weakening.
* ``h_aop``: the largest ``h`` certified not h-defective by the older
  ``(n - r)/3 + 1`` bound.

So ``h_thm + 1`` and ``h_cor`` are directly comparable.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .combinat import GrassSpec, h_m
from .oscproj import FinitenessVerdict, hypothesis_check


def _require(spec: GrassSpec):
    if spec.r < 2:
        raise ValueError(f"bounds need r >= 2, got r={spec.r}")
    spec.require_standard()


def branch(spec: GrassSpec) -> str:
    if spec.n >= spec.r**2 + 3 * spec.r + 1:
        return "large-n"
    return "small-n-even" if spec.r % 2 == 0 else "small-n-odd"


def _h(m: int, k: int) -> int:
    # k = -1 happens for r even and n = 2r+1; it contributes nothing
    return 0 if k < 0 else h_m(m, k)


def thm_main_bound(spec: GrassSpec) -> int:
    """``h_thm``: G(r, n) is not (h_thm + 1)-defective."""
    _require(spec)
    r, n, a = spec.r, spec.n, spec.alpha
    b = branch(spec)
    if b == "large-n":
        return a * h_m(a, r - 1)
    if b == "small-n-even":
        return (a - 1) * h_m(a, r - 1) + _h(a, n - 2 - a * r)
    return (a - 1) * h_m(a, r - 2) + _h(a, min(n - 3 - a * (r - 1), r - 2))


def cor_bound(spec: GrassSpec) -> int:
    """``h_cor``: G(r, n) is not h_cor-defective."""
    _require(spec)
    r, n, a = spec.r, spec.n, spec.alpha
    b = branch(spec)
    if b == "large-n":
        return (r // 2) * a + 1
    if b == "small-n-even":
        return (n + 1) // 2 - r // 2
    return min(((r - 1) // 2) * a + 1, n // 2 - (r - 1) // 2)


def aop_bound(spec: GrassSpec) -> int:
    """``h_aop``: the largest integer ``h <= (n - r)/3 + 1``."""
    _require(spec)
    return (spec.n - spec.r) // 3 + 1


def comparison_values(spec: GrassSpec) -> dict:
    """The four comparison functions; parity-restricted ones are ``None`` otherwise."""
    r, n = spec.r, spec.n
    return {
        "a": (r // 2) * spec.alpha,
        "a_prime": (n - 1) // 2 - r // 2 if r % 2 == 0 else None,
        "a_doubleprime": n // 2 - (r + 1) // 2 if r % 2 == 1 else None,
        "b": (n - r) // 3,
    }


def asymptotic_value(spec: GrassSpec) -> int:
    """``alpha ** floor(log2 r)``."""
    return spec.alpha ** (spec.r.bit_length() - 1)


@dataclass
class BoundReport:
    r: int
    n: int
    branch: str
    h_thm: int
    h_cor: int
    h_aop: int
    a: int
    a_prime: int | None
    a_doubleprime: int | None
    b: int
    asymptotic: int

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(spec: GrassSpec) -> BoundReport:
    _require(spec)
    return BoundReport(spec.r, spec.n, branch(spec), thm_main_bound(spec), cor_bound(spec),
                       aop_bound(spec), **comparison_values(spec),
                       asymptotic=asymptotic_value(spec))


@dataclass
class ComparisonCell:
    r: int
    n: int
    a: int
    a_prime: int | None
    a_doubleprime: int | None
    b: int
    a_gt_b: bool
    small_gt_b: bool | None  # a' > b (r even) or a'' > b (r odd); None for n >= r^2+3r+1


def comparison_sweep(r_range, n_max=None) -> list:
    """Evaluate ``a, a', a'', b`` on ``r >= 4``, ``2r+1 <= n <= n_max(r)``.

    ``n_max`` defaults to ``r^2 + 3r``, the last value below the large-n regime;
    it may be an int or a function of ``r``.
    """
    cells = []
    for r in r_range:
        if r < 4:
            raise ValueError(f"comparison needs r >= 4, got r={r}")
        top = r * r + 3 * r if n_max is None else (n_max(r) if callable(n_max) else n_max)
        for n in range(2 * r + 1, top + 1):
            v = comparison_values(GrassSpec(r, n))
            small = None
            if n < r * r + 3 * r + 1:
                other = v["a_prime"] if r % 2 == 0 else v["a_doubleprime"]
                small = other > v["b"]
            cells.append(ComparisonCell(r, n, v["a"], v["a_prime"], v["a_doubleprime"], v["b"],
                                        v["a"] > v["b"], small))
    return cells


def flagged_cells(cells) -> dict:
    return {
        "a": [(c.r, c.n) for c in cells if not c.a_gt_b],
        "a_prime": [(c.r, c.n) for c in cells if c.r % 2 == 0 and c.small_gt_b is False],
        "a_doubleprime": [(c.r, c.n) for c in cells if c.r % 2 == 1 and c.small_gt_b is False],
    }


def certify_from_orders(spec: GrassSpec, orders, verdict: FinitenessVerdict | None = None) -> int:
    """``h = sum h_alpha(k_j)`` such that G(r, n) is not (h+1)-defective.

    Requires either a combinatorial certificate for the osculating projection
    with these orders, or a verdict showing it is generically finite.
    """
    orders = tuple(orders)
    if not orders:
        return 0
    if hypothesis_check(spec, orders) is None and not (verdict and verdict.generically_finite):
        raise ValueError(f"no finiteness certificate for orders {orders} on G({spec.r},{spec.n})")
    return sum(h_m(spec.alpha, k) for k in orders)


TABLE_ROWS = {
    4: lambda x: x**2 + 1,
    6: lambda x: x**2 + x + 1,
    8: lambda x: x**3 + 1,
    10: lambda x: x**3 + x + 1,
    12: lambda x: x**3 + x**2 + 1,
    14: lambda x: x**3 + x**2 + x + 1,
    16: lambda x: x**4 + 1,
}
"""``h + 1`` at ``n = r^2 + 3r + 1`` as a polynomial in ``x = (n+1)/(r+1)``."""
