"""Linear projections of G(r, n) from spans of osculating spaces at coordinate points."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .combinat import GrassSpec, check_index_set, distance, iter_lambda, standard_blocks
from .exact import PrimeField, rank
from .grassmann import osculating_frame, random_chart

MAX_RESAMPLES = 10


@dataclass(frozen=True)
class ProjectionSpec:
    """Projection from ``<T^{s_1}_{e_{B_1}}, ..., T^{s_l}_{e_{B_l}}>`` with ``B_i`` standard blocks."""

    spec: GrassSpec
    centers: tuple

    def __post_init__(self):
        blocks = standard_blocks(self.spec)
        norm = []
        for block, s in self.centers:
            block = check_index_set(self.spec, block)
            if block not in blocks:
                raise ValueError(f"center {block} is not a standard block")
            if not 0 <= s <= self.spec.r:
                raise ValueError(f"order {s} outside [0, r={self.spec.r}]")
            norm.append((block, int(s)))
        if len({b for b, _ in norm}) != len(norm):
            raise ValueError("centers must be pairwise distinct blocks")
        object.__setattr__(self, "centers", tuple(norm))
        if not self.retained:
            raise ValueError("the center spans the whole Plücker space")

    @classmethod
    def from_orders(cls, spec: GrassSpec, orders) -> "ProjectionSpec":
        """Centers ``I_1, ..., I_l`` with the given orders."""
        blocks = standard_blocks(spec)
        if len(orders) > len(blocks):
            raise ValueError(f"{len(orders)} centers but only alpha={len(blocks)} blocks")
        return cls(spec, tuple(zip(blocks, orders)))

    @property
    def orders(self) -> tuple:
        return tuple(s for _, s in self.centers)

    @property
    def retained(self) -> list:
        """Coordinates kept by the projection, in lexicographic order."""
        return [J for J in iter_lambda(self.spec)
                if all(distance(B, J) > s for B, s in self.centers)]


@dataclass
class FinitenessVerdict:
    image_dim: int
    variety_dim: int
    generically_finite: bool
    relative_dim: int
    samples: int
    seed: int
    field: str
    retained: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def image_dimension_of(spec: GrassSpec, retained, samples: int = 3, seed: int = 0,
                       field=None) -> FinitenessVerdict:
    """Dimension of the image of ``G(r, n)`` under the coordinate projection onto ``retained``.

    At a chart point ``A`` the map ``a -> [p_J(a)]_{J in retained}`` has
    differential rank ``rank [phi; d phi] - 1`` restricted to those columns.
    Points where every retained coordinate vanishes are skipped.
    """
    field = field or PrimeField()
    retained = list(retained)
    rng = np.random.default_rng(np.random.SeedSequence([seed, spec.r, spec.n, len(retained)]))
    best, used, attempts = -1, 0, 0
    while used < samples and attempts < samples + MAX_RESAMPLES:
        attempts += 1
        frame = osculating_frame(random_chart(spec, rng, field), 1, columns=retained).matrix
        if all(x == 0 for x in frame.rows[0]):
            continue
        used += 1
        best = max(best, rank(frame) - 1)
    if used == 0:
        raise ArithmeticError(f"all {attempts} sampled points lie in the indeterminacy locus")
    return FinitenessVerdict(best, spec.dim, best == spec.dim, spec.dim - best, used, seed,
                             field.describe(), len(retained))


def image_dimension(P: ProjectionSpec, samples: int = 3, seed: int = 0,
                    field=None) -> FinitenessVerdict:
    return image_dimension_of(P.spec, P.retained, samples, seed, field)


def auxiliary_retained(spec: GrassSpec, subsets) -> list:
    """Coordinates kept by the projection induced from ``P^n`` away from ``e_i, i in U``."""
    removed = set().union(*(set(s) for s in subsets))
    return [J for J in iter_lambda(spec) if removed.isdisjoint(J)]


def _check_orders(spec: GrassSpec, orders):
    l = len(orders)
    if l == 1:
        if not 0 <= orders[0] <= spec.r:
            raise ValueError(f"need 0 <= s <= r, got s={orders[0]}")
        return
    bad = [s for s in orders if not 0 <= s <= spec.r - 1]
    if bad:
        raise ValueError(f"need 0 <= s_j <= r-1, violated by {bad}")
    cap = min(spec.alpha, spec.n - spec.r - 1 - sum(orders))
    if not 0 < l <= cap:
        raise ValueError(f"need 0 < l <= min(alpha, n-r-1-sum s) = {cap}, got l={l}")


def check_factorization(P: ProjectionSpec, subsets) -> bool:
    """Whether the projection away from ``U = union of subsets`` factors through ``P``.

    True iff every coordinate disjoint from ``U`` is retained by ``P``.
    Each subset must lie in its block and have ``s_i + 1`` elements.
    """
    spec = P.spec
    if len(subsets) != len(P.centers):
        raise ValueError("one subset per center required")
    _check_orders(spec, P.orders)
    for (block, s), sub in zip(P.centers, subsets):
        sub = set(sub)
        if not sub <= set(block):
            raise ValueError(f"subset {sorted(sub)} is not contained in {block}")
        if len(sub) != s + 1:
            raise ValueError(f"subset {sorted(sub)} must have s+1={s + 1} elements")
    kept = set(P.retained)
    return all(J in kept for J in auxiliary_retained(spec, subsets))


@dataclass
class HypothesisResult:
    branch: str
    orders: tuple
    r_prime: int | None = None
    r_doubleprime: int | None = None


def _general_ok(spec: GrassSpec, orders) -> bool:
    l = len(orders)
    return (all(0 <= s <= spec.r - 1 for s in orders)
            and 0 < l <= min(spec.alpha, spec.n - spec.r - 1 - sum(orders)))


def hypothesis_check(spec: GrassSpec, orders) -> HypothesisResult | None:
    """Which combinatorial criterion certifies that the projection is birational.

    Returns ``None`` when no criterion applies. The named branches are tried
    before the general inequality so the most specific reason is reported.
    """
    orders = tuple(orders)
    r, n, a = spec.r, spec.n, spec.alpha
    if spec.nonstandard or r < 2 or not orders or len(orders) > a:
        return None
    rp = n - 2 - a * r
    rpp = min(n - 3 - a * (r - 1), r - 2)
    big = r * r + 3 * r + 1
    if n >= big and orders == (r - 1,) * a:
        return HypothesisResult("n>=r^2+3r+1", orders, rp, rpp)
    if a >= 2 and orders == (r - 1,) * (a - 1):
        return HypothesisResult("alpha-1 blocks", orders, rp, rpp)
    if 2 * r + 1 < n < big:
        if 0 <= rp <= r - 1 and orders == (r - 1,) * (a - 1) + (rp,):
            return HypothesisResult("r-prime", orders, rp, rpp)
        if rpp >= 0 and orders == (r - 2,) * (a - 1) + (rpp,):
            return HypothesisResult("r-doubleprime", orders, rp, rpp)
    if len(orders) == 1 and 0 <= orders[0] <= r - 1:
        return HypothesisResult("single-center", orders, rp, rpp)
    if _general_ok(spec, orders):
        return HypothesisResult("general", orders, rp, rpp)
    return None


def certified_order_tuples(spec: GrassSpec) -> list:
    """All order tuples (one per leading block) that :func:`hypothesis_check` certifies."""
    from itertools import product

    out = []
    for l in range(1, spec.alpha + 1):
        for orders in product(range(spec.r + 1), repeat=l):
            res = hypothesis_check(spec, orders)
            if res is not None:
                out.append(res)
    return out
