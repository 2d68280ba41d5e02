"""Index-set combinatorics on the set of Plücker indices.

Index sets are sorted tuples of ``r + 1`` integers in ``[0, n]``. The set of all
of them (written ``lam`` below) is streamed by lexicographic unranking and
never materialized beyond :data:`LAMBDA_CAP` elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

LAMBDA_CAP = 10**6


@dataclass(frozen=True)
class GrassSpec:
    """The Grassmannian of projective ``r``-planes in ``P^n``."""

    r: int
    n: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.n <= self.r:
            raise ValueError(f"need n > r, got r={self.r}, n={self.n}")

    @property
    def N(self) -> int:
        """Projective dimension of the Plücker space."""
        return comb(self.n + 1, self.r + 1) - 1

    @property
    def alpha(self) -> int:
        """Number of pairwise disjoint coordinate blocks."""
        return (self.n + 1) // (self.r + 1)

    @property
    def dim(self) -> int:
        return (self.r + 1) * (self.n - self.r)

    @property
    def nonstandard(self) -> bool:
        """True when ``n < 2r + 1``."""
        return self.n < 2 * self.r + 1

    def require_standard(self):
        if self.nonstandard:
            raise ValueError(f"operation needs n >= 2r+1, got r={self.r}, n={self.n}")


def check_index_set(spec: GrassSpec, I) -> tuple:
    """Validate and normalize an index set for ``spec``."""
    I = tuple(I)
    if len(I) != spec.r + 1:
        raise ValueError(f"index set {I} must have r+1={spec.r + 1} elements")
    if any(b <= a for a, b in zip(I, I[1:])):
        raise ValueError(f"index set {I} must be strictly increasing")
    if I[0] < 0 or I[-1] > spec.n:
        raise ValueError(f"index set {I} out of range [0, {spec.n}]")
    return I


# ---------------------------------------------------------------------------
# enumeration

def lambda_size(spec: GrassSpec) -> int:
    return spec.N + 1


def rank_index_set(spec: GrassSpec, I) -> int:
    """Lexicographic rank of ``I`` among all ``(r+1)``-subsets of ``[0, n]``."""
    k, m = spec.r + 1, spec.n + 1
    rank, prev = 0, -1
    for pos, x in enumerate(I):
        for y in range(prev + 1, x):
            rank += comb(m - y - 1, k - pos - 1)
        prev = x
    return rank


def unrank_index_set(spec: GrassSpec, rank: int) -> tuple:
    k, m = spec.r + 1, spec.n + 1
    if not 0 <= rank < comb(m, k):
        raise IndexError(f"rank {rank} out of range")
    out = []
    x = 0
    for pos in range(k):
        while True:
            c = comb(m - x - 1, k - pos - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def iter_lambda(spec: GrassSpec):
    """Stream all index sets in lexicographic order."""
    return combinations(range(spec.n + 1), spec.r + 1)


def lambda_list(spec: GrassSpec, cap: int = LAMBDA_CAP) -> list:
    if lambda_size(spec) > cap:
        raise MemoryError(f"|Lambda| = {lambda_size(spec)} exceeds cap {cap}")
    return list(iter_lambda(spec))


# ---------------------------------------------------------------------------
# metric

def distance(I, J) -> int:
    """``|I| - |I ∩ J|``."""
    if len(I) != len(J):
        raise ValueError(f"index sets of different sizes: {I}, {J}")
    return len(I) - len(set(I).intersection(J))


def standard_blocks(spec: GrassSpec) -> list:
    """The ``alpha`` consecutive disjoint blocks ``{0..r}, {r+1..2r+1}, ...``."""
    k = spec.r + 1
    return [tuple(range(i * k, (i + 1) * k)) for i in range(spec.alpha)]


def ball(spec: GrassSpec, J, u: int) -> set:
    """All ``K`` with ``d(J, K) <= u``, built without scanning the full set."""
    J = check_index_set(spec, J)
    if not 0 <= u <= spec.r + 1:
        raise ValueError(f"radius must lie in [0, r+1], got {u}")
    inside = set(J)
    outside = [x for x in range(spec.n + 1) if x not in inside]
    out = set()
    for l in range(u + 1):
        for drop in combinations(J, l):
            kept = inside.difference(drop)
            for add in combinations(outside, l):
                out.add(tuple(sorted(kept.union(add))))
    return out


def ball_size(spec: GrassSpec, u: int) -> int:
    return sum(comb(spec.r + 1, l) * comb(spec.n - spec.r, l) for l in range(u + 1))


# ---------------------------------------------------------------------------
# translation families

@dataclass(frozen=True)
class DeltaFamily:
    """Index sets reachable from ``base`` by moving elements between blocks.

    ``levels[l]`` for ``l > 0`` holds the sets obtained by translating ``l``
    elements of ``base ∩ I_1`` into block ``j``; ``levels[-l]`` holds the sets
    from which ``base`` is obtained that way.
    """

    base: tuple
    block: int
    levels: dict = field(hash=False, compare=False)
    s_plus: int
    s_minus: int

    def plus(self) -> set:
        return set().union(*(self.levels[l] for l in range(0, self.s_plus + 1)))

    def minus(self) -> set:
        return set().union(*(self.levels[-l] for l in range(0, self.s_minus + 1)))


def _shift(spec: GrassSpec, j: int) -> int:
    if not 2 <= j <= spec.alpha:
        raise ValueError(f"block j={j} outside [2, alpha={spec.alpha}]")
    return (j - 1) * (spec.r + 1)


def movable_up(spec: GrassSpec, I, j: int) -> tuple:
    """Elements of ``I ∩ I_1`` whose translate into block ``j`` is free."""
    sh = _shift(spec, j)
    S = set(I)
    return tuple(x for x in I if x <= spec.r and x + sh not in S)


def movable_down(spec: GrassSpec, I, j: int) -> tuple:
    """Elements of ``I ∩ I_j`` whose preimage in ``I_1`` is free."""
    sh = _shift(spec, j)
    lo, hi = sh, sh + spec.r
    S = set(I)
    return tuple(x for x in I if lo <= x <= hi and x - sh not in S)


def delta_level(spec: GrassSpec, I, j: int, l: int) -> set:
    """``Δ(I, l)_j`` for any integer ``l``."""
    I = check_index_set(spec, I)
    sh = _shift(spec, j)
    S = set(I)
    if l >= 0:
        pool, step = movable_up(spec, I, j), sh
    else:
        pool, step = movable_down(spec, I, j), -sh
    out = set()
    for moved in combinations(pool, abs(l)):
        out.add(tuple(sorted(S.difference(moved).union(x + step for x in moved))))
    return out


def delta_family(spec: GrassSpec, I, j: int) -> DeltaFamily:
    I = check_index_set(spec, I)
    sh = _shift(spec, j)
    for x in I:
        if x <= spec.r and x + sh > spec.n:
            raise ValueError(f"translate {x}+{sh} = {x + sh} exceeds n={spec.n}")
    up = movable_up(spec, I, j)
    down = movable_down(spec, I, j)
    levels = {l: delta_level(spec, I, j, l) for l in range(-len(down), len(up) + 1)}
    return DeltaFamily(I, j, levels, len(up), len(down))


def delta_plus(spec: GrassSpec, I, j: int) -> set:
    up = movable_up(spec, I, j)
    out = set()
    for l in range(len(up) + 1):
        out |= delta_level(spec, I, j, l)
    return out


def delta_minus(spec: GrassSpec, I, j: int, max_level: int | None = None) -> set:
    down = movable_down(spec, I, j)
    top = len(down) if max_level is None else min(max_level, len(down))
    out = set()
    for l in range(top + 1):
        out |= delta_level(spec, I, j, -l)
    return out


# ---------------------------------------------------------------------------
# counting function

def h_m_exponents(k: int) -> list:
    """Exponents ``lambda_i - 1`` in ``h_m(k) = sum m**(lambda_i - 1)``.

    They come from the binary expansion of ``k + 1`` with the units bit
    discarded.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return []
    v = k + 1
    return [bit - 1 for bit in range(v.bit_length() - 1, 0, -1) if (v >> bit) & 1]


def h_m(m: int, k: int) -> int:
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    return sum(m**e for e in h_m_exponents(k))


# ---------------------------------------------------------------------------
# binomial systems from the flat-limit argument

def binomial_matrix(s: int, d: int, k1: int, k2: int):
    """Binomial coefficient matrix of the reduced certificate system.

    Rows are indexed by ``j = s, s-1, ..., d-k2`` and columns by the unknowns
    ``c_{d-k1-1}, ..., c_1``; the entry is ``binom(j, j-m)`` for column
    ``c_m``. Returns ``(M, square_cols)`` where ``square_cols`` are the column
    positions of the square submatrix ``M'`` (the last ``s-d+k2+1`` columns),
    or ``None`` when ``s < d - k2`` (no equations survive).
    """
    if min(s, d, k1, k2) < 0:
        raise ValueError("arguments must be non-negative")
    if d <= k1 + k2 + 1:
        raise ValueError(f"need d > k1+k2+1, got d={d}, k1={k1}, k2={k2}")
    if s < d - k2:
        return None
    rows_j = list(range(s, d - k2 - 1, -1))
    cols_m = list(range(d - k1 - 1, 0, -1))
    M = [[comb(j, j - m) if j >= m else 0 for m in cols_m] for j in rows_j]
    q = s - d + k2 + 1
    if q > len(cols_m):
        raise ValueError(f"system has {q} equations but only {len(cols_m)} unknowns")
    return M, list(range(len(cols_m) - q, len(cols_m)))


def binomial_square(s: int, d: int, k1: int, k2: int) -> list:
    """The square submatrix ``M'`` of :func:`binomial_matrix`."""
    res = binomial_matrix(s, d, k1, k2)
    if res is None:
        raise ValueError("empty system: s < d - k2")
    M, cols = res
    return [[row[c] for c in cols] for row in M]


def gessel_viennot_matrix(s: int, d: int, k2: int) -> list:
    """``M'' = (binom(i, j))`` for ``d-k2 <= i <= s`` and ``1 <= j <= s+1-d+k2``."""
    return [[comb(i, j) for j in range(1, s + 2 - d + k2)] for i in range(d - k2, s + 1)]


def binomial_system(s: int, d: int, k1: int, k2: int) -> list:
    """Full level system on ``c_0..c_s``.

    ``c_j = 0`` for ``d - k1 <= j <= s`` and
    ``sum_k binom(j, j - k) c_k = 0`` for ``d - k2 <= j <= s``.
    """
    rows = []
    for j in range(max(d - k1, 0), s + 1):
        rows.append([Fraction(int(i == j)) for i in range(s + 1)])
    for j in range(max(d - k2, 0), s + 1):
        rows.append([Fraction(comb(j, j - k)) if k <= j else Fraction(0)
                     for k in range(s + 1)])
    return rows


def multipoint_system(D: int, s_minus: int, k: int) -> list:
    """Level system on ``c_0..c_L`` with ``L = k + 1 - D + s_minus``.

    ``sum_l binom(D - i, D - l - i) c_l = 0`` for ``i = D - s_minus, ..., k``.
    """
    L = k + 1 - D + s_minus
    rows = []
    for i in range(D - s_minus, k + 1):
        rows.append([Fraction(comb(D - i, D - l - i)) if D - l - i >= 0 else Fraction(0)
                     for l in range(L + 1)])
    return rows
