"""Plücker embedding, affine charts and osculating frames of G(r, n)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .combinat import GrassSpec, ball, check_index_set, iter_lambda, standard_blocks
from .exact import QQ, FrameMatrix, Jet, PrimeField, rank
from .exact.fields import get_field


@dataclass
class ChartMatrix:
    """Affine chart around the coordinate point ``e_base``.

    ``entries[k][c]`` is the parameter in row ``k`` and in the ``c``-th column
    not belonging to ``base``; the columns indexed by ``base`` carry the
    identity block.
    """

    spec: GrassSpec
    entries: list
    base: tuple = None
    field: object = QQ

    def __post_init__(self):
        if self.base is None:
            self.base = standard_blocks(self.spec)[0] if self.spec.alpha else tuple(range(self.spec.r + 1))
        self.base = check_index_set(self.spec, self.base)
        rows, cols = self.spec.r + 1, self.spec.n - self.spec.r
        if len(self.entries) != rows or any(len(e) != cols for e in self.entries):
            raise ValueError(f"chart must be {rows}x{cols}")
        self.entries = [[self.field(x) for x in row] for row in self.entries]

    @property
    def free_columns(self) -> list:
        inside = set(self.base)
        return [c for c in range(self.spec.n + 1) if c not in inside]

    def variable_index(self, k: int, c: int) -> int:
        """Index of the chart variable ``a_{k, free_columns[c]}``."""
        return k * (self.spec.n - self.spec.r) + c

    def variable_label(self, v: int) -> str:
        width = self.spec.n - self.spec.r
        k, c = divmod(v, width)
        return f"a[{self.base[k]},{self.free_columns[c]}]"

    def full_matrix(self) -> list:
        """The ``(r+1) x (n+1)`` spanning matrix as field elements."""
        f = self.field
        m = [[f(0)] * (self.spec.n + 1) for _ in range(self.spec.r + 1)]
        for k, b in enumerate(self.base):
            m[k][b] = f(1)
        for c, col in enumerate(self.free_columns):
            for k in range(self.spec.r + 1):
                m[k][col] = self.entries[k][c]
        return m

    def jet_matrix(self, order: int) -> list:
        """Spanning matrix with every chart entry replaced by ``a + x_v``."""
        f = self.field
        m = [[Jet.const(0, order, f) for _ in range(self.spec.n + 1)]
             for _ in range(self.spec.r + 1)]
        for k, b in enumerate(self.base):
            m[k][b] = Jet.const(1, order, f)
        for c, col in enumerate(self.free_columns):
            for k in range(self.spec.r + 1):
                m[k][col] = Jet.variable(self.variable_index(k, c), self.entries[k][c], order, f)
        return m


def random_chart(spec: GrassSpec, rng, field=None, base=None) -> ChartMatrix:
    """Chart point with entries drawn uniformly from ``field``."""
    field = field or PrimeField()
    entries = [[field.random(rng) for _ in range(spec.n - spec.r)] for _ in range(spec.r + 1)]
    return ChartMatrix(spec, entries, base, field)


def zero_chart(spec: GrassSpec, field=QQ, base=None) -> ChartMatrix:
    return ChartMatrix(spec, [[0] * (spec.n - spec.r) for _ in range(spec.r + 1)], base, field)


# ---------------------------------------------------------------------------
# maximal minors

def _all_minors(matrix, ncols: int, k: int, zero, one, is_zero):
    """All ``k x k`` minors of the first ``k`` rows, keyed by column tuple.

    Laplace expansion along the last row with memoization over column subsets,
    so shared sub-minors are computed once.
    """
    level = {(): one}
    for m in range(1, k + 1):
        row = matrix[m - 1]
        nxt = {}
        for S in combinations(range(ncols), m):
            acc = zero
            for idx, c in enumerate(S):
                e = row[c]
                if is_zero(e):
                    continue
                sub = level.get(S[:idx] + S[idx + 1:])
                if sub is None or is_zero(sub):
                    continue
                term = e * sub
                acc = acc - term if (m - 1 + idx) % 2 else acc + term
            nxt[S] = acc
        level = nxt
    return level


def pluecker_of_matrix(rows, field=QQ) -> dict:
    """Plücker coordinates ``{J: det(rows[:, J])}`` of a spanning matrix."""
    rows = [[field(x) for x in r] for r in rows]
    k, ncols = len(rows), len(rows[0])

    class _S:
        __slots__ = ("v",)

        def __init__(self, v):
            self.v = v

        def __mul__(self, o):
            return _S(field.reduce(self.v * o.v))

        def __add__(self, o):
            return _S(field.reduce(self.v + o.v))

        def __sub__(self, o):
            return _S(field.reduce(self.v - o.v))

    wrapped = [[_S(x) for x in r] for r in rows]
    minors = _all_minors(wrapped, ncols, k, _S(field(0)), _S(field(1)), lambda e: e.v == 0)
    return {J: v.v for J, v in minors.items()}


@dataclass
class PlueckerPoint:
    """Sparse vector of Plücker coordinates (zeros omitted)."""

    spec: GrassSpec
    coords: dict
    field: object = QQ

    def __getitem__(self, J):
        return self.coords.get(tuple(J), self.field(0))

    def support(self) -> set:
        return {J for J, v in self.coords.items() if v != 0}

    def to_json(self) -> str:
        out = []
        for J in sorted(self.coords):
            v = Fraction(self.coords[J])
            if v != 0:
                out.append([list(J), v.numerator, v.denominator])
        return json.dumps({"r": self.spec.r, "n": self.spec.n, "coords": out})

    @classmethod
    def from_json(cls, text: str, field=QQ) -> "PlueckerPoint":
        data = json.loads(text)
        spec = GrassSpec(data["r"], data["n"])
        coords = {}
        for idx, num, den in data["coords"]:
            J = check_index_set(spec, idx)
            coords[J] = field(Fraction(num, den))
        return cls(spec, coords, field)


def pluecker_embed(A: ChartMatrix) -> PlueckerPoint:
    """All maximal minors of the chart's spanning matrix."""
    coords = pluecker_of_matrix(A.full_matrix(), A.field)
    return PlueckerPoint(A.spec, {J: v for J, v in coords.items() if v != 0}, A.field)


def pluecker_relation_residuals(point: PlueckerPoint) -> list:
    """Residuals of the three-term relations ``p_{ab}p_{cd} - p_{ac}p_{bd} + p_{ad}p_{bc}``.

    Only meaningful for ``r = 1``; each residual is zero on the Grassmannian.
    """
    if point.spec.r != 1:
        raise ValueError("three-term relations are for lines (r = 1)")
    f = point.field
    out = []
    for a, b, c, d in combinations(range(point.spec.n + 1), 4):
        p = point.__getitem__
        out.append(f.reduce(p((a, b)) * p((c, d)) - p((a, c)) * p((b, d)) + p((a, d)) * p((b, c))))
    return out


# ---------------------------------------------------------------------------
# osculating frames

@dataclass
class OsculatingFrame:
    order: int
    chart: ChartMatrix
    matrix: FrameMatrix
    monomials: list

    def restrict(self, s: int) -> FrameMatrix:
        """Rows of derivative order ``<= s``."""
        keep = [i for i, m in enumerate(self.monomials) if len(m) <= s]
        return self.matrix.select_rows(keep)

    def projective_dim(self, s: int | None = None) -> int:
        m = self.matrix if s is None else self.restrict(s)
        return rank(m) - 1


def _minor_jets(A: ChartMatrix, order: int) -> dict:
    spec, f = A.spec, A.field
    mat = A.jet_matrix(order)
    return _all_minors(mat, spec.n + 1, spec.r + 1, Jet.const(0, order, f),
                       Jet.const(1, order, f), lambda j: j.is_zero())


def osculating_frame(A: ChartMatrix, s: int, columns=None) -> OsculatingFrame:
    """Rows ``phi(A)`` and all mixed partials of order ``<= s`` at ``A``.

    Each Plücker coordinate is expanded as a jet around ``A``; the coefficient
    of a squarefree monomial is the corresponding mixed partial derivative.
    Rows for monomials with a repeated variable are omitted (they vanish),
    as are rows that vanish identically.
    """
    spec = A.spec
    if not 0 <= s <= spec.r + 1:
        raise ValueError(f"order s must lie in [0, r+1], got {s}")
    jets = _minor_jets(A, s)
    cols = list(iter_lambda(spec)) if columns is None else list(columns)
    monos = set()
    for J in cols:
        monos.update(m for m in jets[J].terms if len(set(m)) == len(m))
    monos.add(())
    monos = sorted(monos, key=lambda m: (len(m), m))
    zero = A.field(0)
    rows = [[jets[J].terms.get(m, zero) for J in cols] for m in monos]
    labels = ["phi" if not m else "d/" + "".join(A.variable_label(v) for v in m) for m in monos]
    fm = FrameMatrix(rows, A.field, labels, cols, {"order": s})
    return OsculatingFrame(s, A, fm, monos)


def closed_form_frame(A: ChartMatrix, s: int) -> FrameMatrix:
    """Independent frame for ``s <= 2`` via row-replacement determinants.

    The coefficient of ``x_{k1,c1} ... x_{km,cm}`` in ``det`` of the perturbed
    minor equals the minor with row ``k_i`` replaced by the unit vector at
    column ``c_i`` (multilinearity in rows), zero if two variables share a
    row or a column.
    """
    if s > 2:
        raise ValueError("closed form implemented for s <= 2 only")
    spec, f = A.spec, A.field
    base = A.full_matrix()
    free = A.free_columns
    nvars = (spec.r + 1) * len(free)
    cols = list(iter_lambda(spec))
    rows, labels = [], []

    def replaced(assign):
        m = [list(r) for r in base]
        for k, col in assign:
            m[k] = [f(int(i == col)) for i in range(spec.n + 1)]
        return pluecker_of_matrix(m, f)

    rows.append([pluecker_of_matrix(base, f)[J] for J in cols])
    labels.append("phi")
    var = [(v // len(free), free[v % len(free)]) for v in range(nvars)]
    for deg in range(1, s + 1):
        for vs in combinations(range(nvars), deg):
            pairs = [var[v] for v in vs]
            if len({k for k, _ in pairs}) < deg or len({c for _, c in pairs}) < deg:
                continue
            p = replaced(pairs)
            row = [p[J] for J in cols]
            if all(x == 0 for x in row):
                continue
            rows.append(row)
            labels.append("d/" + "".join(A.variable_label(v) for v in vs))
    return FrameMatrix(rows, f, labels, cols, {"order": s})


def osc_indexset(spec: GrassSpec, I, s: int) -> set:
    """Coordinate support of the order-``s`` osculating space at ``e_I``."""
    return ball(spec, I, s)


def osc_dim_formula(spec: GrassSpec, s: int) -> int:
    """Projective dimension of the order-``s`` osculating space, ``0 <= s <= r``."""
    from math import comb

    if not 0 <= s <= spec.r:
        raise ValueError(f"s must lie in [0, r], got {s}")
    return sum(comb(spec.r + 1, l) * comb(spec.n - spec.r, l) for l in range(1, s + 1))


# ---------------------------------------------------------------------------
# tangent developable of the rational normal curve

def tangent_developable_frame(n: int, m: int, t0, u0, field) -> list:
    """Derivative rows of order ``1..m`` of ``(t + u, ..., t^n + n t^(n-1) u)``."""
    t = Jet.variable(0, t0, m, field)
    u = Jet.variable(1, u0, m, field)
    comps = []
    tp = Jet.const(1, m, field)
    for k in range(1, n + 1):
        prev = tp
        tp = tp * t
        comps.append(tp + (prev * u).scale(k))
    monos = [(0,) * a + (1,) * b for d in range(1, m + 1) for b in range(d + 1) for a in [d - b]]
    return [[c.coeff(mono) for c in comps] for mono in monos]


def tangent_developable_osc_dim(n: int, m: int, seed: int = 0, field=None,
                                max_tries: int = 5) -> int:
    """Projective dimension of the order-``m`` osculating space at a random point.

    Resamples (up to ``max_tries``) while the rank falls short of the trivial
    bound ``n`` and keeps the maximum.
    """
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    field = field or PrimeField()
    rng = np.random.default_rng(seed)
    best = -1
    for _ in range(max_tries):
        rows = tangent_developable_frame(n, m, field.random(rng), field.random(rng), field)
        best = max(best, rank(rows, field))
        if best == n:
            break
    return best


def field_from_name(name: str, prime: int | None = None):
    return get_field(name, prime)
