"""Exact dense linear algebra over Q, F_p and Q[t].

Two tiers are used throughout the package: a fast probabilistic tier over a
large prime field (numpy int64 elimination) and a certifying tier over the
rationals (fraction-free Bareiss elimination on Python integers).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

import numpy as np

from .fields import QQ, DEFAULT_PRIME, PrimeField, RationalField
from .poly import PolyT

log = logging.getLogger(__name__)


class RankDisagreement(ArithmeticError):
    """Sampled rank of a t-family exceeded its exact rank (cannot happen)."""


@dataclass
class FrameMatrix:
    """Rectangular matrix with labelled rows.

    ``rows`` holds field elements (``Fraction`` / residues) or ``PolyT``.
    """

    rows: list
    field: object = QQ
    row_labels: list | None = None
    col_labels: list | None = None
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError(f"ragged matrix: row widths {sorted(widths)}")
        if self.row_labels is not None:
            if len(self.row_labels) != len(self.rows):
                raise ValueError("one label per row required")
            if len(set(self.row_labels)) != len(self.row_labels):
                raise ValueError("row labels must be unique")

    @property
    def shape(self):
        ncols = len(self.rows[0]) if self.rows else len(self.col_labels or ())
        return len(self.rows), ncols

    def select_columns(self, cols) -> "FrameMatrix":
        cols = list(cols)
        labels = [self.col_labels[c] for c in cols] if self.col_labels else None
        return FrameMatrix([[r[c] for c in cols] for r in self.rows], self.field,
                           self.row_labels, labels, dict(self.meta))

    def select_rows(self, idx) -> "FrameMatrix":
        idx = list(idx)
        labels = [self.row_labels[i] for i in idx] if self.row_labels else None
        return FrameMatrix([self.rows[i] for i in idx], self.field, labels,
                           self.col_labels, dict(self.meta))

    def stack(self, other: "FrameMatrix") -> "FrameMatrix":
        labels = None
        if self.row_labels is not None and other.row_labels is not None:
            labels = list(self.row_labels) + list(other.row_labels)
            if len(set(labels)) != len(labels):
                labels = None
        return FrameMatrix(self.rows + other.rows, self.field, labels, self.col_labels)

    def is_poly(self) -> bool:
        return any(isinstance(x, PolyT) for r in self.rows for x in r)


# ---------------------------------------------------------------------------
# F_p tier
# ---------------------------------------------------------------------------

def rank_mod_p(a, p: int = DEFAULT_PRIME) -> int:
    """Rank of an integer matrix modulo ``p`` (``p < 2**31``)."""
    m = np.array(a, dtype=np.int64, copy=True) % p
    if m.ndim != 2 or m.size == 0:
        return 0
    if m.shape[0] > m.shape[1]:
        m = m.T.copy()
    nrows, ncols = m.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(m[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), -1, p)
        m[rank, c:] = m[rank, c:] * inv % p
        below = m[rank + 1:, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            rows = rank + 1 + hit
            m[rows, c:] = (m[rows, c:] - np.outer(m[rows, c], m[rank, c:]) % p) % p
        rank += 1
    return rank


def rank_sparse_mod_p(rows, p: int = DEFAULT_PRIME) -> int:
    """Rank of sparse rows ``{col: value}`` modulo ``p`` by incremental echelon.

    Suited to very wide matrices whose rows have few nonzeros.
    """
    pivots: dict = {}
    for row in rows:
        v = {c: x % p for c, x in row.items() if x % p}
        while v:
            c = min(v)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(v[c], -1, p)
                pivots[c] = {k: x * inv % p for k, x in v.items()}
                break
            f = v[c]
            for k, x in prow.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return len(pivots)


# ---------------------------------------------------------------------------
# Q tier
# ---------------------------------------------------------------------------

def _integer_rows(rows):
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def bareiss_rank(rows) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, nrows):
            mi = m[i]
            f = mi[c]
            pr = m[rank]
            for k in range(c + 1, ncols):
                mi[k] = (pv * mi[k] - f * pr[k]) // prev
            mi[c] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(rows) -> Fraction:
    """Exact determinant of a square rational matrix."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    fr = [[Fraction(x) for x in r] for r in rows]
    scale = Fraction(1)
    m = []
    for r in fr:
        den = lcm(*(x.denominator for x in r))
        scale /= den
        m.append([int(x * den) for x in r])
    sign, prev = 1, 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pv = m[c][c]
        for i in range(c + 1, n):
            f = m[i][c]
            for k in range(c + 1, n):
                m[i][k] = (pv * m[i][k] - f * m[c][k]) // prev
            m[i][c] = 0
        prev = pv
    return sign * m[n - 1][n - 1] * scale


def rref(rows, field=QQ):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    red = field.reduce
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [red(x * inv) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [red(x - f * y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(rows, ncols: int, field=QQ):
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        return [[field(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    red = field.reduce
    for fcol in free:
        v = [field(0)] * ncols
        v[fcol] = field(1)
        for i, pc in enumerate(pivots):
            v[pc] = red(-m[i][fcol])
        basis.append(v)
    return basis


def solve_homogeneous(rows, nonzero_coord: int, ncols: int | None = None, field=QQ):
    """Kernel vector with ``v[nonzero_coord] == 1``, or ``None`` if none exists.

    Deterministic: the first kernel basis vector (in free-column order) that is
    nonzero at ``nonzero_coord`` is returned, normalized.
    """
    if ncols is None:
        if isinstance(rows, FrameMatrix):
            ncols = rows.shape[1]
        else:
            ncols = len(rows[0])
    if isinstance(rows, FrameMatrix):
        field = rows.field
        rows = rows.rows
    for v in nullspace(rows, ncols, field):
        if v[nonzero_coord] != 0:
            inv = field.inv(v[nonzero_coord])
            return [field.reduce(x * inv) for x in v]
    return None


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def rank(m, field=None) -> int:
    """Exact rank of a scalar matrix.

    Uses int64 elimination over F_p or Bareiss elimination over Q depending on
    the matrix field.
    """
    if isinstance(m, FrameMatrix):
        field = m.field if field is None else field
        if m.is_poly():
            raise TypeError("use rank_poly for matrices with PolyT entries")
        rows = m.rows
    else:
        rows = m
        field = QQ if field is None else field
    if not rows or not len(rows[0]):
        return 0
    if isinstance(field, PrimeField):
        return rank_mod_p(rows, field.p)
    return bareiss_rank(rows)


def _poly_bareiss_rank(rows) -> int:
    m = [[x if isinstance(x, PolyT) else PolyT.const(x) for x in r] for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = PolyT.const(1)
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, nrows):
            f = m[i][c]
            for k in range(c + 1, ncols):
                m[i][k] = (pv * m[i][k] - f * m[rank][k]).exact_div(prev)
            m[i][c] = PolyT()
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_poly(m: FrameMatrix, samples: int = 3, seed: int = 0,
              prime: int = DEFAULT_PRIME, exact: bool = False) -> int:
    """Rank over the rational function field in ``t``.

    By default the matrix is evaluated at ``samples`` random points of
    ``[2, p - 2]`` in F_p and the maximum rank is returned (a lower bound that
    is tight with high probability). With ``exact=True`` the rank is computed
    by fraction-free elimination over Q[t] and checked against sampling.
    """
    rows = m.rows if isinstance(m, FrameMatrix) else m
    if not rows or not len(rows[0]):
        return 0
    fp = PrimeField(prime)
    rng = np.random.default_rng(seed)
    sampled = []
    for _ in range(samples):
        t0 = fp.random_nonspecial(rng)
        ev = [[_eval_entry(x, t0, fp) for x in r] for r in rows]
        sampled.append(rank_mod_p(ev, fp.p))
    best = max(sampled) if sampled else 0
    if len(set(sampled)) > 1:
        log.warning("rank_poly: evaluation points disagree: %s", sampled)
    if not exact:
        return best
    if any(isinstance(x, PolyT) and not isinstance(x.field, RationalField)
           for r in rows for x in r):
        raise TypeError("exact rank_poly needs entries over Q")
    ex = _poly_bareiss_rank(rows)
    if best > ex:
        raise RankDisagreement(f"sampled rank {best} exceeds exact rank {ex}")
    if best < ex:
        log.warning("rank_poly: all %d evaluation points degenerate (%d < %d)",
                    samples, best, ex)
    return ex


def _eval_entry(x, t0, fp: PrimeField):
    if isinstance(x, PolyT):
        acc = 0
        for c in reversed(x.coeffs):
            acc = (acc * t0 + fp(c)) % fp.p
        return acc
    return fp(x)
