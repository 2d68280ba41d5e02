"""Secant dimensions of G(r, n) from ranks of stacked tangent frames."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .combinat import GrassSpec
from .exact import QQ, PrimeField, bareiss_rank, rank_mod_p
from .grassmann import osculating_frame, random_chart

SIZE_GUARD = 10**7
EXACT_RECHECK_MAX_N = 60
CSV_COLUMNS = ["r", "n", "h", "expected_dim", "computed_dim", "defect", "field", "trials", "seed"]


class SizeGuardError(ValueError):
    """The stacked frame would exceed the entry budget."""


def expected_secant_dim(spec: GrassSpec, h: int) -> int:
    return min(h * spec.dim + h - 1, spec.N)


def frame_entries(spec: GrassSpec, h: int) -> int:
    return h * (spec.dim + 1) * (spec.N + 1)


def check_size(spec: GrassSpec, h: int, guard: int = SIZE_GUARD):
    size = frame_entries(spec, h)
    if size > guard:
        raise SizeGuardError(
            f"stacked frame for r={spec.r}, n={spec.n}, h={h} has "
            f"{h * (spec.dim + 1)}x{spec.N + 1} = {size} entries > {guard}")


@dataclass
class SecantReport:
    r: int
    n: int
    h: int
    expected_dim: int | None
    computed_dim: int | None
    defect: int | None
    trials: int
    seed: int
    field: str
    exact_dim: int | None = None
    error: str | None = None

    @property
    def spec(self) -> GrassSpec:
        return GrassSpec(self.r, self.n)

    def to_dict(self) -> dict:
        return asdict(self)

    def csv_row(self) -> dict:
        return {k: getattr(self, k) for k in CSV_COLUMNS}


def _trial_rng(seed: int, spec: GrassSpec, trial: int):
    return np.random.default_rng(np.random.SeedSequence([seed, spec.r, spec.n, trial]))


def _tangent_rows(spec: GrassSpec, rng, field) -> list:
    return osculating_frame(random_chart(spec, rng, field), 1).matrix.rows


def _prefix_ranks(spec: GrassSpec, h_max: int, rng, field) -> list:
    """Span dimensions for h = 1..h_max from one sequence of random points."""
    rows, out = [], []
    for _ in range(h_max):
        rows.extend(_tangent_rows(spec, rng, field))
        if isinstance(field, PrimeField):
            rk = rank_mod_p(rows, field.p)
        else:
            rk = bareiss_rank(rows)
        out.append(rk - 1)
    return out


def _exact_recheck(spec: GrassSpec, h: int, seed: int, tries: int = 2) -> int:
    """Span dimension over Q at points with small integer chart entries."""
    best = -1
    for t in range(tries):
        rng = _trial_rng(seed + 1, spec, t)
        rows = []
        for _ in range(h):
            rows.extend(_tangent_rows(spec, rng, QQ))
        best = max(best, bareiss_rank(rows) - 1)
    return best


def _reports_for_cell(spec: GrassSpec, h_max: int, trials: int, seed: int, field,
                      guard: int) -> list:
    try:
        check_size(spec, h_max, guard)
    except SizeGuardError as exc:
        ok = [h for h in range(1, h_max + 1) if frame_entries(spec, h) <= guard]
        reps = _reports_for_cell(spec, max(ok), trials, seed, field, guard) if ok else []
        for h in range(len(ok) + 1, h_max + 1):
            reps.append(SecantReport(spec.r, spec.n, h, expected_secant_dim(spec, h), None, None,
                                     trials, seed, field.describe(), error=str(exc)))
        return reps
    best = [-1] * h_max
    for t in range(trials):
        dims = _prefix_ranks(spec, h_max, _trial_rng(seed, spec, t), field)
        best = [max(a, b) for a, b in zip(best, dims)]
    reports = []
    for h, dim in enumerate(best, start=1):
        exp = expected_secant_dim(spec, h)
        rep = SecantReport(spec.r, spec.n, h, exp, dim, exp - dim, trials, seed, field.describe())
        if rep.defect > 0 and spec.N <= EXACT_RECHECK_MAX_N and isinstance(field, PrimeField):
            ex = _exact_recheck(spec, h, seed)
            rep.exact_dim = ex
            if ex > rep.computed_dim:
                # a bad prime-field sample; the rational value is a valid lower bound
                rep.computed_dim = ex
                rep.defect = exp - ex
            rep.field = f"{rep.field}+QQ"
        reports.append(rep)
    return reports


def secant_dim(spec: GrassSpec, h: int, trials: int = 3, seed: int = 0, field=None,
               guard: int = SIZE_GUARD) -> SecantReport:
    """Dimension of the h-th secant variety by Terracini's lemma.

    ``h`` random chart points are drawn per trial; the projective dimension of
    the span of their tangent spaces is maximized over trials.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    check_size(spec, h, guard)
    return _reports_for_cell(spec, h, trials, seed, field or PrimeField(), guard)[-1]


def _cell_job(args):
    r, n, h_max, trials, seed, prime, guard = args
    field = PrimeField(prime) if prime else QQ
    return _reports_for_cell(GrassSpec(r, n), h_max, trials, seed, field, guard)


def defect_sweep(r_range, n_range, h_max: int, seed: int = 0, trials: int = 3, field=None,
                 jobs: int = 1, guard: int = SIZE_GUARD) -> list:
    """Secant reports for every ``(r, n, h)`` with ``n > r`` in the given ranges.

    Cells whose frame exceeds the size guard get a report with ``error`` set.
    Output is sorted by ``(r, n, h)`` regardless of ``jobs``.
    """
    field = field or PrimeField()
    prime = field.p if isinstance(field, PrimeField) else None
    cells = [(r, n, h_max, trials, seed, prime, guard)
             for r in r_range for n in n_range if r >= 1 and n > r]
    if not cells or h_max < 1:
        return []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_cell_job, cells))
    else:
        chunks = [_cell_job(c) for c in cells]
    reports = [rep for chunk in chunks for rep in chunk]
    return sorted(reports, key=lambda rep: (rep.r, rep.n, rep.h))


def defective_cells(reports) -> list:
    return [(rep.r, rep.n, rep.h) for rep in reports if rep.defect]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for rep in reports:
        w.writerow(rep.csv_row())
    return buf.getvalue()


def reports_to_json(reports) -> str:
    return json.dumps([rep.to_dict() for rep in reports], sort_keys=True, indent=2)
