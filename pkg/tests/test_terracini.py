import csv
import io
import json

import pytest

from oscgrass.bounds import thm_main_bound
from oscgrass.combinat import GrassSpec
from oscgrass.exact import QQ
from oscgrass.terracini import (
    CSV_COLUMNS,
    SizeGuardError,
    defect_sweep,
    defective_cells,
    expected_secant_dim,
    reports_to_csv,
    reports_to_json,
    secant_dim,
)

SEED = 20240601


def test_single_point_is_the_grassmannian():
    rep = secant_dim(GrassSpec(2, 5), 1, seed=SEED)
    assert rep.computed_dim == 9 and rep.defect == 0


def test_two_points_on_g27_not_defective():
    assert secant_dim(GrassSpec(2, 7), 2, seed=SEED).defect == 0


def test_g27_three_points_measured():
    # the listed triple (2,7,3) is not defective in this indexing
    rep = secant_dim(GrassSpec(2, 7), 3, seed=SEED)
    assert (rep.expected_dim, rep.computed_dim, rep.defect) == (47, 47, 0)


@pytest.mark.parametrize("r,n,h,dim", [(2, 6, 3, 33), (3, 7, 3, 49), (3, 7, 4, 63), (2, 8, 4, 73)])
def test_defective_cells_measured(r, n, h, dim):
    rep = secant_dim(GrassSpec(r, n), h, seed=SEED)
    assert rep.computed_dim == dim
    assert rep.defect == expected_secant_dim(GrassSpec(r, n), h) - dim > 0


def test_lines_are_defective():
    reps = defect_sweep([1], [5], 2, seed=SEED)
    assert [r.defect for r in reps] == [0, 1]
    assert reps[1].exact_dim == 13


def test_empty_sweep():
    assert defect_sweep([], [], 3) == []
    assert defect_sweep([2], range(5, 5), 3) == []


def test_sweep_flags_and_monotonicity():
    reps = defect_sweep([2, 3], range(5, 10), 5, seed=SEED)
    reps = [r for r in reps if r.n >= 2 * r.r + 1]
    assert defective_cells(reps) == [(2, 6, 3), (2, 8, 4), (3, 7, 3), (3, 7, 4)]
    by_cell = {}
    for rep in reps:
        by_cell.setdefault((rep.r, rep.n), []).append(rep.computed_dim)
    for dims in by_cell.values():
        assert all(a <= b for a, b in zip(dims, dims[1:]))
    for rep in reps:
        assert 0 <= rep.computed_dim <= rep.expected_dim


def test_prime_tier_never_beats_rational_tier():
    for r, n, h in [(2, 5, 2), (2, 6, 3), (2, 7, 2)]:
        fp = secant_dim(GrassSpec(r, n), h, seed=SEED)
        qq = secant_dim(GrassSpec(r, n), h, trials=2, seed=SEED, field=QQ)
        assert fp.computed_dim <= qq.computed_dim


def test_exact_recheck_recorded():
    rep = secant_dim(GrassSpec(2, 6), 3, seed=SEED)
    assert rep.exact_dim == 33 and rep.field.endswith("+QQ")


def test_sweep_matches_single_calls_and_jobs():
    reps = defect_sweep([2], [6], 3, seed=SEED)
    assert reps[-1].computed_dim == secant_dim(GrassSpec(2, 6), 3, seed=SEED).computed_dim
    par = defect_sweep([2], [5, 6], 3, seed=SEED, jobs=2)
    seq = defect_sweep([2], [5, 6], 3, seed=SEED)
    assert reports_to_json(par) == reports_to_json(seq)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        secant_dim(GrassSpec(5, 17), 40)
    reps = defect_sweep([2], [7], 3, guard=56 * 16 * 2)
    assert [r.error is None for r in reps] == [True, True, False]


def test_bound_certified_cells_have_no_defect():
    for r in (2, 3):
        for n in range(2 * r + 1, 10):
            spec = GrassSpec(r, n)
            top = thm_main_bound(spec) + 1
            for rep in defect_sweep([r], [n], top, seed=SEED):
                assert rep.defect == 0


def test_csv_and_json_output():
    reps = defect_sweep([2], [5], 2, seed=SEED)
    rows = list(csv.DictReader(io.StringIO(reports_to_csv(reps))))
    assert list(rows[0]) == CSV_COLUMNS
    assert rows[1]["seed"] == str(SEED)
    data = json.loads(reports_to_json(reps))
    assert data[0]["field"].startswith("GF(")
