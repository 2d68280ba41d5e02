import pytest

from oscgrass.bounds import (
    TABLE_ROWS,
    aop_bound,
    asymptotic_value,
    bound_report,
    branch,
    certify_from_orders,
    comparison_sweep,
    comparison_values,
    cor_bound,
    flagged_cells,
    thm_main_bound,
)
from oscgrass.combinat import GrassSpec, h_m
from oscgrass.oscproj import ProjectionSpec, image_dimension
from oscgrass.terracini import defect_sweep

S = GrassSpec


def test_thm_examples():
    assert thm_main_bound(S(4, 29)) == 36
    assert branch(S(4, 29)) == "large-n"
    assert branch(S(3, 8)) == "small-n-odd"
    assert thm_main_bound(S(3, 8)) == 2
    assert branch(S(4, 20)) == "small-n-even"


def test_thm_at_r8_n89():
    # alpha = 10 here, so the leading block count is 10, not 9
    spec = S(8, 89)
    assert spec.alpha == 10
    assert thm_main_bound(spec) + 1 == TABLE_ROWS[8](90 / 9) == 1001


def test_cor_and_aop_examples():
    assert cor_bound(S(4, 30)) == 13
    assert cor_bound(S(4, 20)) == 8
    assert cor_bound(S(5, 20)) == 7
    assert aop_bound(S(4, 10)) == 3
    assert aop_bound(S(2, 5)) == 2


def test_rejections():
    with pytest.raises(ValueError):
        S(2, 2)
    for spec in [S(1, 5), S(3, 6)]:
        with pytest.raises(ValueError):
            thm_main_bound(spec)
        with pytest.raises(ValueError):
            cor_bound(spec)
    with pytest.raises(ValueError):
        aop_bound(S(2, 4))
    with pytest.raises(ValueError):
        comparison_sweep([3])


def test_even_r_at_boundary_has_no_negative_term():
    # n = 2r+1 with r even makes n-2-alpha*r = -1
    assert thm_main_bound(S(4, 9)) == h_m(2, 3)
    assert branch(S(4, 9)) == "small-n-even"


@pytest.mark.parametrize("r", sorted(TABLE_ROWS))
def test_table_rows(r):
    n = r * r + 3 * r + 1
    x = (n + 1) // (r + 1)
    assert thm_main_bound(S(r, n)) + 1 == TABLE_ROWS[r](x)


def test_report_fields_and_branch():
    for r in range(2, 8):
        for n in range(2 * r + 1, r * r + 3 * r + 4):
            rep = bound_report(S(r, n))
            big = n >= r * r + 3 * r + 1
            assert (rep.branch == "large-n") == big
            if not big:
                assert rep.branch == ("small-n-even" if r % 2 == 0 else "small-n-odd")
            assert rep.h_thm == thm_main_bound(S(r, n))


def test_thm_dominates_cor():
    for r in range(2, 11):
        for n in range(2 * r + 1, r * r + 3 * r + 3):
            assert thm_main_bound(S(r, n)) + 1 >= cor_bound(S(r, n)), (r, n)


def test_comparison_examples():
    v = comparison_values(S(4, 10))
    assert v["a_prime"] == v["b"] == 2
    v = comparison_values(S(5, 11))
    assert v["a_doubleprime"] == v["b"] == 2
    for lam in range(2, 11):
        for eps in range(-1, 5):
            n = 6 * lam + eps
            if n >= 11:
                v = comparison_values(S(5, n))
                assert v["a"] > v["b"]


def test_comparison_flags():
    flags = flagged_cells(comparison_sweep(range(4, 9)))
    assert flags == {"a": [], "a_prime": [(4, 10)], "a_doubleprime": [(5, 11)]}


def test_finite_case_list_one_by_one():
    for r in range(4, 9):
        for n in range(2 * r + 1, r + 10):
            v = comparison_values(S(r, n))
            other = v["a_prime"] if r % 2 == 0 else v["a_doubleprime"]
            if (r, n) in [(4, 10), (5, 11)]:
                assert other == v["b"]
            else:
                assert other > v["b"], (r, n)


def test_large_r_needs_no_finite_check():
    for r in range(9, 14):
        assert 2 * r + 1 > r + 9


@pytest.mark.parametrize("r", [4, 8, 16])
def test_asymptotic_lower_bound(r):
    for c in range(r + 2, r + 8):
        spec = S(r, c * (r + 1) - 1)
        assert thm_main_bound(spec) + 1 >= asymptotic_value(spec)


def test_certify_from_orders():
    assert certify_from_orders(S(4, 29), (3,) * 6) == 36 == thm_main_bound(S(4, 29))
    assert certify_from_orders(S(2, 11), (1, 1, 1, 1)) == 4
    assert certify_from_orders(S(2, 5), ()) == 0
    with pytest.raises(ValueError):
        certify_from_orders(S(2, 5), (2,))


def test_certify_from_orders_with_verdict():
    spec = S(2, 5)
    v = image_dimension(ProjectionSpec.from_orders(spec, [2]))
    assert not v.generically_finite
    with pytest.raises(ValueError):
        certify_from_orders(spec, (2,), v)
    v = image_dimension(ProjectionSpec.from_orders(spec, [1]))
    assert certify_from_orders(spec, (1,), v) == 1


def test_certified_h_never_defective():
    for r in (2, 3):
        for n in range(2 * r + 1, 10):
            top = thm_main_bound(S(r, n)) + 1
            assert all(rep.defect == 0 for rep in defect_sweep([r], [n], top, seed=20240601))
