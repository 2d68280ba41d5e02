"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
Criteria whose stated expectation cannot hold are still checked literally;
a companion line shows the value actually obtained.
"""

import time
from itertools import product

import numpy as np
import pytest

from oscgrass.bounds import TABLE_ROWS, comparison_sweep, flagged_cells, thm_main_bound
from oscgrass.cli import main as cli_main
from oscgrass.combinat import GrassSpec, distance, gessel_viennot_matrix
from oscgrass.degeneration import (
    DegenerationMode,
    build_family,
    certificates_from_json,
    verify_limit_containment,
)
from oscgrass.exact import PrimeField, bareiss_det
from oscgrass.grassmann import osc_dim_formula, osculating_frame, random_chart, tangent_developable_osc_dim
from oscgrass.oscproj import ProjectionSpec, certified_order_tuples, image_dimension
from oscgrass.terracini import EXACT_RECHECK_MAX_N, defect_sweep

SEED = 20240601
RESULTS = []


def record(label, ok, detail, seconds, limit):
    ok = bool(ok) and seconds < limit
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail} ({seconds:.2f}s, limit {limit}s)"
    RESULTS.append(line)
    return ok


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# 1 -----------------------------------------------------------------------------

def crit_1(tmp_dir):
    def go():
        path = f"{tmp_dir}/example_certificate.json"
        code = cli_main(["degenerate", "--r", "2", "--n", "5", "--k1", "0", "--k2", "1",
                         "--out", path, "--output", f"{tmp_dir}/degenerate_report.json"])
        with open(path) as fh:
            certs = certificates_from_json(fh.read())
        cert = certs[0]
        I = (3, 4, 5)
        levels = {}
        for J, c in cert.coeffs.items():
            levels.setdefault(distance(I, J), set()).add(abs(c))
        proportional = levels == {0: {3}, 1: {2}, 2: {1}} and cert.coeffs[I] == 3
        family = build_family(cert.spec, cert.mode)
        zero = all(cert.form_on(g.coords).is_zero() for g in family.generators)
        return code, len(certs), cert.target, proportional, zero, len(family.generators)

    (code, ncert, target, prop, zero, ngen), sec = timed(go)
    ok = code == 0 and ncert == 1 and target == (3, 4, 5) and prop and zero and ngen == 11
    return record("1 worked certificate", ok,
                  f"exit {code}, target {target}, levels (3,-2,1,0) up to sign {prop}, "
                  f"F_I == 0 on {ngen} generators {zero}", sec, 1)


# 2 -----------------------------------------------------------------------------

def crit_2():
    def go():
        bad, count = [], 0
        for r in range(1, 5):
            for n in range(2 * r + 1, 10):
                for k1, k2 in product(range(r), repeat=2):
                    if k1 + k2 > r - 1:
                        continue
                    count += 1
                    rep = verify_limit_containment(GrassSpec(r, n), DegenerationMode.two_point(k1, k2))
                    if not rep.verdict or rep.failures:
                        bad.append((r, n, k1, k2))
        for r, n, k in [(3, 8, 1), (5, 11, 2), (5, 17, 2)]:
            count += 1
            rep = verify_limit_containment(GrassSpec(r, n), DegenerationMode.multi_point(k))
            if not rep.verdict or rep.failures:
                bad.append((r, n, k))
        return count, bad

    (count, bad), sec = timed(go)
    return record("2 flat-limit containment", not bad, f"{count} cases, failures {bad}", sec, 300)


# 3 -----------------------------------------------------------------------------

def crit_3():
    def go():
        bad = []
        for trial in range(3):
            field = PrimeField()
            for r, n in [(2, 5), (2, 7), (3, 7), (3, 8)]:
                spec = GrassSpec(r, n)
                rng = np.random.default_rng(np.random.SeedSequence([SEED, trial, r, n]))
                for _ in range(5):
                    f = osculating_frame(random_chart(spec, rng, field), r + 1)
                    for s in range(r + 2):
                        want = osc_dim_formula(spec, s) + 1 if s <= r else spec.N + 1
                        if f.projective_dim(s) + 1 != want:
                            bad.append((trial, r, n, s))
        return field.p, bad

    (p, bad), sec = timed(go)
    return record("3 osculating dimensions", not bad and p > 2**30,
                  f"p={p}, mismatches {bad}", sec, 60)


# 4 -----------------------------------------------------------------------------

def crit_4():
    def go():
        infinite, total = [], 0
        for r in (2, 3):
            for n in range(2 * r + 1, 12):
                spec = GrassSpec(r, n)
                for res in certified_order_tuples(spec):
                    total += 1
                    v = image_dimension(ProjectionSpec.from_orders(spec, res.orders), seed=SEED)
                    if not v.generically_finite:
                        infinite.append((r, n, res.orders))
        rel = {(r, n): image_dimension(ProjectionSpec.from_orders(GrassSpec(r, n), [r]),
                                       seed=SEED).relative_dim for r, n in [(2, 7), (3, 9)]}
        return total, infinite, rel

    (total, infinite, rel), sec = timed(go)
    ok = not infinite and rel == {(2, 7): 9, (3, 9): 16}
    return record("4 projection dimensions", ok,
                  f"{total} certified specs, not finite {infinite}, relative dims {rel}", sec, 120)


# 5 -----------------------------------------------------------------------------

LISTED_EXCEPTIONS = {(2, 7, 3), (3, 8, 3), (3, 8, 4), (2, 9, 4)}
# the same four Grassmannians with n counted as the dimension of the ambient space
SHIFTED_EXCEPTIONS = {(2, 6, 3), (3, 7, 3), (3, 7, 4), (2, 8, 4)}


def _sweep5():
    reps = []
    for r in (2, 3):
        reps += defect_sweep([r], range(2 * r + 1, 10), 5, seed=SEED)
    return reps


def crit_5(reps, sec):
    found = {(x.r, x.n, x.h) for x in reps if x.defect}
    in_range = {c for c in LISTED_EXCEPTIONS if c[1] >= 2 * c[0] + 1 and c[1] <= 9 and c[2] <= 5}
    unconfirmed = [(x.r, x.n, x.h) for x in reps
                   if x.defect and x.spec.N <= EXACT_RECHECK_MAX_N and x.exact_dim is None]
    return record("5 defective exceptions (listed indexing)", found == in_range and not unconfirmed,
                  f"defect > 0 on {sorted(found)}, expected {sorted(in_range)}", sec, 600)


def crit_5_shifted(reps, sec):
    found = {(x.r, x.n, x.h) for x in reps if x.defect}
    unconfirmed = [(x.r, x.n, x.h) for x in reps
                   if x.defect and x.spec.N <= EXACT_RECHECK_MAX_N and x.exact_dim is None]
    return record("5' defective exceptions (n-1 indexing)",
                  found == SHIFTED_EXCEPTIONS and not unconfirmed,
                  f"defect > 0 on {sorted(found)}, rational recheck missing on {unconfirmed}", sec, 600)


# 6 -----------------------------------------------------------------------------

def crit_6():
    def go():
        rows = {}
        for r, row in TABLE_ROWS.items():
            n = r * r + 3 * r + 1
            rows[r] = (thm_main_bound(GrassSpec(r, n)) + 1, row((n + 1) // (r + 1)))
        return rows

    rows, sec = timed(go)
    ok = all(a == b for a, b in rows.values())
    return record("6 bound table rows", ok,
                  ", ".join(f"r={r}: {a}/{b}" for r, (a, b) in sorted(rows.items())), sec, 1)


def crit_6_examples():
    (a, b), sec = timed(lambda: (thm_main_bound(GrassSpec(4, 29)) + 1,
                                 thm_main_bound(GrassSpec(8, 89)) + 1))
    return record("6' stated examples r=4 -> 37, r=8 -> 730", a == 37 and b == 730,
                  f"got {a} and {b}", sec, 1)


# 7 -----------------------------------------------------------------------------

def crit_7():
    flags, sec = timed(lambda: flagged_cells(comparison_sweep(range(4, 9))))
    ok = flags == {"a": [], "a_prime": [(4, 10)], "a_doubleprime": [(5, 11)]}
    return record("7 comparison flags", ok, f"{flags}", sec, 5)


# 8 -----------------------------------------------------------------------------

def crit_8():
    def go():
        zero, count = [], 0
        for s in range(13):
            for d in range(13):
                for k2 in range(d + 1):
                    for k1 in range(d):
                        if not (d - k2 > k1 + 1 >= 1 and s >= d - k2):
                            continue
                        count += 1
                        if bareiss_det(gessel_viennot_matrix(s, d, k2)) == 0:
                            zero.append((s, d, k1, k2))
        return count, zero

    (count, zero), sec = timed(go)
    return record("8 Gessel-Viennot determinants", not zero, f"{count} cases, zero at {zero}", sec, 10)


# 9 -----------------------------------------------------------------------------

def crit_9():
    def go():
        return [(n, m, got) for n in range(5, 10) for m in range(1, n + 1)
                if (got := tangent_developable_osc_dim(n, m, seed=SEED)) != min(m + 1, n)]

    bad, sec = timed(go)
    return record("9 tangent developable", not bad, f"mismatches {bad}", sec, 30)


# -- pytest entry points -------------------------------------------------------------------

def test_criterion_1(tmp_path):
    assert crit_1(tmp_path)


def test_criterion_2():
    assert crit_2()


def test_criterion_3():
    assert crit_3()


def test_criterion_4():
    assert crit_4()


@pytest.fixture(scope="module")
def sweep5():
    return timed(_sweep5)


def test_criterion_5(sweep5):
    assert crit_5(*sweep5)


def test_criterion_5_shifted(sweep5):
    assert crit_5_shifted(*sweep5)


def test_criterion_6():
    assert crit_6()


def test_criterion_6_examples():
    assert crit_6_examples()


def test_criterion_7():
    assert crit_7()


def test_criterion_8():
    assert crit_8()


def test_criterion_9():
    assert crit_9()


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        crit_1(tmp)
    crit_2()
    crit_3()
    crit_4()
    sweep = timed(_sweep5)
    crit_5(*sweep)
    crit_5_shifted(*sweep)
    crit_6()
    crit_6_examples()
    crit_7()
    crit_8()
    crit_9()
    print("\n".join(RESULTS))
    raise SystemExit(0 if all(line.startswith("PASS") for line in RESULTS) else 1)
