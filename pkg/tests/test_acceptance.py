"""Acceptance criteria 1-10.  Each test writes one PASS/FAIL line to the terminal.

Tolerances: every comparison is exact rational equality.  Time limits are
1 s (T matrices), 10 s (frame brackets), 60 s (heat-operator algebra),
60 s (Cole-Hopf tables) and 30 s (sigma series at W = 10), measured from
cold caches.
"""
import importlib
import time

import pytest

from heatops import tables
from heatops.cli import clear_caches
from heatops.frame import (T_rows, build_T, check_isomorphism, heat_family, jacobi_report,
                           printed_T, sufficiency_report, verify_frame_relations)
from heatops.jets import (PLUS, build_cole_hopf_derived, closure_check, cole_hopf_suite,
                          jet_bracket_report, printed_cole_hopf)
from heatops.poly import parse_poly
from heatops.sigma import kernel_basis, residual
from properties import CATEGORIES, COUNTS, FAILURES, MEMBERS

pytestmark = pytest.mark.acceptance

MIN_CASES = 1000


def verdict(announce, n, ok, text):
    announce(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {text}")
    assert ok, text


def test_criterion_01_T_matrices(announce):
    t0 = time.perf_counter()
    entries = mismatched = 0
    for g in (1, 2, 3):
        for rb, rp in zip(T_rows(build_T(g), g), printed_T(g)):
            for a, b in zip(rb, rp):
                entries += 1
                mismatched += a != b
    dt = time.perf_counter() - t0
    ok = entries == 4 + 16 + 36 and not mismatched and dt < 1
    verdict(announce, 1, ok, f"T-matrix reproduction: {entries - mismatched}/{entries} entries "
            f"exact, {dt:.2f} s (limit 1 s)")


def test_criterion_02_frame_commutators(announce):
    clear_caches()
    t0 = time.perf_counter()
    checks = []
    for g in (2, 3):
        rep = verify_frame_relations(g, jacobi=False)
        checks += [c for c in rep.checks if "structure matrix" in c.locus]
    dt = time.perf_counter() - t0
    per_frame = {2: 3, 3: 10}
    want = 2 * sum(per_frame.values())
    ok = (len(checks) == want and all(c.ok for c in checks)
          and all(len(tables.BRACKET_ROWS[g]) == n for g, n in per_frame.items()) and dt < 10)
    verdict(announce, 2, ok, f"frame commutators: {sum(c.ok for c in checks)}/{want} brackets "
            f"(L and Q frames, g=2: 3, g=3: 10) decompose uniquely onto the printed "
            f"structure matrices, {dt:.1f} s (limit 10 s)")


def test_criterion_03_heat_operator_algebra(announce):
    clear_caches()
    t0 = time.perf_counter()
    coord = brackets = jac = bad = 0
    for g in (1, 2, 3):
        rep = verify_frame_relations(g, heat_family(g), jacobi=False)
        for c in rep.checks:
            if c.locus.startswith("coordinate action"):
                coord += 1
            elif c.relation.startswith("[Q"):
                brackets += 1
            else:
                continue
            bad += not c.ok
        jr = jacobi_report(g)
        jac += len(jr.checks)
        bad += len(jr.failures())
    dt = time.perf_counter() - t0
    want_coord = sum(2 * g * 2 * g for g in (1, 2, 3))
    want_jac = sum(2 * n * (n - 1) * (n - 2) // 6 for n in (2, 4, 6))
    ok = not bad and coord == want_coord and jac == want_jac and dt < 60
    verdict(announce, 3, ok, f"heat-operator algebra: {coord} coordinate relations, {brackets} "
            f"Q-brackets, {jac} Jacobi triples, {bad} failing, {dt:.1f} s (limit 60 s)")


def test_criterion_04_isomorphism(announce):
    n = bad = 0
    for g in (1, 2, 3):
        rep = check_isomorphism(g)
        n += len(rep.checks)
        bad += len(rep.failures())
    verdict(announce, 4, n > 0 and not bad,
            f"isomorphism: {n - bad}/{n} structure polynomials of L and Q frames coincide")


def test_criterion_05_sufficiency(announce):
    found = []
    bad = 0
    for g in (2, 3):
        rep = sufficiency_report(g)
        found += [f"g={g} {c.relation} = {c.data['expression']}" for c in rep.checks]
        bad += len(rep.failures())
    residuals = 0
    for g in (2, 3):
        sol = kernel_basis(g, [0, 1, 2], 10)
        for b in sol.basis:
            for k in range(3, 2 * g):
                residuals += bool(residual(g, b, k))
    ok = len(found) == 4 and not bad and not residuals
    verdict(announce, 5, ok, f"sufficiency: {len(found)} reductions verified (Q6 at g=2; "
            f"Q6, Q8, Q10 at g=3); {residuals} nonzero residuals of the Q0,Q2,Q4 kernel at W=10")


def test_criterion_06_cole_hopf(announce):
    clear_caches()
    t0 = time.perf_counter()
    compared = 0
    stray = []
    declared = []
    for g in (1, 2, 3):
        rep = cole_hopf_suite(g, PLUS, both_conventions=False)
        compared += len(rep.checks)
        for c in rep.checks:
            if c.status == "pass":
                continue
            reason = c.data.get("reason")
            if reason == "open question":
                declared.append(c.locus)
            elif reason == "printed entry not weight-homogeneous" and _single_symbol_slip(g, c):
                declared.append(c.locus + " (misprint)")
            else:
                stray.append(c.locus)
    dt = time.perf_counter() - t0
    ok = not stray and compared > 0 and dt < 60
    verdict(announce, 6, ok, f"Cole-Hopf tables: {compared} entries compared under s=+1; "
            f"mismatches only at {', '.join(declared) or 'none'}; stray {stray or 'none'}; "
            f"{dt:.2f} s (limit 60 s)")


# Printed entries whose weight is inconsistent, and the one-symbol repair that
# restores homogeneity.
MISPRINT_REPAIRS = {
    (3, "w[2,3]"): ("-8/7*l8*psi[1]", "-8/7*l4*psi[1]"),
    (3, "w[6,1]"): ("-3/7*l6*z1", "-3/7*l8*z1"),
}


def _single_symbol_slip(g, check):
    """True if repairing one lambda index in the printed entry gives the derived one."""
    name = check.locus.split()[-1]
    repair = MISPRINT_REPAIRS.get((g, name))
    if repair is None:
        return False
    k, s = (int(x) for x in name[2:-1].split(","))
    printed = printed_cole_hopf(g)[1][(k // 2, s)]
    wrong, right = (parse_poly(x, g) for x in repair)
    fixed = printed - wrong + right
    derived = build_cole_hopf_derived(g, PLUS).sources[(k // 2, s)]
    return not printed.is_homogeneous() and fixed == derived


def test_criterion_07_jet_brackets(announce):
    rows = bad = 0
    for g in (1, 2, 3):
        rep = jet_bracket_report(g, PLUS, 6)
        rows += len(rep.checks)
        bad += len(rep.failures())
    want = sum(len(tables.JET_BRACKETS[g]) for g in (1, 2, 3))
    ok = rows == want and not bad
    verdict(announce, 7, ok, f"jet bracket tables: {rows - bad}/{want} derivation identities "
            f"hold on all generators with |I| <= 6")


def test_criterion_08_closure(announce):
    n = bad = 0
    for g in (1, 2, 3):
        rep = closure_check(g, 5)
        n += len(rep.checks)
        bad += len(rep.failures())
    verdict(announce, 8, n == 2 + 4 + 6 and not bad,
            f"closure: {n - bad}/{n} operators map psi_I, 2 <= |I| <= 5, into the jet ring")


def test_criterion_09_sigma(announce):
    g1 = kernel_basis(1, [0, 1], 8)
    want = parse_poly("z1 + 1/60*l4*z1^5 + 1/210*l6*z1^7 - 1/10080*l4^2*z1^9")
    ok1 = g1.dimension == 1 and g1.basis[0].poly() == want
    g2 = kernel_basis(2, [0, 1, 2], 0)
    ok2 = g2.dimension == 1 and g2.basis[0].poly() == parse_poly("z3 - 1/3*z1^3")
    clear_caches()
    t0 = time.perf_counter()
    for g in (1, 2, 3):
        kernel_basis(g, range(min(3, 2 * g)), 10)
    dt = time.perf_counter() - t0
    ok = ok1 and ok2 and dt < 30
    verdict(announce, 9, ok, f"sigma series: g=1 W=8 series exact: {ok1}; g=2 lambda-free "
            f"kernel = <z3 - z1^3/3>: {ok2}; g=1,2,3 at W=10 in {dt:.2f} s (limit 30 s)")


def _run_property_modules():
    for mod in ("test_poly", "test_operators", "test_jets"):
        m = importlib.import_module(mod)
        for name in dir(m):
            fn = getattr(m, name)
            if name.startswith("test_") and hasattr(fn, "hypothesis"):
                fn()


def test_criterion_10_property_suites(announce):
    if not all(COUNTS[c] for c in CATEGORIES):
        _run_property_modules()
    lines = []
    ok = True
    for cat in CATEGORIES:
        counts = COUNTS[cat]
        low = min((counts.get(k, 0) for k in MEMBERS[cat]), default=0)
        failed = sum(FAILURES[cat].values())
        ok &= bool(MEMBERS[cat]) and low >= MIN_CASES and not failed
        lines.append(f"{cat}: {len(MEMBERS[cat])} suites, min {low} cases, {failed} failing")
    verdict(announce, 10, ok, "property suites (zero failures, >= 1000 cases each): "
            + "; ".join(lines))
