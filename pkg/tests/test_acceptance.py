"""Acceptance suite: one PASS/FAIL line per criterion, collected in the terminal summary.

Tolerances and runtime budgets are pinned here.  A criterion that the
implementation cannot meet fails honestly instead of being relaxed.
"""
import random
import time
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from cremona_auts.cli import cmd_charpoly, scan_row
from cremona_auts.cremona_geometry import certificate_model, fit_quadratic_map, verify_map
from cremona_auts.cubic_models import CubicKind, LatticePoint, MarkedPoint, aut_apply, cz, is_degree_d_cut, marked_equal
from cremona_auts.orbit_spectra import (
    ALL_SIGMAS,
    OrbitData,
    all_roots,
    build_action,
    char_poly,
    char_poly_formula,
    char_poly_matrix,
    iter_orbit_data,
    spectral_radius,
)
from cremona_auts.realization import Status, conic_line_preset, realize, realize_cusp, realize_torus
from cremona_auts.realization.classify import triangle_exception
from cremona_auts.realization.cusp import concurrent_table, poly_at, printed_concurrent_table
from cremona_auts.realization.reducible import triangle_denominator

from .oracles import exact_det, random_triple

D = OrbitData.parse


def closes(cert):
    d = cert.data
    return all(
        len(cert.orbits[j]) == d.n[j] and marked_equal(cert.kind, cert.orbits[j][-1], cert.plus[d.sigma[j] - 1])
        for j in range(3)
    )


def test_criterion_01_printed_polynomial(criterion):
    t = time.perf_counter()
    out = cmd_charpoly("4,4,4:(132)")
    dt = time.perf_counter() - t
    ok = (out["coeffs"] == [-1, 2, 0, 0, -3, 3, 0, 0, -3, 3, 0, 0, -2, 1]
          and abs(out["lambda1"] - 1.722) <= 1e-3 and dt < 1.0)
    assert criterion(1, ok, f"{out['polynomial']}, lambda1 = {out['lambda1']:.6f}, {dt:.3f} s")


def test_criterion_02_formula_matrix(criterion):
    t = time.perf_counter()
    count, bad = 0, []
    for d in iter_orbit_data(1, 8, ALL_SIGMAS):
        A = build_action(d)
        count += 1
        if not (A.is_isometry() and abs(A.determinant()) == 1 and char_poly_matrix(A) == char_poly_formula(d)):
            bad.append(str(d))
    dt = time.perf_counter() - t
    ok = not bad and count == 8 ** 3 * 6 and dt < 60
    assert criterion(2, ok, f"{count} cases (8^3 lengths x 6 permutations), {len(bad)} mismatches, {dt:.1f} s")


def test_criterion_03_fixed_length_one(criterion):
    worst, count = 0.0, 0
    for d in iter_orbit_data(1, 8, ALL_SIGMAS):
        if not any(d.n[j - 1] == 1 for j in d.fixed_indices()):
            continue
        count += 1
        r = all_roots(char_poly(d))
        worst = max(worst, float(np.max(np.abs(np.abs(r) - 1))))
    ok = worst < 1e-9
    assert criterion(3, ok, f"{count} cases, max | |root| - 1 | = {worst:.2e}")


def test_criterion_04_square_torus(criterion):
    t = time.perf_counter()
    d = D("4,4,4:(132)")
    want_plus = [LatticePoint(0, Fraction(k, 9)) for k in (1, 4, 7)]
    want_minus = [LatticePoint(Fraction(k, 9)) for k in (7, 4, 1)]
    hits = [c for c in realize_torus(d, CubicKind.TORUS_SQUARE)
            if c.aut.b[0] == LatticePoint(Fraction(5, 9)) and [p.value for p in c.plus] == want_plus]
    found = len(hits) == 1 and str(hits[0].aut.a) == "1w" and [p.value for p in hits[0].minus] == want_minus
    closed = False
    if found:
        c = hits[0]
        closed = all(
            aut_apply(c.kind, c.aut, aut_apply(c.kind, c.aut, aut_apply(c.kind, c.aut, c.minus[j]))) == c.plus[d.sigma[j] - 1]
            for j in range(3)
        ) and d.sigma == (3, 1, 2)
    empty = realize_torus(D("4,4,4:id"), CubicKind.TORUS_SQUARE) == []
    (ident,) = realize(CubicKind.TORUS_SQUARE, D("4,4,4:id"))
    dt = time.perf_counter() - t
    ok = found and closed and empty and "3b = 0" in ident.reason and dt < 10
    assert criterion(4, ok, f"certificate found={found}, closure={closed}, identity empty={empty} "
                            f"({ident.reason}), {dt:.2f} s")


def test_criterion_05_triangle_classification(criterion):
    t = time.perf_counter()
    wrong = []
    cases = 0
    for d in iter_orbit_data(2, 8, [(1, 2, 3)], sorted_desc=True):
        cases += 1
        expect = triangle_exception(d.n) is None and triangle_denominator(d.n) != 0
        got = scan_row(CubicKind.TRIANGLE, d, bound=5).verdict == Status.REALIZED.value
        if got != expect:
            wrong.append(f"{d.n[0]},{d.n[1]},{d.n[2]}")
    dt = time.perf_counter() - t
    ok = not wrong and dt < 60
    assert criterion(5, ok, f"{cases} cases, mismatches {wrong or 'none'} "
                            f"(no m in [-5,5]^3 gives noncollinear, first-passage base points), {dt:.1f} s")


@pytest.fixture(scope="module")
def concurrent_scan():
    rows = []
    for d in iter_orbit_data(1, 9, ALL_SIGMAS):
        if spectral_radius(char_poly(d)).lambda1 <= 1 + 1e-9:
            continue
        rows.append((d, scan_row(CubicKind.CONCURRENT, d).verdict))
    return rows


# Congruence-compatible data whose orbits meet the base points too early.
EARLY_COINCIDENCE = sorted(
    f"{a},{b},{c}:{s}" for a, b, c in [(1, 7, 7), (7, 1, 7), (7, 7, 1), (2, 2, 8), (2, 8, 2), (8, 2, 2)]
    for s in ("(123)", "(132)")
)


def test_criterion_06_concurrent_lines(criterion, concurrent_scan):
    wrong = [str(d) for d, v in concurrent_scan if (v == Status.REALIZED.value) != printed_concurrent_table(d)]
    ok = not wrong
    assert criterion(6, ok, f"{len(concurrent_scan)} cases with lambda1 > 1, {len(wrong)} disagree with the "
                            f"table as printed (cyclic case stated as all n_j = 0 or 2 mod 3), e.g. {wrong[:3]}")


def test_concurrent_lines_against_corrected_table(concurrent_scan):
    # With the cyclic case read as all n_j = 1 or 2 mod 3, only early coincidences remain.
    wrong = sorted(str(d) for d, v in concurrent_scan if (v == Status.REALIZED.value) != concurrent_table(d)[0])
    assert wrong == EARLY_COINCIDENCE
    assert all(v == Status.TENTATIVE.value for d, v in concurrent_scan if str(d) in EARLY_COINCIDENCE)


def test_criterion_07_cusp_exactness(criterion):
    t = time.perf_counter()
    parts = []
    ok = True
    for text, opt_in in [("5,5,5:id", False), ("1,1,8:(123)", False), ("2,3,4:id", True)]:
        d = D(text)
        cert = realize_cusp(d, allow_roots_of_unity=opt_in)
        good = cert.realized and poly_at(char_poly(d).coeffs, cert.aut.a) == 0 and closes(cert)
        ok &= good
        parts.append(f"{text} {'ok' if good else 'bad'}")
    swap = realize_cusp(D("5,5,5:(12)"))
    ok &= swap.status == Status.OBSTRUCTED
    parts.append(f"5,5,5:(12) {swap.status.value}")
    dt = time.perf_counter() - t
    ok &= dt < 10
    assert criterion(7, ok, f"{', '.join(parts)}; 2,3,4:id uses the root-of-unity opt-in, {dt:.2f} s")


def test_criterion_08_plane_map(criterion):
    t = time.perf_counter()
    cert = realize_cusp(D("1,1,8:(123)"))
    model = certificate_model(cert)
    rep = verify_map(fit_quadratic_map(model), model, tol=1e-8, lines=5, escalate=None)
    dt = time.perf_counter() - t
    worst = max([rep.base_point_residual, rep.curve_invariance_residual, *rep.exceptional_residuals,
                 *rep.orbit_residuals])
    ok = rep.passed and rep.precision == "double" and worst < 1e-8 and rep.degree_residual < 1e-8 and dt < 10
    assert criterion(8, ok, f"max residual {worst:.2e}, degree check {rep.degree_residual:.2e}, "
                            f"{rep.precision}, {dt:.2f} s")


def test_criterion_09_collinearity(criterion):
    rng = random.Random(2024)
    counts = {}
    ok = True
    for kind in (CubicKind.CUSP, CubicKind.TRIANGLE, CubicKind.CONCURRENT, CubicKind.CONIC_SECANT):
        agree = cut = 0
        for _ in range(1000):
            pts = random_triple(kind, rng)
            c = is_degree_d_cut(kind, pts, 1)
            agree += c == (exact_det(kind, pts) == 0)
            cut += c
        counts[kind.value] = f"{agree}/1000 ({cut} cut)"
        ok &= agree == 1000
    assert criterion(9, ok, ", ".join(f"{k} {v}" for k, v in counts.items()))


def test_criterion_10_conic_line_presets(criterion):
    a = conic_line_preset("conicline-A")
    pts = [p for o in a.orbits for p in o]
    distinct = len(pts) == 14 and all(not marked_equal(a.kind, p, q) for p, q in combinations(pts, 2))
    a_ok = a.realized and distinct and closes(a)

    b = conic_line_preset("conicline-B")
    line = b.orbits[2]
    line_ok = (len(line) == 7 and line[-1] == MarkedPoint(0, cz(Fraction(5, 13)))
               and marked_equal(b.kind, line[-1], b.plus[2]))
    reported = b.status != Status.REALIZED and any("recorded labels 3,4,7:(12)" in n for n in b.notes)
    ok = a_ok and line_ok and reported
    assert criterion(10, ok, f"A: 14 distinct={distinct}, closes={closes(a)}; B: line orbit ends at 5/13={line_ok}, "
                             f"conic labels simulate as {b.params.get('simulated_data')} and are reported")
