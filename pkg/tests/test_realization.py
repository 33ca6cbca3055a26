from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona_auts.cubic_models import CubicKind, CurveAut, LatticePoint, MarkedPoint, cz, marked_equal
from cremona_auts.orbit_spectra import OrbitData, char_poly
from cremona_auts.realization import (
    NoSuitableRoot,
    ShapeViolation,
    Status,
    classify,
    conic_line_preset,
    first_passage,
    realize,
    realize_concurrent_lines,
    realize_conic_line,
    realize_cusp,
    realize_torus,
    realize_triangle,
    resimulate,
    search_triangle,
)
from cremona_auts.realization.classify import Verdict
from cremona_auts.realization.cusp import (
    component_permutations,
    multiplier_field,
    poly_at,
    shifted_minus_points,
)
from cremona_auts.realization.reducible import search_conic_line, triangle_denominator, triangle_translations
from cremona_auts.realization.torus import constraint_matrix, smith_normal_form, solve_mod_lattice

D = OrbitData.parse


def closes_exactly(cert):
    d = cert.data
    return all(
        len(cert.orbits[j]) == d.n[j] and marked_equal(cert.kind, cert.orbits[j][-1], cert.plus[d.sigma[j] - 1])
        for j in range(3)
    )


# ---- cusp ---------------------------------------------------------------

@pytest.mark.parametrize("text", ["5,5,5:id", "1,1,8:(123)", "3,4,5:(12)", "2,4,7:(132)", "6,3,4:(23)"])
def test_cusp_multiplier_is_a_root_and_orbits_close(text):
    cert = realize_cusp(D(text))
    a = cert.aut.a
    assert poly_at(char_poly(cert.data).coeffs, a) == 0
    assert closes_exactly(cert)
    assert cert.status == Status.REALIZED
    # Normalization: inverse base points, shifted by the fixed point 1/3, sum to a - 2.
    assert sum((p.value for p in cert.minus), a.field(0)) - 1 == a - 2


def test_cusp_equal_lengths_identity_has_coincident_points():
    cert = realize_cusp(D("5,5,5:id"))
    assert cert.realized
    assert cert.plus[0] == cert.plus[1] == cert.plus[2]
    assert any("coincide" in n for n in cert.notes)


def test_cusp_lehmer_orbits_distinct():
    cert = realize_cusp(D("1,1,8:(123)"))
    pts = [p for o in cert.orbits for p in o]
    assert len(pts) == 10
    assert all(not marked_equal(cert.kind, p, q) for p, q in combinations(pts, 2))
    assert cert.aut.a.approx().real > 1


def test_cusp_equal_lengths_transposition_obstructed():
    cert = realize_cusp(D("5,5,5:(12)"))
    assert cert.status == Status.OBSTRUCTED
    # Following the orbits independently lands on the identity pairing.
    assert cert.params["realized_data"] == "5,5,5:id"


def test_cusp_all_roots_of_unity():
    d = D("2,3,4:id")
    with pytest.raises(NoSuitableRoot):
        realize_cusp(d)
    cert = realize_cusp(d, allow_roots_of_unity=True)
    assert cert.aut.a.field.modulus == (1, 0, 0, -1, 0, 0, 1)  # 18th cyclotomic polynomial
    assert poly_at(char_poly(d).coeffs, cert.aut.a) == 0
    assert closes_exactly(cert)


def test_cusp_other_root_choice():
    d = D("4,4,4:(132)")
    K = multiplier_field(d, root_choice=1)
    assert abs(K.root) < 1 or abs(abs(K.root) - 1) < 1e-12
    cert = realize_cusp(d, root_choice=1)
    assert cert.params["root_index"] == 1
    assert poly_at(char_poly(d).coeffs, cert.aut.a) == 0


@pytest.mark.parametrize("text", ["3,5,6:id", "4,5,7:(12)", "3,4,6:(123)", "2,5,9:(123)"])
def test_cycle_solver_matches_printed_closed_forms(text):
    d = D(text)
    K = multiplier_field(d)
    a = K.gen
    x = shifted_minus_points(d, a, a - 1)
    n1, n2, n3 = d.n
    if d.sigma == (1, 2, 3):
        want = [(a - 1) / (1 - a ** n) for n in d.n]
    elif d.sigma == (2, 1, 3):
        want = [(a - 1) * (1 + a ** n2) / (1 - a ** (n1 + n2)),
                (a - 1) * (1 + a ** n1) / (1 - a ** (n1 + n2)),
                (a - 1) / (1 - a ** n3)]
    else:
        N = n1 + n2 + n3
        want = [(a - 1) * (1 + a ** n3 + a ** (n2 + n3)) / (1 - a ** N),
                (a - 1) * (1 + a ** n1 + a ** (n3 + n1)) / (1 - a ** N),
                (a - 1) * (1 + a ** n2 + a ** (n1 + n2)) / (1 - a ** N)]
    assert x == want


# ---- concurrent lines ---------------------------------------------------

def test_concurrent_realized_and_obstructed():
    assert realize_concurrent_lines(D("4,4,4:(123)")).realized
    assert realize_concurrent_lines(D("3,5,4:(12)")).realized
    cert = realize_concurrent_lines(D("3,3,6:(123)"))
    assert cert.status == Status.OBSTRUCTED
    assert "no permutation" in cert.reason


def test_concurrent_early_coincidence():
    # p_1^- lands on p_3^+ early, so the orbits realize other data.
    cert = realize_concurrent_lines(D("2,2,8:(123)"))
    assert cert.status == Status.TENTATIVE
    assert cert.params["realized_data"] == "1,3,8:(13)"


def test_line_permutation_condition():
    for d in [D("4,4,4:(123)"), D("3,5,4:(12)"), D("5,5,7:id")]:
        for s in component_permutations(d):
            for j in range(3):
                k = j
                for _ in range(d.n[j]):
                    k = s[k]
                assert k == d.sigma[j] - 1


# ---- triangle -----------------------------------------------------------

def triangle_oracle(n, bound=8):
    """Closed-form realizability: b not an integer and l*b_j not an integer for 1 <= l <= n_j - 1."""
    den = triangle_denominator(n)
    if den == 0:
        return None
    for m in np.ndindex(*(2 * bound + 1,) * 3):
        m = tuple(k - bound for k in m)
        bs = triangle_translations(n, m)
        b = sum(bs)
        if b.denominator == 1:
            continue
        if all((l * bj).denominator != 1 for j, bj in enumerate(bs) for l in range(1, n[j])):
            return m
    return None


def test_triangle_translations_solve_the_system():
    n, m = (7, 5, 3), (1, -2, 0)
    bs = triangle_translations(n, m)
    b = sum(bs)
    assert all(n[j] * bs[j] == b + m[j] for j in range(3))


@pytest.mark.parametrize("n", [(3, 3, 3), (6, 3, 2), (4, 4, 2)])
def test_triangle_degenerate_denominator(n):
    assert triangle_denominator(n) == 0
    assert realize_triangle(OrbitData(n)).status == Status.OBSTRUCTED


def test_triangle_examples():
    assert realize_triangle(D("7,7,2:id"), m=(1, 0, 0)).realized
    assert search_triangle(D("4,4,4:id")).status == Status.OBSTRUCTED
    cert = search_triangle(D("7,3,2:id"))
    assert cert.status == Status.OBSTRUCTED
    assert "collinear" in cert.reason
    assert any("1 * b_1 is an integer" in n for n in cert.notes)
    assert realize_triangle(D("6,6,6:(12)")).status == Status.OBSTRUCTED


def test_triangle_search_agrees_with_closed_form():
    for n1 in range(2, 7):
        for n2 in range(2, n1 + 1):
            for n3 in range(2, n2 + 1):
                n = (n1, n2, n3)
                found = search_triangle(OrbitData(n), bound=5).realized
                assert found == (triangle_oracle(n, bound=5) is not None), n


# ---- conic + line -------------------------------------------------------

def test_conic_line_preset_a():
    cert = conic_line_preset("conicline-A")
    assert cert.realized and str(cert.data) == "5,5,4:id"
    pts = [p for o in cert.orbits for p in o]
    assert len(pts) == 14
    assert all(not marked_equal(cert.kind, p, q) for p, q in combinations(pts, 2))


def test_conic_line_preset_b():
    cert = conic_line_preset("conicline-B")
    assert cert.status == Status.OBSTRUCTED
    assert [p.value for p in cert.plus] == [cz(Fraction(12, 13)), cz(Fraction(4, 13)), cz(Fraction(5, 13))]
    # The line orbit closes after six steps on 5/13.
    line = cert.orbits[2]
    assert len(line) == 7 and line[-1] == MarkedPoint(0, cz(Fraction(5, 13)))
    assert cert.params["simulated_data"] == "4,5,7:(12)"
    assert any("differs from the recorded labels 3,4,7:(12)" in n for n in cert.notes)


def test_conic_line_search():
    assert search_conic_line(D("5,5,4:id")).realized
    assert search_conic_line(D("4,5,7:(12)")).realized
    assert search_conic_line(D("5,4,4:id")).status == Status.OBSTRUCTED
    with pytest.raises(ShapeViolation):
        realize_conic_line(D("4,5,7:(13)"))


# ---- tori ---------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=4, max_size=4))
def test_smith_normal_form(rows):
    A = np.array(rows, dtype=object)
    Dm, U, V = (np.array(M, dtype=object) for M in smith_normal_form(rows))
    assert (U.dot(A).dot(V) == Dm).all()
    diag = [Dm[i, i] for i in range(4)]
    assert all(Dm[i, j] == 0 for i in range(4) for j in range(4) if i != j)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert abs(round(float(np.linalg.det(U.astype(float))))) == 1


def test_square_torus_example():
    d = D("4,4,4:(132)")
    certs = realize_torus(d, CubicKind.TORUS_SQUARE)
    want_plus = [LatticePoint(0, Fraction(k, 9)) for k in (1, 4, 7)]
    hit = [c for c in certs if c.aut.b[0] == LatticePoint(Fraction(5, 9)) and [p.value for p in c.plus] == want_plus]
    assert len(hit) == 1
    cert = hit[0]
    assert str(cert.aut.a) == "1w"
    assert [p.value for p in cert.minus] == [LatticePoint(Fraction(k, 9)) for k in (7, 4, 1)]
    assert closes_exactly(cert)
    # The intermediate orbit point is -2/9 + 5i/9 (mod the lattice).
    assert cert.orbits[0][2].value == LatticePoint(Fraction(7, 9), Fraction(5, 9))


def test_square_torus_identity_forces_3b_zero():
    d = D("4,4,4:id")
    assert realize_torus(d, CubicKind.TORUS_SQUARE) == []
    (cert,) = realize(CubicKind.TORUS_SQUARE, d)
    assert cert.status == Status.OBSTRUCTED and "3b = 0" in cert.reason


def test_hex_torus_realizes():
    certs = realize_torus(D("4,4,4:(132)"), CubicKind.TORUS_HEX)
    assert certs and all(c.realized and closes_exactly(c) for c in certs)


def test_lattice_solutions_satisfy_system():
    from cremona_auts.realization.torus import torus_multipliers

    d = D("4,4,4:(132)")
    a = torus_multipliers(CubicKind.TORUS_SQUARE)[0]
    A = constraint_matrix(d, a)
    sols, _, _ = solve_mod_lattice(A)
    for v in sols[:50]:
        r = A.dot(np.array(v, dtype=object))
        assert all(Fraction(x).denominator == 1 for x in r)


# ---- classification and first passage ------------------------------------

def test_classify():
    d = D("4,4,4:(132)")
    assert classify(CubicKind.NODE, d).verdict == Verdict.IMPOSSIBLE
    assert classify(CubicKind.TORUS_GENERIC, d).verdict == Verdict.IMPOSSIBLE
    assert classify(CubicKind.CONIC_TANGENT, d).verdict == Verdict.UNCLASSIFIED
    assert classify(CubicKind.CUSP, D("2,2,2:id")).verdict == Verdict.ZERO_ENTROPY
    assert classify(CubicKind.TRIANGLE, D("6,5,5:id")).verdict == Verdict.ADMISSIBLE
    assert classify(CubicKind.TRIANGLE, D("6,6,2:id")).verdict == Verdict.IMPOSSIBLE


def test_first_passage_keeps_labels_on_coincidence():
    kind = CubicKind.TRIANGLE
    g = CurveAut(1, (0, 1, 2), (cz(Fraction(1, 5)),) * 3)
    plus = [MarkedPoint(0, cz(Fraction(2, 5)))] * 2 + [MarkedPoint(2, cz(0))]
    minus = [MarkedPoint(0, cz(0)), MarkedPoint(0, cz(0)), MarkedPoint(2, cz(Fraction(3, 5)))]
    p = first_passage(kind, g, plus, minus, cap=20)
    assert p.targets == {0: 0, 1: 1, 2: 2}
    assert p.lengths == {0: 3, 1: 3, 2: 3}


def test_resimulate_roundtrip():
    assert resimulate(realize_cusp(D("1,1,8:(123)")))
