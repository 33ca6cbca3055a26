import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona_auts import polys
from cremona_auts.orbit_spectra import (
    ALL_SIGMAS,
    CharPoly,
    Obstruction,
    OrbitData,
    OrbitDataError,
    ToleranceNotAchieved,
    all_roots,
    build_action,
    char_poly,
    char_poly_formula,
    char_poly_matrix,
    iter_orbit_data,
    salem_factor,
    spectral_radius,
    zero_entropy_obstructions,
)

orbit_data = st.builds(
    OrbitData,
    st.tuples(*[st.integers(1, 9)] * 3),
    st.sampled_from(ALL_SIGMAS),
)


def test_parse_roundtrip():
    for text in ["4,4,4:(132)", "1,1,8:(123)", "5,5,5:id", "3,4,7:(12)", "2,9,3:(23)", "7,1,2:(13)"]:
        assert str(OrbitData.parse(text)) == text


def test_cycle_notation():
    d = OrbitData.parse("1,2,3:(123)")
    assert d.sigma == (2, 3, 1)
    assert OrbitData.parse("1,2,3:(132)").sigma == (3, 1, 2)
    assert d.order == 3 and d.is_cyclic()
    assert OrbitData.parse("1,2,3:(12)").fixed_indices() == [3]


@pytest.mark.parametrize("bad", ["4,4:(12)", "0,1,1:id", "1,2,3:(14)", "a,b,c:id", "1,2,3"])
def test_parse_rejects(bad):
    with pytest.raises(OrbitDataError):
        OrbitData.parse(bad)


def test_printed_polynomial_cyclic_444():
    P = char_poly(OrbitData.parse("4,4,4:(132)"))
    # λ^13 − 2λ^12 + 3λ^9 − 3λ^8 + 3λ^5 − 3λ^4 + 2λ − 1
    want = [-1, 2, 0, 0, -3, 3, 0, 0, -3, 3, 0, 0, -2, 1]
    assert list(P.coeffs) == want
    assert str(P) == "λ^13 - 2λ^12 + 3λ^9 - 3λ^8 + 3λ^5 - 3λ^4 + 2λ - 1"
    assert P.to_json() == {"coeffs": want}
    assert spectral_radius(P).lambda1 == pytest.approx(1.722, abs=1e-3)


def test_lehmer_family():
    # 1,1,8 cyclic carries Lehmer's polynomial as its only non-cyclotomic factor.
    P = char_poly(OrbitData.parse("1,1,8:(123)"))
    assert salem_factor(P) == (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)
    assert spectral_radius(P).lambda1 == pytest.approx(1.17628081825991750, abs=1e-14)


def test_action_is_isometry_small_case():
    A = build_action(OrbitData.parse("2,3,4:(12)"))
    assert A.matrix.shape == (10, 10)
    assert A.is_isometry()
    assert A.determinant() in (1, -1)
    # H pulls back to 2H - sum of the first exceptional classes of each segment.
    assert A.matrix[0, 0] == 2


@settings(max_examples=80, deadline=None)
@given(orbit_data)
def test_formula_matches_matrix(d):
    A = build_action(d)
    assert A.is_isometry()
    assert abs(A.determinant()) == 1
    P = char_poly_matrix(A)
    assert P == char_poly_formula(d)
    assert P.is_monic() and P.degree == d.dim
    assert P.reciprocal_sign() in (1, -1)


@settings(max_examples=60, deadline=None)
@given(orbit_data)
def test_lambda1_against_matrix_eigenvalues(d):
    A = build_action(d).matrix.astype(float)
    rho = max(abs(np.linalg.eigvals(A)))
    sr = spectral_radius(char_poly(d))
    if sr.on_unit_circle:
        # Jordan blocks at roots of unity make the float eigenvalues fuzzy.
        assert rho == pytest.approx(1.0, abs=1e-3)
    else:
        assert sr.lambda1 == pytest.approx(rho, abs=1e-9)
        assert 1 < sr.lambda1 <= 2


@settings(max_examples=60, deadline=None)
@given(orbit_data)
def test_fixed_length_one_segment_kills_entropy(d):
    fixed_ones = [j for j in d.fixed_indices() if d.n[j - 1] == 1]
    if not fixed_ones:
        return
    assert np.allclose(abs(all_roots(char_poly(d))), 1, atol=1e-9)
    assert Obstruction.OLENGTH1 in zero_entropy_obstructions(d)


def test_zero_entropy_gates():
    assert zero_entropy_obstructions(OrbitData.parse("1,5,5:id"))[0] == Obstruction.OLENGTH1
    assert zero_entropy_obstructions(OrbitData.parse("2,2,2:id"))[0] == Obstruction.TOO_FEW_BLOWUPS
    # Ten points can still leave every root on the unit circle.
    assert zero_entropy_obstructions(OrbitData.parse("2,3,5:id")) == [Obstruction.UNIT_CIRCLE_ROOTS]
    assert zero_entropy_obstructions(OrbitData.parse("4,4,4:(132)")) == []


def test_cyclotomic_stripping():
    p = polys.mul(list(polys.cyclotomic(12)), polys.mul([1, 1], [-1, -3, 0, 1]))
    rest, found = polys.strip_cyclotomic(p)
    assert rest == [-1, -3, 0, 1]
    assert found == {2: 1, 12: 1}


def test_no_sign_change_raises():
    with pytest.raises(ToleranceNotAchieved):
        spectral_radius(CharPoly((2, 0, 1)))


def test_enumeration_count():
    assert sum(1 for _ in iter_orbit_data(1, 8)) == 3072
    assert all(d.n[0] >= d.n[1] >= d.n[2] for d in iter_orbit_data(2, 5, sorted_desc=True))
