"""Reducible cubics with nodal singularities: the triangle xyz = 0 and a conic with a secant line.

Both have Pic0 = C/Z with multiplier +1, so every map fixes each
component and translates it.  Values are exact rationals mod 1 (plus an
exact imaginary part when a point must be moved off the real circle).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..cubic_models import CubicKind, CurveAut, CZValue, MarkedPoint, cz
from ..orbit_spectra import OrbitData
from .certificate import STATUS_RANK, RealizationCertificate, ShapeViolation, Status, certify


def triangle_denominator(n) -> int:
    n1, n2, n3 = n
    return n1 * n2 * n3 - n1 * n2 - n2 * n3 - n3 * n1


def triangle_translations(n, m) -> tuple[Fraction, Fraction, Fraction]:
    """Translations b_j solving n_j b_j = b + m_j with b = b_1 + b_2 + b_3."""
    n1, n2, n3 = n
    den = triangle_denominator(n)
    num = m[0] * n2 * n3 + m[1] * n3 * n1 + m[2] * n1 * n2
    return tuple(Fraction(m[j], n[j]) + Fraction(num, n[j] * den) for j in range(3))


def realize_triangle(data: OrbitData, m=(1, 0, 0)) -> RealizationCertificate:
    kind = CubicKind.TRIANGLE
    m = tuple(int(k) for k in m)
    params = {"m": list(m)}
    if data.sigma != (1, 2, 3):
        return RealizationCertificate(kind, data, Status.OBSTRUCTED,
                                      "maps fixing the triangle with positive entropy fix each line, so sigma must be id",
                                      params=params)
    den = triangle_denominator(data.n)
    if den == 0:
        return RealizationCertificate(kind, data, Status.OBSTRUCTED,
                                      "n1 n2 n3 = n1 n2 + n2 n3 + n3 n1, so the translation equations have no solution",
                                      params=params)
    bj = triangle_translations(data.n, m)
    b = sum(bj)
    g = CurveAut(1, (0, 1, 2), tuple(cz(x) for x in bj))
    plus = (MarkedPoint(0, cz(0)), MarkedPoint(1, cz(0)), MarkedPoint(2, cz(b)))
    params["translations"] = [str(x) for x in bj]
    cert = certify(kind, data, g, plus, params=params)
    if b.denominator == 1:
        cert.reason = f"sum of translations b = {b} is an integer, so the base points are collinear"
        witness = _premature_multiple(data.n, bj)
        if witness:
            cert.notes.append(witness)
    return cert


def _premature_multiple(n, bj) -> str | None:
    for j in range(3):
        for ell in range(1, n[j] - 1):
            if (ell * bj[j]).denominator == 1:
                return f"{ell} * b_{j + 1} is an integer with {ell} < n_{j + 1} - 1"
    return None


def m_box(bound: int):
    """Integer triples in [-B, B]^3 ordered by max |m_j| and then lexicographically."""
    pts = list(product(range(-bound, bound + 1), repeat=3))
    pts.sort(key=lambda m: (max(abs(k) for k in m), m))
    return pts


def search_triangle(data: OrbitData, bound: int = 5) -> RealizationCertificate:
    """First Realized certificate over the m-box, else the strongest outcome seen."""
    best = None
    for m in m_box(bound):
        cert = realize_triangle(data, m)
        if cert.status == Status.REALIZED:
            return cert
        if best is None or STATUS_RANK[cert.status] > STATUS_RANK[best.status]:
            best = cert
        if cert.reason.startswith(("maps fixing", "n1 n2 n3")):
            return cert
    best.notes.append(f"no realization found for m in [-{bound}, {bound}]^3")
    return best


@dataclass(frozen=True)
class ConicLineParams:
    """Translations on the conic and on the line, and the inverse base points.

    ``minus`` holds p_1^-, p_2^- (on the conic) and p_3^- (on the line).
    """

    conic_translation: CZValue
    line_translation: CZValue
    minus: tuple[CZValue, CZValue, CZValue]
    printed_data: OrbitData | None = None


LINE, CONIC = 0, 1

PRESETS = {
    "conicline-A": (
        OrbitData((5, 5, 4), (1, 2, 3)),
        ConicLineParams(cz(Fraction(1, 7)), cz(Fraction(3, 7)),
                        (cz(0), cz(0, 1), cz(Fraction(-5, 7), -1))),
    ),
    "conicline-B": (
        OrbitData((3, 4, 7), (2, 1, 3)),
        ConicLineParams(cz(Fraction(3, 13)), cz(Fraction(1, 13)),
                        (cz(Fraction(8, 13)), cz(0), cz(Fraction(12, 13))),
                        printed_data=OrbitData((3, 4, 7), (2, 1, 3))),
    ),
}


def _conic_line_aut(params: ConicLineParams) -> CurveAut:
    return CurveAut(1, (LINE, CONIC), (params.line_translation, params.conic_translation))


def realize_conic_line(data: OrbitData, params: ConicLineParams | None = None) -> RealizationCertificate:
    """Conic plus secant line; without params a small translation search is run."""
    kind = CubicKind.CONIC_SECANT
    if data.sigma[2] != 3:
        raise ShapeViolation("sigma must fix index 3: the line carries exactly one indeterminacy point")
    if params is None:
        return search_conic_line(data)
    g = _conic_line_aut(params)
    b, c = params.conic_translation, params.line_translation
    mn = params.minus
    plus = (MarkedPoint(CONIC, mn[0] + b + c), MarkedPoint(CONIC, mn[1] + b + c), MarkedPoint(LINE, mn[2] + 2 * b))
    minus = (MarkedPoint(CONIC, mn[0]), MarkedPoint(CONIC, mn[1]), MarkedPoint(LINE, mn[2]))
    notes = []
    if data.sigma == (1, 2, 3) and data.n[0] != data.n[1]:
        notes.append("with sigma = id the two conic orbit lengths must agree")
    cert = certify(kind, data, g, plus, minus=minus, notes=notes,
                   params={"conic_translation": str(b), "line_translation": str(c)})
    sim = cert.params.get("simulated_data") or cert.params.get("realized_data")
    if params.printed_data is not None and sim is not None and sim != str(params.printed_data):
        cert.notes.append(f"simulated orbit data {sim} differs from the recorded labels {params.printed_data}")
    return cert


def conic_line_preset(name: str) -> RealizationCertificate:
    data, params = PRESETS[name]
    return realize_conic_line(data, params)


def search_conic_line(data: OrbitData) -> RealizationCertificate:
    """Solve the translation relations for a shape-admissible data and try each solution."""
    kind = CubicKind.CONIC_SECANT
    n1, n2, n3 = data.n
    if data.sigma == (1, 2, 3):
        if n1 != n2:
            return RealizationCertificate(kind, data, Status.OBSTRUCTED,
                                          "sigma = id needs equal orbit lengths on the conic (n1 = n2)")
        # (n - 2) b = c and (n3 - 1) c = 2 b
        den = (n3 - 1) * (n1 - 2) - 2
        cands = [(Fraction(k, den), None) for k in range(1, abs(den))] if den else [(Fraction(1, 997), None)]
    elif data.sigma == (2, 1, 3):
        # 2c = (n1 + n2 - 4) b and (n3 - 1) c = 2 b
        den = (n3 - 1) * (n1 + n2 - 4) - 4
        cands = []
        for k in (range(1, abs(den)) if den else [None]):
            b = Fraction(k, den) if k is not None else Fraction(1, 997)
            for half in (0, Fraction(1, 2)):
                cands.append((b, (n1 + n2 - 4) * b / 2 + half))
    else:
        raise ShapeViolation("sigma must fix index 3")
    best = None
    for b, c in cands:
        if data.sigma == (1, 2, 3):
            c = (n1 - 2) * b
            minus = (cz(0), cz(0, 1), cz(-(2 * b + c), -1))
        else:
            if ((n3 - 1) * c - 2 * b).denominator != 1:
                continue
            p2 = (n1 - 2) * b - c
            minus = (cz(0), cz(p2), cz(-(2 * b + c) - p2))
        cert = realize_conic_line(data, ConicLineParams(cz(b), cz(c), minus))
        if cert.status == Status.REALIZED:
            return cert
        if best is None or STATUS_RANK[cert.status] > STATUS_RANK[best.status]:
            best = cert
    if best is None:
        return RealizationCertificate(kind, data, Status.OBSTRUCTED, "translation relations have no solution")
    return best
