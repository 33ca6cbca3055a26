"""Deterministic, lossless JSON for certificates, polynomials and maps.

Rationals are written as "p/q" strings, number-field scalars as
``{"residue": [...], "approx": "a+bi"}`` and floats with 15 significant
digits.  Keys keep insertion order, so equal inputs give identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cubic_models import CubicKind, CurveAut, CZValue, LatticePoint, LatticeScalar, MarkedPoint
from .numberfield import NFElement, NumberField
from .orbit_spectra import OrbitData
from .realization.certificate import RealizationCertificate, Status

SIG_DIGITS = 15


def fnum(x: float) -> float:
    return float(f"{float(x):.{SIG_DIGITS}g}")


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    return Fraction(s)


def complex_str(z) -> str:
    z = complex(z)
    re, im = fnum(z.real), fnum(z.imag)
    return f"{re:.{SIG_DIGITS}g}{'+' if im >= 0 else '-'}{abs(im):.{SIG_DIGITS}g}i"


def nf_json(x: NFElement) -> dict:
    return {"residue": [rational(c) for c in x.residue], "approx": complex_str(x.approx(40))}


def value_json(v) -> Any:
    """Pic0 value as a list of "p/q" entries, or a number-field residue object."""
    if isinstance(v, NFElement):
        return nf_json(v)
    if isinstance(v, CZValue):
        return [rational(v.re), rational(v.im)]
    if isinstance(v, LatticePoint):
        return [rational(v.u), rational(v.v)]
    if isinstance(v, (int, Fraction)):
        return [rational(v)]
    raise TypeError(f"cannot serialize Pic0 value {v!r}")


def marked_json(p: MarkedPoint) -> dict:
    return {"comp": p.comp, "val": value_json(p.value)}


def multiplier_json(a) -> Any:
    if isinstance(a, NFElement):
        return nf_json(a)
    if isinstance(a, LatticeScalar):
        return {"lattice": [a.x, a.y], "w_relation": [a.c0, a.c1], "text": str(a)}
    if isinstance(a, (int, Fraction)):
        return rational(a)
    raise TypeError(f"cannot serialize multiplier {a!r}")


def _plain(x):
    if isinstance(x, Fraction):
        return rational(x)
    if isinstance(x, float):
        return fnum(x)
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


def _field_of(cert: RealizationCertificate) -> NumberField | None:
    vals = []
    if cert.aut is not None:
        vals.append(cert.aut.a)
        vals.extend(cert.aut.b)
    for pts in (cert.plus or ()), (cert.minus or ()):
        vals.extend(p.value for p in pts)
    for v in vals:
        if isinstance(v, NFElement):
            return v.field
    return None


def certificate_json(cert: RealizationCertificate) -> dict:
    field = _field_of(cert)
    out: dict[str, Any] = {
        "kind": CubicKind(cert.kind).value,
        "data": str(cert.data),
        "status": Status(cert.status).value,
        "reason": cert.reason,
    }
    out["field"] = None if field is None else {"modulus": list(field.modulus), "root_index": field.root_index}
    if cert.aut is not None:
        out["multiplier"] = multiplier_json(cert.aut.a)
        out["tau"] = list(cert.aut.tau)
        out["translations"] = [value_json(b) for b in cert.aut.b]
    else:
        out["multiplier"] = None
        out["tau"] = None
        out["translations"] = None
    out["plus"] = None if cert.plus is None else [marked_json(p) for p in cert.plus]
    out["minus"] = None if cert.minus is None else [marked_json(p) for p in cert.minus]
    out["orbits"] = None if cert.orbits is None else [[marked_json(p) for p in o] for o in cert.orbits]
    out["notes"] = list(cert.notes)
    out["params"] = _plain(cert.params)
    return out


# ---- loading ------------------------------------------------------------

def _load_value(kind: CubicKind, v, field: NumberField | None):
    if isinstance(v, dict):
        if field is None:
            raise ValueError("number-field value without a field description")
        return NFElement(field, [Fraction(c) for c in v["residue"]])
    if kind.rank == 2:
        return LatticePoint(Fraction(v[0]), Fraction(v[1]))
    if kind.rank == 1:
        return CZValue(Fraction(v[0]), Fraction(v[1]) if len(v) > 1 else Fraction(0))
    q = Fraction(v[0])
    return field(q) if field is not None else q


def _load_multiplier(kind: CubicKind, a, field):
    if isinstance(a, dict) and "residue" in a:
        return NFElement(field, [Fraction(c) for c in a["residue"]])
    if isinstance(a, dict) and "lattice" in a:
        return LatticeScalar(a["lattice"][0], a["lattice"][1], a["w_relation"][0], a["w_relation"][1])
    q = Fraction(a)
    if kind.rank == 1:
        return int(q)
    return field(q) if field is not None else q


def load_certificate(obj: dict) -> RealizationCertificate:
    kind = CubicKind(obj["kind"])
    f = obj.get("field")
    field = NumberField(f["modulus"], f["root_index"]) if f else None

    def marks(lst):
        return None if lst is None else tuple(MarkedPoint(p["comp"], _load_value(kind, p["val"], field)) for p in lst)

    aut = None
    if obj.get("multiplier") is not None:
        aut = CurveAut(_load_multiplier(kind, obj["multiplier"], field), tuple(obj["tau"]),
                       tuple(_load_value(kind, b, field) for b in obj["translations"]))
    orbits = None if obj.get("orbits") is None else tuple(marks(o) for o in obj["orbits"])
    return RealizationCertificate(kind, OrbitData.parse(obj["data"]), Status(obj["status"]), obj.get("reason", ""),
                                  aut, marks(obj.get("plus")), marks(obj.get("minus")), orbits,
                                  list(obj.get("notes", [])), dict(obj.get("params", {})))


def map_json(fmap) -> dict:
    return {
        "kind": None if fmap.kind is None else CubicKind(fmap.kind).value,
        "provenance": fmap.provenance,
        "monomials": ["x^2", "xy", "xz", "y^2", "yz", "z^2"],
        "normalization": fmap.normalization,
        "coefficients": [[[fnum(complex(c).real), fnum(complex(c).imag)] for c in row] for row in fmap.coeffs],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_map(obj: dict):
    from .cremona_geometry import QuadraticMap

    coeffs = tuple(tuple(complex(re, im) for re, im in row) for row in obj["coefficients"])
    kind = CubicKind(obj["kind"]) if obj.get("kind") else None
    return QuadraticMap(coeffs, kind, obj.get("provenance", ""), obj.get("normalization", ""))
