"""Command-line front end: ``cremona-auts {charpoly,realize,scan,verify-map,export}``.

Exit codes: 0 success or realized, 2 obstructed/impossible or bad input,
1 internal inconsistency (polynomial mismatch, failed map verification).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import serialize
from .cremona_geometry import (
    InfinitelyNear,
    NearDegenerate,
    NoNullspace,
    RankDeficient,
    UnsupportedKind,
    certificate_model,
    fit_quadratic_map,
    verify_map,
)
from .cubic_models import CubicKind, LatticePoint
from .orbit_spectra import (
    ALL_SIGMAS,
    SIGMA_NAMES,
    OrbitData,
    OrbitDataError,
    build_action,
    char_poly_formula,
    char_poly_matrix,
    iter_orbit_data,
    spectral_radius,
    zero_entropy_obstructions,
)
from .realization import (
    NoSuitableRoot,
    RealizationCertificate,
    ShapeViolation,
    Status,
    classify,
    conic_line_preset,
    realize,
    realize_torus,
)
from .realization.classify import Verdict

EXIT_OK, EXIT_INTERNAL, EXIT_NEGATIVE = 0, 1, 2
CSV_HEADER = ["kind", "data", "lambda1", "entropy", "verdict", "reason"]


class InternalMismatch(RuntimeError):
    pass


def cmd_charpoly(data: str) -> dict:
    d = OrbitData.parse(data)
    P = char_poly_matrix(build_action(d))
    if char_poly_formula(d).coeffs != P.coeffs:
        raise InternalMismatch(f"closed form and matrix characteristic polynomials differ for {d}")
    sr = spectral_radius(P)
    return {
        "data": str(d),
        "coeffs": list(P.coeffs),
        "polynomial": str(P),
        "lambda1": serialize.fnum(sr.lambda1),
        "entropy": serialize.fnum(sr.entropy),
        "reciprocal_sign": P.reciprocal_sign(),
        "obstructions": [o.value for o in zero_entropy_obstructions(d)],
    }


# ---- realize ------------------------------------------------------------

def _square_444() -> RealizationCertificate:
    d = OrbitData.parse("4,4,4:(132)")
    want = (LatticePoint(0, Fraction(1, 9)), LatticePoint(0, Fraction(4, 9)), LatticePoint(0, Fraction(7, 9)))
    for cert in realize_torus(d, CubicKind.TORUS_SQUARE):
        if cert.aut.b[0] == LatticePoint(Fraction(5, 9)) and tuple(p.value for p in cert.plus) == want:
            return cert
    raise InternalMismatch("square torus search lost the b = 5/9 certificate")


PRESETS = {
    "paper:square-444": _square_444,
    "paper:conicline-A": lambda: conic_line_preset("conicline-A"),
    "paper:conicline-B": lambda: conic_line_preset("conicline-B"),
}


def cmd_realize(kind: str | None, data: str, *, search: bool = False, bound: int = 5, root_index: int = 0,
                m=(1, 0, 0), allow_roots_of_unity: bool = False) -> list[RealizationCertificate]:
    if data in PRESETS:
        cert = PRESETS[data]()
        if kind and CubicKind(kind) != cert.kind:
            raise ShapeViolation(f"preset {data} is a {cert.kind.value} certificate")
        return [cert]
    if not kind:
        raise ShapeViolation("--kind is required unless a named preset is given")
    return realize(CubicKind(kind), OrbitData.parse(data), root_index=root_index, bound=bound,
                   search=search or CubicKind(kind) != CubicKind.TRIANGLE or m is None, m=m or (1, 0, 0),
                   allow_roots_of_unity=allow_roots_of_unity)


# ---- scan ---------------------------------------------------------------

@dataclass
class ScanRow:
    kind: str
    data: str
    lambda1: float
    entropy: float
    verdict: str
    reason: str

    def as_list(self):
        return [self.kind, self.data, f"{self.lambda1:.15g}", f"{self.entropy:.15g}", self.verdict, self.reason]


def scan_row(kind: CubicKind, d: OrbitData, bound: int = 5) -> ScanRow:
    from .orbit_spectra import char_poly

    sr = spectral_radius(char_poly(d))
    cls = classify(kind, d)
    if cls.verdict in (Verdict.ZERO_ENTROPY,) or kind in (CubicKind.NODE, CubicKind.TORUS_GENERIC):
        return ScanRow(kind.value, str(d), sr.lambda1, sr.entropy, cls.verdict.value, cls.reason)
    if cls.verdict == Verdict.UNCLASSIFIED:
        return ScanRow(kind.value, str(d), sr.lambda1, sr.entropy, cls.verdict.value, cls.reason)
    try:
        certs = realize(kind, d, bound=bound, search=True)
    except (ShapeViolation, NoSuitableRoot) as exc:
        return ScanRow(kind.value, str(d), sr.lambda1, sr.entropy, Status.OBSTRUCTED.value, str(exc))
    best = max(certs, key=lambda c: {Status.REALIZED: 2, Status.TENTATIVE: 1}.get(c.status, 0))
    return ScanRow(kind.value, str(d), sr.lambda1, sr.entropy, best.status.value, best.reason)


def cmd_scan(kind: str, n_min: int, n_max: int, sigmas=ALL_SIGMAS, sorted_desc: bool = False,
             bound: int = 5) -> list[ScanRow]:
    kind = CubicKind(kind)
    return [scan_row(kind, d, bound) for d in iter_orbit_data(n_min, n_max, sigmas, sorted_desc)]


def rows_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_list())
    return buf.getvalue()


def rows_json(rows) -> str:
    return serialize.dumps([
        {"kind": r.kind, "data": r.data, "lambda1": serialize.fnum(r.lambda1),
         "entropy": serialize.fnum(r.entropy), "verdict": r.verdict, "reason": r.reason}
        for r in rows
    ])


# ---- maps ---------------------------------------------------------------

def _load_cert(path: str) -> RealizationCertificate:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if isinstance(obj, list):
        obj = obj[0]
    return serialize.load_certificate(obj)


def _cert_for_map(args) -> RealizationCertificate:
    if args.certificate:
        return _load_cert(args.certificate)
    certs = cmd_realize(args.kind, args.data, root_index=args.root_index)
    return certs[0]


def cmd_verify_map(cert: RealizationCertificate, samples: int = 16, tol: float = 1e-8, precision: int = 40,
                   fmap=None) -> dict:
    if not CubicKind(cert.kind).embeddable:
        raise UnsupportedKind(
            f"{CubicKind(cert.kind).value}: no plane model; the certificate is exact in Pic0 coordinates only"
        )
    if cert.status != Status.REALIZED:
        raise ShapeViolation(f"certificate status is {cert.status.value}: {cert.reason}")
    model = certificate_model(cert)
    escalate = precision or None
    if fmap is None:
        fmap = fit_quadratic_map(model, samples=samples)
    else:
        escalate = None  # a supplied map is judged as given, never refitted
    report = verify_map(fmap, model, tol=tol, escalate=escalate)
    out = {"kind": CubicKind(cert.kind).value, "data": str(cert.data)}
    out.update(_plain_report(report.to_dict()))
    out["map"] = serialize.map_json(fmap)
    return out


def _plain_report(d: dict) -> dict:
    def conv(v):
        if isinstance(v, float):
            return serialize.fnum(v)
        if isinstance(v, list):
            return [conv(x) for x in v]
        return v
    return {k: conv(v) for k, v in d.items()}


# ---- argparse -----------------------------------------------------------

def _parse_sigmas(text: str):
    if text in ("all", "*"):
        return ALL_SIGMAS
    out = []
    for name in text.split(","):
        name = name.strip()
        if name not in SIGMA_NAMES:
            raise OrbitDataError(f"unknown permutation {name!r}")
        out.append(SIGMA_NAMES[name])
    return tuple(out)


def _parse_m(text: str | None):
    if text is None:
        return None
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError("--m needs three integers")
    return tuple(parts)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cremona-auts", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, data_pos=True):
        if data_pos:
            sp.add_argument("positional", nargs="*", help="[KIND] DATA, e.g. cusp 5,5,5:id")
        sp.add_argument("--kind")
        sp.add_argument("--data")
        sp.add_argument("--out", help="write output to FILE instead of stdout")

    sp = sub.add_parser("charpoly", help="characteristic polynomial, dynamical degree and obstructions")
    common(sp)

    sp = sub.add_parser("realize", help="run a realization engine or a named preset")
    common(sp)
    sp.add_argument("--search", action="store_true", help="search parameters (triangle m-box)")
    sp.add_argument("--bound", type=int, default=5)
    sp.add_argument("--root-index", type=int, default=0)
    sp.add_argument("--m", help="triangle integer shifts m1,m2,m3 (without --search)")
    sp.add_argument("--all", action="store_true", help="emit every certificate (torus kinds)")
    sp.add_argument("--allow-roots-of-unity", action="store_true",
                    help="cusp: accept a root-of-unity multiplier when no other root exists")

    sp = sub.add_parser("scan", help="classify and realize every orbit data in a box")
    common(sp, data_pos=False)
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--sigmas", default="all", help="comma list of id,(12),(13),(23),(123),(132) or 'all'")
    sp.add_argument("--sorted", action="store_true", help="only n1 >= n2 >= n3")
    sp.add_argument("--bound", type=int, default=5)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    for name, helptext in (("verify-map", "fit and verify the plane quadratic map of a certificate"),
                           ("export", "fit and emit the 18 coefficients of the plane quadratic map")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("certificate", nargs="?", help="certificate JSON written by realize")
        common(sp, data_pos=False)
        sp.add_argument("--root-index", type=int, default=0)
        sp.add_argument("--samples", type=int, default=16)
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--precision", type=int, default=40, help="mpmath digits for escalation (0 disables)")
        if name == "verify-map":
            sp.add_argument("--map", help="verify this coefficient JSON instead of refitting")
    return p


def _kind_data(args):
    kind, data = args.kind, args.data
    pos = list(getattr(args, "positional", []) or [])
    if len(pos) == 2:
        kind, data = pos
    elif len(pos) == 1:
        data = pos[0]
    elif len(pos) > 2:
        raise OrbitDataError("expected at most KIND and DATA")
    if data is None:
        raise OrbitDataError("no orbit data given")
    return kind, data


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except InternalMismatch as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OrbitDataError, ShapeViolation, NoSuitableRoot, UnsupportedKind, InfinitelyNear, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def _dispatch(args) -> int:
    if args.command == "charpoly":
        _, data = _kind_data(args)
        _emit(serialize.dumps(cmd_charpoly(data)), args.out)
        return EXIT_OK

    if args.command == "realize":
        kind, data = _kind_data(args)
        certs = cmd_realize(kind, data, search=args.search, bound=args.bound, root_index=args.root_index,
                            m=_parse_m(args.m), allow_roots_of_unity=args.allow_roots_of_unity)
        payload = [serialize.certificate_json(c) for c in certs] if args.all else serialize.certificate_json(certs[0])
        _emit(serialize.dumps(payload), args.out)
        return EXIT_OK if certs[0].status == Status.REALIZED else EXIT_NEGATIVE

    if args.command == "scan":
        if not args.kind:
            raise ShapeViolation("scan needs --kind")
        rows = cmd_scan(args.kind, args.n_min, args.n_max, _parse_sigmas(args.sigmas), args.sorted, args.bound)
        _emit(rows_csv(rows) if args.format == "csv" else rows_json(rows), args.out)
        return EXIT_OK

    cert = _cert_for_map(args)
    if args.command == "verify-map":
        fmap = None
        if args.map:
            with open(args.map, encoding="utf-8") as fh:
                fmap = serialize.load_map(json.load(fh))
        try:
            report = cmd_verify_map(cert, args.samples, args.tol, args.precision, fmap)
        except InfinitelyNear:
            raise
        except (RankDeficient, NoNullspace, NearDegenerate) as exc:
            raise InternalMismatch(f"map fitting failed: {exc}") from exc
        _emit(serialize.dumps(report), args.out)
        return EXIT_OK if report["passed"] else EXIT_INTERNAL

    # export
    try:
        report = cmd_verify_map(cert, args.samples, args.tol, args.precision)
    except InfinitelyNear:
        raise
    except (RankDeficient, NoNullspace, NearDegenerate) as exc:
        raise InternalMismatch(f"map fitting failed: {exc}") from exc
    out = report["map"]
    out["verified"] = report["passed"]
    _emit(serialize.dumps(out), args.out)
    return EXIT_OK if report["passed"] else EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
