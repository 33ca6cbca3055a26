"""A-priori verdicts per cubic kind, and a dispatcher to the realization engines."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..cubic_models import CubicKind
from ..orbit_spectra import OrbitData, zero_entropy_obstruction
from .certificate import RealizationCertificate, ShapeViolation, Status
from .cusp import concurrent_table, cusp_exceptional_shape, realize_concurrent_lines, realize_cusp
from .reducible import realize_conic_line, search_triangle, triangle_denominator
from .torus import realize_torus, torus_obstruction


class Verdict(str, Enum):
    ADMISSIBLE = "Admissible"
    IMPOSSIBLE = "Impossible"
    ZERO_ENTROPY = "ZeroEntropy"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: str


def triangle_exception(n) -> str | None:
    """Sorted orbit lengths n1 >= n2 >= n3 >= 2 that no map fixing the triangle realizes."""
    n1, n2, n3 = sorted(n, reverse=True)
    if n2 + n3 <= 6:
        return "n2 + n3 <= 6"
    if n3 == 2 and n1 == n2 and n1 in (5, 6):
        return f"n3 = 2 and n1 = n2 = {n1}"
    if (n1, n2, n3) == (4, 4, 4):
        return "n1 = n2 = n3 = 4"
    return None


def classify(kind, data: OrbitData) -> Classification:
    kind = CubicKind(kind)
    gate = zero_entropy_obstruction(data)
    if gate is not None:
        return Classification(Verdict.ZERO_ENTROPY, gate.value)
    if kind == CubicKind.NODE:
        return Classification(Verdict.IMPOSSIBLE, "nodal cubic: multiplier is +-1, entropy vanishes")
    if kind == CubicKind.TORUS_GENERIC:
        return Classification(Verdict.IMPOSSIBLE, "generic torus: multiplier is +-1, entropy vanishes")
    if kind.is_torus:
        return Classification(Verdict.ADMISSIBLE, "finite lattice search decides")
    if kind == CubicKind.CUSP:
        shape = cusp_exceptional_shape(data)
        if shape:
            return Classification(Verdict.IMPOSSIBLE, shape)
        return Classification(Verdict.ADMISSIBLE, "cusp: realized for every root off the unit circle")
    if kind == CubicKind.CONCURRENT:
        ok, why = concurrent_table(data)
        return Classification(Verdict.ADMISSIBLE if ok else Verdict.IMPOSSIBLE, why)
    if kind == CubicKind.TRIANGLE:
        if data.sigma != (1, 2, 3):
            return Classification(Verdict.IMPOSSIBLE, "triangle: sigma must be the identity")
        if triangle_denominator(data.n) == 0:
            return Classification(Verdict.IMPOSSIBLE, "triangle: n1 n2 n3 = n1 n2 + n2 n3 + n3 n1")
        exc = triangle_exception(data.n)
        if exc:
            return Classification(Verdict.IMPOSSIBLE, f"triangle exception: {exc}")
        return Classification(Verdict.ADMISSIBLE, "triangle: sigma = id off the exception list")
    if kind == CubicKind.CONIC_SECANT:
        if data.sigma[2] != 3:
            return Classification(Verdict.IMPOSSIBLE, "conic+line: sigma must fix the line index 3")
        if data.sigma == (1, 2, 3) and data.n[0] != data.n[1]:
            return Classification(Verdict.IMPOSSIBLE, "conic+line: sigma = id needs n1 = n2")
        return Classification(Verdict.ADMISSIBLE, "conic+line: shape allows a realization")
    return Classification(Verdict.UNCLASSIFIED, "conic+tangent line: no realization theorem available")


def realize(kind, data: OrbitData, *, root_index: int = 0, bound: int = 5, search: bool = True,
            m=(1, 0, 0), allow_roots_of_unity: bool = False) -> list[RealizationCertificate]:
    """Run the engine for ``kind``; torus kinds may return several certificates."""
    kind = CubicKind(kind)
    if kind == CubicKind.CUSP:
        return [realize_cusp(data, root_index, allow_roots_of_unity)]
    if kind == CubicKind.CONCURRENT:
        return [realize_concurrent_lines(data, root_index)]
    if kind == CubicKind.TRIANGLE:
        from .reducible import realize_triangle

        return [search_triangle(data, bound) if search else realize_triangle(data, m)]
    if kind == CubicKind.CONIC_SECANT:
        return [realize_conic_line(data)]
    if kind in (CubicKind.TORUS_SQUARE, CubicKind.TORUS_HEX):
        certs = realize_torus(data, kind)
        if not certs:
            why = torus_obstruction(data, kind) or "no lattice solution passes first passage"
            return [RealizationCertificate(kind, data, Status.OBSTRUCTED, why)]
        return certs
    raise ShapeViolation(f"no realization engine for {kind.value}")
