"""Realization certificates and exact first-passage orbit simulation."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from ..cubic_models import (
    CubicKind,
    CurveAut,
    MarkedPoint,
    aut_apply,
    marked_equal,
    quadratic_constraints,
)
from ..orbit_spectra import OrbitData


class Status(str, Enum):
    REALIZED = "Realized"
    TENTATIVE = "TentativeOnly"
    OBSTRUCTED = "Obstructed"


STATUS_RANK = {Status.REALIZED: 2, Status.TENTATIVE: 1, Status.OBSTRUCTED: 0}


class NoSuitableRoot(ValueError):
    """Every root of the characteristic polynomial is a root of unity."""


class ShapeViolation(ValueError):
    pass


@dataclass
class RealizationCertificate:
    kind: CubicKind
    data: OrbitData
    status: Status
    reason: str = ""
    aut: CurveAut | None = None
    plus: tuple[MarkedPoint, ...] | None = None
    minus: tuple[MarkedPoint, ...] | None = None
    orbits: tuple[tuple[MarkedPoint, ...], ...] | None = None
    notes: list[str] = field(default_factory=list)
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def realized(self) -> bool:
        return self.status == Status.REALIZED


def orbit(kind: CubicKind, g: CurveAut, start: MarkedPoint, length: int) -> tuple[MarkedPoint, ...]:
    pts = [start]
    for _ in range(length - 1):
        pts.append(aut_apply(kind, g, pts[-1]))
    return tuple(pts)


@dataclass
class Passage:
    """Outcome of the sequential first-passage simulation."""

    lengths: dict[int, int]  # minus index -> orbit length (steps + 1)
    targets: dict[int, int]  # minus index -> plus index reached
    order: list[int]  # order in which segments close
    notes: list[str]

    def orbit_data(self) -> OrbitData | None:
        if len(self.lengths) != 3:
            return None
        n = tuple(self.lengths[j] for j in range(3))
        sig = tuple(self.targets[j] + 1 for j in range(3))
        if sorted(sig) != [1, 2, 3]:
            return None
        return OrbitData(n, sig)


def first_passage(kind: CubicKind, g: CurveAut, plus, minus, cap: int) -> Passage:
    """Blow-up order simulation.

    Repeatedly pick, among the unfinished segments, the one whose forward
    orbit reaches a not-yet-used indeterminacy point soonest; that point is
    then used up, so later segments pass through it freely.  When an orbit
    point coincides with several indeterminacy points the label is kept:
    the orbit of p_j^- lands on p_j^+ if that is among them.
    """
    orbits = [[m] for m in minus]
    remaining = [0, 1, 2]
    free = {0, 1, 2}
    lengths, targets, order, notes = {}, {}, [], []

    def hit_of(j):
        k = 0
        while k < cap:
            if k == len(orbits[j]):
                orbits[j].append(aut_apply(kind, g, orbits[j][-1]))
            hits = [i for i in sorted(free) if marked_equal(kind, orbits[j][k], plus[i])]
            if hits:
                return k, hits
            k += 1
        return None

    while remaining:
        best = None
        for j in remaining:
            h = hit_of(j)
            if h is not None and (best is None or h[0] < best[1]):
                best = (j, h[0], h[1])
        if best is None:
            for j in remaining:
                notes.append(f"orbit of p_{j + 1}^- avoids the indeterminacy set for {cap} steps")
            break
        j, k, hits = best
        if len(hits) > 1:
            target = j if j in hits else hits[0]
            notes.append(
                f"orbit of p_{j + 1}^- meets coincident points {[h + 1 for h in hits]}; "
                f"infinitely-near labelling sends it to p_{target + 1}^+"
            )
        else:
            target = hits[0]
        lengths[j], targets[j] = k + 1, target
        order.append(j)
        free.discard(target)
        remaining.remove(j)
    return Passage(lengths, targets, order, notes)


def coincidence_notes(kind: CubicKind, pts, label: str) -> list[str]:
    out = []
    for a in range(3):
        for b in range(a + 1, 3):
            if marked_equal(kind, pts[a], pts[b]):
                out.append(f"{label}_{a + 1} and {label}_{b + 1} coincide (infinitely near pair)")
    return out


def certify(kind: CubicKind, data: OrbitData, g: CurveAut, plus, minus=None, params=None,
            notes=None, exceptional: str | None = None) -> RealizationCertificate:
    """Check the constraint system and simulate orbits; returns a finished certificate."""
    plus = tuple(plus)
    params = dict(params or {})
    notes = list(notes or [])
    res = quadratic_constraints(kind, g, plus)
    if not res.ok:
        bad = next((d for d in res.diagnostics if d.startswith(("condition 1", "condition 2"))), "constraints fail")
        orbits = None
        if minus is not None:
            # Follow the supplied inverse base points anyway so the report shows what they do.
            minus = tuple(minus)
            passage = first_passage(kind, g, plus, minus, 4 * max(data.n) + 8)
            found = passage.orbit_data()
            orbits = tuple(orbit(kind, g, minus[j], passage.lengths.get(j, data.n[j])) for j in range(3))
            if found is not None:
                params["simulated_data"] = str(found)
                notes.append(f"supplied inverse base points reach I(f) with orbit data {found}")
        return RealizationCertificate(kind, data, Status.OBSTRUCTED, bad, g, plus,
                                      minus if minus is not None else res.minus_points, orbits,
                                      notes + res.diagnostics, params)
    computed = res.minus_points
    if minus is not None:
        for j in range(3):
            if not marked_equal(kind, computed[j], minus[j]):
                notes.append(f"supplied p_{j + 1}^- differs from the value forced by the constraints")
    minus = computed
    notes += [d for d in res.diagnostics if "coincide" not in d]
    notes += coincidence_notes(kind, plus, "p^+") + coincidence_notes(kind, minus, "p^-")

    cap = 4 * max(data.n) + 8
    passage = first_passage(kind, g, plus, minus, cap)
    notes += passage.notes
    orbits = tuple(orbit(kind, g, minus[j], data.n[j]) for j in range(3))
    found = passage.orbit_data()
    ok = all(
        passage.lengths.get(j) == data.n[j] and passage.targets.get(j) == data.sigma[j] - 1 for j in range(3)
    )
    if found is not None:
        params["realized_data"] = str(found)
    for j in range(3):
        for i in range(3):
            if i != j and j in passage.lengths and i in passage.lengths:
                if passage.order.index(i) < passage.order.index(j) and any(
                    marked_equal(kind, p, minus[i]) for p in orbits[j][1:]
                ):
                    notes.append(f"orbit segment of p_{j + 1}^- contains that of p_{i + 1}^-; blown up afterwards")
    if exceptional:
        status, reason = Status.OBSTRUCTED, exceptional
        if ok:
            notes.append("simulation alone did not detect the exceptional shape")
    elif ok:
        status, reason = Status.REALIZED, ""
    else:
        status = Status.TENTATIVE
        reason = (f"orbits realize {found} instead" if found is not None
                  else "first passage fails: " + "; ".join(passage.notes or ["segments do not close"]))
    return RealizationCertificate(kind, data, status, reason, g, plus, minus, orbits, notes, params)


def resimulate(cert: RealizationCertificate) -> bool:
    """Independent recheck of a Realized certificate from its automorphism and base points."""
    if cert.status != Status.REALIZED:
        return False
    kind, g = cert.kind, cert.aut
    res = quadratic_constraints(kind, g, cert.plus)
    if not res.ok or not all(marked_equal(kind, a, b) for a, b in zip(res.minus_points, cert.minus)):
        return False
    for j in range(3):
        pts = orbit(kind, g, cert.minus[j], cert.data.n[j])
        if not all(marked_equal(kind, a, b) for a, b in zip(pts, cert.orbits[j])):
            return False
        if not marked_equal(kind, pts[-1], cert.plus[cert.data.sigma[j] - 1]):
            return False
    passage = first_passage(kind, g, cert.plus, cert.minus, max(cert.data.n) + 1)
    return passage.orbit_data() == cert.data
