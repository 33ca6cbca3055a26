"""Smooth cubics with extra symmetry: the square and hexagonal tori.

The multiplier has finite order, so every orbit equation is linear over
the lattice.  With unknowns ``(b, p_1^+, p_2^+, p_3^+)`` in lattice
coordinates the system reads ``A v = 0 mod Z^8`` for an integer 8x8 matrix
``A``; its solutions form a finite group (plus a torus when ``A`` is
singular), enumerated through the Smith normal form of ``A``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from ..cubic_models import CubicKind, CurveAut, LatticePoint, LatticeScalar, MarkedPoint, lattice_scalar
from ..orbit_spectra import OrbitData, zero_entropy_obstruction
from .certificate import RealizationCertificate, Status, certify

GENERIC_DENOMINATOR = 997
MAX_SOLUTIONS = 2_000_000


def smith_normal_form(A):
    """Return (D, U, V) with U A V = D diagonal and U, V unimodular (Python ints)."""
    A = [[int(x) for x in row] for row in A]
    m, n = len(A), len(A[0])
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row(M, src, dst, k):
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(M, src, dst, k):
        for row in M:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            pivots = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not pivots:
                return A, U, V
            _, pi, pj = min(pivots)
            swap_rows(A, t, pi), swap_rows(U, t, pi)
            swap_cols(A, t, pj), swap_cols(V, t, pj)
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // A[t][t]
                if q:
                    add_row(A, t, i, -q), add_row(U, t, i, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // A[t][t]
                if q:
                    add_col(A, t, j, -q), add_col(V, t, j, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(A, bad[0], t, 1), add_row(U, bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def _block(M):
    return np.array(M, dtype=object)


def constraint_matrix(data: OrbitData, a: LatticeScalar) -> np.ndarray:
    """Rows: a * sum p^+ - 3b = 0 and, for each j,
    a^{n_j} p_j^+ + (S_{n_j - 1} - 2 a^{n_j - 1}) b - p^+_{sigma j} = 0,
    with S_k = 1 + a + ... + a^{k-1}.
    """
    M = _block(a.matrix())
    I = np.eye(2, dtype=object)
    powers = [I]
    for _ in range(max(data.n) + 1):
        powers.append(M.dot(powers[-1]))
    A = np.zeros((8, 8), dtype=object)
    A[0:2, 0:2] = -3 * I
    for j in range(3):
        A[0:2, 2 + 2 * j:4 + 2 * j] = M
    for j in range(3):
        nj = data.n[j]
        r = slice(2 + 2 * j, 4 + 2 * j)
        S = sum(powers[:nj - 1], np.zeros((2, 2), dtype=object))
        A[r, 0:2] = S - 2 * powers[nj - 1]
        cj = 2 + 2 * j
        A[r, cj:cj + 2] += powers[nj]
        s = 2 + 2 * (data.sigma[j] - 1)
        A[r, s:s + 2] -= I
    return A


def solve_mod_lattice(A):
    """All v in (Q/Z)^8 with A v in Z^8; free directions get a fixed generic value."""
    D, U, V = smith_normal_form(A.tolist())
    n = len(V)
    diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
    free = [i for i, d in enumerate(diag) if d == 0]
    ranges = []
    for i, d in enumerate(diag):
        if d == 0:
            ranges.append([Fraction(i + 1, GENERIC_DENOMINATOR)])
        else:
            ranges.append([Fraction(k, abs(d)) for k in range(abs(d))])
    total = 1
    for r in ranges:
        total *= len(r)
    if total > MAX_SOLUTIONS:
        raise OverflowError(f"{total} lattice solutions exceed the enumeration cap")
    out = []
    for w in product(*ranges):
        v = [sum(V[i][k] * w[k] for k in range(n)) for i in range(n)]
        out.append(tuple(x - (x.numerator // x.denominator) for x in v))
    return out, diag, free


def torus_multipliers(kind: CubicKind) -> list[LatticeScalar]:
    if kind == CubicKind.TORUS_SQUARE:
        return [lattice_scalar(kind, 0, 1), lattice_scalar(kind, 0, -1)]
    if kind == CubicKind.TORUS_HEX:
        w = lattice_scalar(kind, 0, 1)
        return [w, w.power(5)]
    raise ValueError("torus realizations need the square or hexagonal lattice")


def realize_torus(data: OrbitData, kind: CubicKind = CubicKind.TORUS_SQUARE,
                  keep: str = "realized") -> list[RealizationCertificate]:
    """All realizations of the data on a symmetric torus, deterministic order.

    ``keep="all"`` also returns tentative solutions that fail first passage.
    """
    kind = CubicKind(kind)
    results = []
    gate = zero_entropy_obstruction(data)
    for a in torus_multipliers(kind):
        A = constraint_matrix(data, a)
        sols, diag, free = solve_mod_lattice(A)
        for v in sorted(set(sols)):
            b = LatticePoint(v[0], v[1])
            if not 3 * b:
                continue
            plus = tuple(MarkedPoint(0, LatticePoint(v[2 + 2 * j], v[3 + 2 * j])) for j in range(3))
            g = CurveAut(a, (0,), (b,))
            notes = [f"free lattice directions fixed at generic values: {len(free)}"] if free else []
            if gate is not None:
                notes.append(f"zero entropy: {gate.value}")
            cert = certify(kind, data, g, plus, params={"multiplier": str(a)}, notes=notes)
            if cert.status == Status.REALIZED or keep == "all":
                results.append(cert)
    return results


def torus_obstruction(data: OrbitData, kind: CubicKind = CubicKind.TORUS_SQUARE) -> str | None:
    """Explain an empty result: whether the lattice system forces 3b = 0."""
    reasons = []
    for a in torus_multipliers(kind):
        sols, _, _ = solve_mod_lattice(constraint_matrix(data, a))
        if all(not 3 * LatticePoint(v[0], v[1]) for v in sols):
            reasons.append(f"a = {a}: the system forces 3b = 0")
    return "; ".join(reasons) or None
