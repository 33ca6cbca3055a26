"""Cuspidal-type cubics: the cuspidal cubic and three concurrent lines.

Both have Pic0 = C, so the multiplier can be any root ``a`` of the
characteristic polynomial that is not a root of unity.  Arithmetic is exact
in ``Q[a]``.  Points are written relative to the fixed point ``z`` of the
restriction, ``x~ = x - z``, so that the restriction acts as ``x~ -> a x~``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .. import polys
from ..cubic_models import CubicKind, CurveAut, MarkedPoint
from ..numberfield import NFElement, NumberField
from ..orbit_spectra import OrbitData, char_poly, salem_factor
from .certificate import NoSuitableRoot, RealizationCertificate, Status, certify

THIRD = Fraction(1, 3)


def multiplier_field(data: OrbitData, root_choice: int = 0, allow_roots_of_unity: bool = False) -> NumberField:
    """Q[a] for the non-cyclotomic factor of the characteristic polynomial.

    With ``allow_roots_of_unity`` and no such factor, falls back to the
    nontrivial cyclotomic factors (largest order first); the resulting map
    has zero entropy.
    """
    P = char_poly(data)
    m = salem_factor(P)
    if m:
        return NumberField(m, root_choice)
    if allow_roots_of_unity:
        _, cyc = polys.strip_cyclotomic(list(P.coeffs))
        flat = [(k, idx) for k in sorted(cyc, reverse=True) if k > 1
                for idx in range(polys.euler_phi(k))]
        if root_choice < len(flat):
            k, idx = flat[root_choice]
            return NumberField(polys.cyclotomic(k), idx)
    raise NoSuitableRoot(f"every root of the characteristic polynomial of {data} is a root of unity")


def poly_at(coeffs, a: NFElement) -> NFElement:
    acc = a.field(0)
    for c in reversed(coeffs):
        acc = acc * a + c
    return acc


def sigma_cycles(data: OrbitData) -> list[list[int]]:
    """Cycles of sigma as 0-based index lists, each starting at its smallest index."""
    seen, out = set(), []
    for start in range(3):
        if start in seen:
            continue
        cyc, j = [], start
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = data.sigma[j] - 1
        out.append(cyc)
    return out


def shifted_minus_points(data: OrbitData, a: NFElement, c) -> list[NFElement]:
    """Solve x_{sigma j} = a^{n_j} x_j + c around each cycle of sigma.

    ``x_j`` is the shifted inverse base point; ``c`` is the constant in
    ``x_j = a * (shifted p_j^+) + c``.
    """
    x = [None, None, None]
    for cyc in sigma_cycles(data):
        # Compose the affine steps x -> a^{n_j} x + c once around the cycle.
        lin, const = a.field(1), a.field(0)
        for j in cyc:
            step = a ** data.n[j]
            lin, const = step * lin, step * const + c
        x[cyc[0]] = const / (1 - lin)
        for prev, nxt in zip(cyc, cyc[1:]):
            x[nxt] = a ** data.n[prev] * x[prev] + c
    return x


def shifted_plus_points(data: OrbitData, a: NFElement, x) -> list[NFElement]:
    """p~^+_{sigma j} = a^{n_j - 1} x_j."""
    p = [None, None, None]
    for j in range(3):
        p[data.sigma[j] - 1] = a ** (data.n[j] - 1) * x[j]
    return p


def cusp_exceptional_shape(data: OrbitData) -> str | None:
    n, s = data.n, data.sigma
    if s != (1, 2, 3) and n[0] == n[1] == n[2]:
        return "sigma is not the identity and all orbit lengths are equal"
    if data.is_transposition():
        i, j = [k for k in range(3) if s[k] != k + 1]
        if n[i] == n[j]:
            return f"sigma swaps indices {i + 1} and {j + 1} of equal orbit length"
    return None


def realize_cusp(data: OrbitData, root_choice: int = 0, allow_roots_of_unity: bool = False) -> RealizationCertificate:
    K = multiplier_field(data, root_choice, allow_roots_of_unity)
    a = K.gen
    kind = CubicKind.CUSP
    P = char_poly(data)
    notes = []
    if poly_at(P.coeffs, a):
        raise ArithmeticError("multiplier is not a root of the characteristic polynomial")
    x = shifted_minus_points(data, a, a - 1)
    p = shifted_plus_points(data, a, x)
    if sum(x, K(0)) != a - 2:
        raise ArithmeticError("inverse base points violate the sum constraint")
    b = (1 - a) / 3
    g = CurveAut(a, (0,), (b,))
    plus = tuple(MarkedPoint(0, pj + THIRD) for pj in p)
    if not salem_factor(P):
        notes.append("multiplier is a root of unity; the realization has zero entropy")
    params = {"root_index": root_choice, "modulus": list(K.modulus), "fixed_point": "1/3"}
    return certify(kind, data, g, plus, params=params, notes=notes,
                   exceptional=cusp_exceptional_shape(data))


def _perm_power(s, k, j):
    for _ in range(k):
        j = s[j]
    return j


def component_permutations(data: OrbitData) -> list[tuple[int, ...]]:
    """All s (0-based) with s^{n_j}(j) = sigma(j); preferred order id, sigma, sigma^-1, rest."""
    sig = tuple(k - 1 for k in data.sigma)
    inv = tuple(k - 1 for k in data.sigma_inverse())
    cands = [(0, 1, 2), sig, inv] + sorted(permutations(range(3)))
    out = []
    for s in cands:
        if s in out:
            continue
        if all(_perm_power(s, data.n[j], j) == sig[j] for j in range(3)):
            out.append(s)
    return out


def concurrent_table(data: OrbitData) -> tuple[bool, str]:
    """Component-compatibility table for three concurrent lines."""
    n = data.n
    if data.order == 1:
        return True, "sigma = id"
    if data.is_cyclic():
        if all(k % 3 == 1 for k in n):
            return True, "sigma cyclic, all n_j = 1 mod 3 (lines permuted like sigma)"
        if all(k % 3 == 2 for k in n):
            return True, "sigma cyclic, all n_j = 2 mod 3 (lines permuted like sigma^-1)"
        return False, "sigma cyclic but the n_j are not all 1 or all 2 mod 3"
    i, j = [k for k in range(3) if data.sigma[k] != k + 1]
    f = 3 - i - j
    if n[i] % 2 and n[j] % 2:
        return True, f"sigma transposition, n_{i + 1} and n_{j + 1} odd"
    if len({k % 3 for k in n}) == 3 and n[f] % 3 == 0:
        return True, f"sigma transposition, n_j distinct mod 3 and n_{f + 1} = 0 mod 3"
    return False, "sigma transposition, congruence conditions fail"


def printed_concurrent_table(data: OrbitData) -> bool:
    """The case table exactly as originally stated (cyclic case with 0 mod 3)."""
    n = data.n
    if data.order == 1:
        return True
    if data.is_cyclic():
        return all(k % 3 == 0 for k in n) or all(k % 3 == 2 for k in n)
    i, j = [k for k in range(3) if data.sigma[k] != k + 1]
    f = 3 - i - j
    return bool((n[i] % 2 and n[j] % 2) or (len({k % 3 for k in n}) == 3 and n[f] % 3 == 0))


def realize_concurrent_lines(data: OrbitData, root_choice: int = 0) -> RealizationCertificate:
    kind = CubicKind.CONCURRENT
    perms = component_permutations(data)
    if not perms:
        _, why = concurrent_table(data)
        return RealizationCertificate(kind, data, Status.OBSTRUCTED,
                                      f"no permutation s of the lines has s^(n_j)(j) = sigma(j): {why}",
                                      params={"root_index": root_choice})
    s = perms[0]
    K = multiplier_field(data, root_choice)
    a = K.gen
    z = 1 / (3 * (a - 1))
    x = shifted_minus_points(data, a, K(1))
    p = shifted_plus_points(data, a, x)
    if sum(x, K(0)) != 1 - 3 * z:
        raise ArithmeticError("inverse base points violate the sum constraint")
    b = K(-THIRD)
    g = CurveAut(a, s, (b, b, b))
    plus = tuple(MarkedPoint(j, p[j] + z) for j in range(3))
    params = {"root_index": root_choice, "modulus": list(K.modulus), "line_permutation": [k + 1 for k in s],
              "fixed_point": "1/(3(a-1))"}
    return certify(kind, data, g, plus, params=params)
