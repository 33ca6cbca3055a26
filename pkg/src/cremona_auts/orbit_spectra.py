"""Cohomology action, characteristic polynomials and dynamical degrees for orbit data.

The Picard lattice of the blown-up surface has ordered basis
``H, E_{1,0..n1-1}, E_{2,0..n2-1}, E_{3,0..n3-1}`` with intersection form
``diag(1, -1, ..., -1)``.  ``E_{i,k}`` is the exceptional class over the
k-th point ``f^k(p_i^-)`` of the i-th orbit segment.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product

import mpmath
import numpy as np

from . import polys

SIGMA_NAMES = {
    "id": (1, 2, 3),
    "(12)": (2, 1, 3),
    "(13)": (3, 2, 1),
    "(23)": (1, 3, 2),
    "(123)": (2, 3, 1),
    "(132)": (3, 1, 2),
}
_SIGMA_LABEL = {v: k for k, v in SIGMA_NAMES.items()}
ALL_SIGMAS = tuple(SIGMA_NAMES.values())

_DATA_RE = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*:\s*(\S+)\s*$")


class OrbitDataError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class OrbitData:
    """Orbit lengths ``n`` and pairing permutation ``sigma`` (1-based images).

    ``sigma[j-1]`` is the index of the indeterminacy point reached by the
    j-th orbit segment: ``f^{n_j - 1}(p_j^-) = p_{sigma_j}^+``.
    """

    n: tuple[int, int, int]
    sigma: tuple[int, int, int] = (1, 2, 3)

    def __post_init__(self):
        n = tuple(int(k) for k in self.n)
        sigma = tuple(int(k) for k in self.sigma)
        if len(n) != 3 or any(k < 1 for k in n):
            raise OrbitDataError(f"orbit lengths must be three integers >= 1, got {self.n}")
        if sorted(sigma) != [1, 2, 3]:
            raise OrbitDataError(f"sigma must permute (1, 2, 3), got {self.sigma}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "sigma", sigma)

    @classmethod
    def parse(cls, text: str) -> "OrbitData":
        m = _DATA_RE.match(text)
        if not m:
            raise OrbitDataError(f"cannot parse orbit data {text!r}; expected 'n1,n2,n3:SIG'")
        sig = m.group(4)
        if sig not in SIGMA_NAMES:
            raise OrbitDataError(f"unknown permutation {sig!r}; use one of {', '.join(SIGMA_NAMES)}")
        return cls((int(m.group(1)), int(m.group(2)), int(m.group(3))), SIGMA_NAMES[sig])

    @property
    def sigma_label(self) -> str:
        return _SIGMA_LABEL[self.sigma]

    def __str__(self) -> str:
        return "{},{},{}:{}".format(*self.n, self.sigma_label)

    @property
    def dim(self) -> int:
        return 1 + sum(self.n)

    @property
    def order(self) -> int:
        """Group-theoretic order of sigma."""
        fixed = sum(1 for j in range(3) if self.sigma[j] == j + 1)
        return {3: 1, 1: 2, 0: 3}[fixed]

    def fixed_indices(self) -> list[int]:
        return [j + 1 for j in range(3) if self.sigma[j] == j + 1]

    def sigma_of(self, j: int) -> int:
        return self.sigma[j - 1]

    def sigma_inverse(self) -> tuple[int, int, int]:
        inv = [0, 0, 0]
        for j in range(3):
            inv[self.sigma[j] - 1] = j + 1
        return tuple(inv)

    def is_transposition(self) -> bool:
        return self.order == 2

    def is_cyclic(self) -> bool:
        return self.order == 3


def basis_index(data: OrbitData) -> dict[tuple[int, int], int]:
    """Row/column of ``E_{i,k}``; ``H`` sits at index 0."""
    idx, k = {}, 1
    for i in range(1, 4):
        for m in range(data.n[i - 1]):
            idx[(i, m)] = k
            k += 1
    return idx


def intersection_form(dim: int) -> np.ndarray:
    J = -np.eye(dim, dtype=np.int64)
    J[0, 0] = 1
    return J


@dataclass(frozen=True)
class CohomologyAction:
    data: OrbitData
    matrix: np.ndarray = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def form(self) -> np.ndarray:
        return intersection_form(self.dim)

    def is_isometry(self) -> bool:
        M, J = self.matrix, self.form
        return bool(np.array_equal(M.T @ J @ M, J))

    def determinant(self) -> int:
        return _bareiss_det(self.matrix.tolist())


def quadratic_involution(data: OrbitData) -> np.ndarray:
    idx = basis_index(data)
    N = data.dim
    Q = np.eye(N, dtype=np.int64)
    e0 = [idx[(i, 0)] for i in range(1, 4)]
    Q[:, 0] = 0
    Q[0, 0] = 2
    for r in e0:
        Q[r, 0] = -1
    for i, c in enumerate(e0):
        Q[:, c] = 0
        Q[0, c] = 1
        for j, r in enumerate(e0):
            if j != i:
                Q[r, c] = -1
    return Q


def orbit_permutation(data: OrbitData) -> np.ndarray:
    idx = basis_index(data)
    N = data.dim
    S = np.zeros((N, N), dtype=np.int64)
    S[0, 0] = 1
    for i in range(1, 4):
        ni = data.n[i - 1]
        S[idx[(i, ni - 1)], idx[(data.sigma_of(i), 0)]] = 1
        for m in range(1, ni):
            S[idx[(i, m - 1)], idx[(i, m)]] = 1
    return S


def build_action(data: OrbitData) -> CohomologyAction:
    """Matrix of the pullback S∘Q; column k is the image of basis vector k."""
    M = orbit_permutation(data) @ quadratic_involution(data)
    M.setflags(write=False)
    return CohomologyAction(data, M)


@dataclass(frozen=True)
class CharPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in polys.trim(self.coeffs))
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def reciprocal_sign(self) -> int | None:
        """The sign eps with x^N P(1/x) = eps P(x), or None if neither holds."""
        rev = tuple(reversed(self.coeffs))
        if rev == self.coeffs:
            return 1
        if rev == tuple(-c for c in self.coeffs):
            return -1
        return None

    def __call__(self, x):
        return polys.evaluate(self.coeffs, x)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    def __str__(self) -> str:
        return polys.to_str(list(self.coeffs), "λ")


def char_poly_matrix(action: CohomologyAction) -> CharPoly:
    """det(λI - M) by Faddeev–LeVerrier with exact integer division."""
    return CharPoly(tuple(_faddeev_leverrier(action.matrix)))


def _faddeev_leverrier(M: np.ndarray) -> list[int]:
    n = M.shape[0]
    # int64 is safe while entries stay far below 2**62 / (n * max|M|).
    limit = 2**62 // (n * max(1, int(np.abs(M).max())) + 1)
    A = np.asarray(M, dtype=np.int64)
    use_obj = False
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = np.zeros_like(A)
    c = 1
    for k in range(1, n + 1):
        if not use_obj and (Mk.size and int(np.abs(Mk).max()) > limit):
            use_obj = True
            A = A.astype(object)
            Mk = Mk.astype(object)
        eye = np.eye(n, dtype=object if use_obj else np.int64)
        Mk = A @ Mk + c * eye
        AMk = A @ Mk
        tr = int(np.trace(AMk))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev–LeVerrier step")
        c = -tr // k
        coeffs[n - k] = c
    return coeffs


def _bareiss_det(rows: list[list[int]]) -> int:
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def small_p(data: OrbitData) -> list[int]:
    """The auxiliary polynomial p(λ) of the closed-form characteristic polynomial."""
    p = [1, -2]
    for j in range(1, 4):
        nj = data.n[j - 1]
        if data.sigma_of(j) == j:
            term = polys.xpow(1 + nj)
        else:
            term = polys.mul(polys.xpow(nj), [1, -1])
        p = polys.add(p, term)
    return p


def char_poly_formula(data: OrbitData) -> CharPoly:
    """λ^N p(1/λ) + (-1)^{ord σ} p(λ), with ord σ the order of the permutation."""
    p = small_p(data)
    N = data.dim
    sign = -1 if data.order % 2 else 1
    P = polys.add(polys.reverse(p, N), polys.scale(p, sign))
    return CharPoly(tuple(P))


@lru_cache(maxsize=4096)
def char_poly(data: OrbitData) -> CharPoly:
    return char_poly_matrix(build_action(data))


class ToleranceNotAchieved(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpectralRadius:
    lambda1: float
    on_unit_circle: bool
    lambda1_mp: object = field(default=None, repr=False, compare=False)

    @property
    def entropy(self) -> float:
        return math.log(self.lambda1)


@lru_cache(maxsize=8192)
def salem_factor(P: CharPoly) -> tuple[int, ...]:
    """The non-cyclotomic part of P; empty tuple when every root is a root of unity.

    Roots of P off the unit circle come in a Galois-conjugate pair
    λ1, 1/λ1 whose minimal polynomial is the only non-cyclotomic irreducible
    factor, so stripping cyclotomic factors leaves exactly that factor.
    """
    rest, _ = polys.strip_cyclotomic(list(P.coeffs))
    if polys.degree(rest) <= 0:
        return ()
    if rest[-1] < 0:
        rest = [-c for c in rest]
    return tuple(rest)


def _bisect_root(q: list[int], lo, hi, dps: int, width):
    with mpmath.workdps(dps):
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        flo = polys.evaluate(q, lo)
        for _ in range(10_000):
            if hi - lo < width:
                break
            mid = (lo + hi) / 2
            fm = polys.evaluate(q, mid)
            if fm == 0:
                return mid
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        return (lo + hi) / 2


@lru_cache(maxsize=8192)
def spectral_radius(P: CharPoly, tol: float = 1e-12, delta: float = 1.0) -> SpectralRadius:
    """Largest root modulus of P via companion eigenvalues, cross-checked by bisection.

    The bisection bracket is (1, 2 + delta]: a quadratic map has degree
    growth at most 2, so λ1 <= 2.
    """
    m = salem_factor(P)
    if not m:
        return SpectralRadius(1.0, True, mpmath.mpf(1))

    eig = np.roots(list(reversed(m)))
    k = int(np.argmax(np.abs(eig)))
    from_eig = float(eig[k].real)

    q = list(m)
    hi = 2 + delta
    lo = 1
    if not (polys.evaluate(q, lo) * polys.evaluate(q, hi) < 0):
        raise ToleranceNotAchieved("no sign change of the dynamical-degree factor on (1, 2+δ]")

    for dps in (30, 60, 120):
        root = _bisect_root(q, lo, hi, dps, mpmath.mpf(10) ** -18)
        if abs(float(root) - from_eig) <= tol:
            return SpectralRadius(float(root), False, root)
        # Companion eigenvalues may be inaccurate; retry with multiprecision roots.
        with mpmath.workdps(dps):
            rts = mpmath.polyroots(list(reversed(q)), maxsteps=200, extraprec=dps)
            from_eig = float(max((r for r in rts), key=abs).real)
        if abs(float(root) - from_eig) <= tol:
            return SpectralRadius(float(root), False, root)
    raise ToleranceNotAchieved(f"root finders disagree beyond tolerance {tol}")


def all_roots(P: CharPoly) -> np.ndarray:
    """Companion eigenvalues of every distinct root of P (square-free part)."""
    sf = polys.squarefree_part(list(P.coeffs))
    if polys.degree(sf) < 1:
        return np.array([], dtype=complex)
    return np.roots(list(reversed(sf)))


class Obstruction(str, Enum):
    OLENGTH1 = "Olength1"
    TOO_FEW_BLOWUPS = "TooFewBlowups"
    UNIT_CIRCLE_ROOTS = "UnitCircleRoots"


def zero_entropy_obstructions(data: OrbitData) -> list[Obstruction]:
    found = []
    if any(data.n[j - 1] == 1 for j in data.fixed_indices()):
        found.append(Obstruction.OLENGTH1)
    if sum(data.n) <= 9:
        found.append(Obstruction.TOO_FEW_BLOWUPS)
    if spectral_radius(char_poly(data)).on_unit_circle:
        found.append(Obstruction.UNIT_CIRCLE_ROOTS)
    return found


def zero_entropy_obstruction(data: OrbitData) -> Obstruction | None:
    found = zero_entropy_obstructions(data)
    return found[0] if found else None


def has_positive_entropy(data: OrbitData) -> bool:
    return not spectral_radius(char_poly(data)).on_unit_circle


def iter_orbit_data(n_min: int, n_max: int, sigmas=ALL_SIGMAS, sorted_desc: bool = False):
    """Deterministic enumeration over a box of orbit lengths."""
    rng = range(n_min, n_max + 1)
    for n in product(rng, repeat=3):
        if sorted_desc and not (n[0] >= n[1] >= n[2]):
            continue
        for s in sigmas:
            yield OrbitData(n, s)
