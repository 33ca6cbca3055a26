"""Group law on the regular locus of reduced plane cubics.

Every kind of cubic is modelled as ``Pic0(C) x Z/r`` where ``r`` is the
number of irreducible components.  A point of ``C_reg`` is a
:class:`MarkedPoint` carrying its component index and a value in ``Pic0``.

Value models by rank of the period lattice:

* rank 2 (smooth tori): :class:`LatticePoint`, coordinates in the lattice
  basis ``(1, w)`` reduced mod 1;
* rank 1 (nodal kinds): :class:`CZValue`, an element of ``C/Z`` with exact
  rational real and imaginary parts; ``t = exp(2 pi i s)`` recovers the
  multiplicative coordinate;
* rank 0 (cuspidal kinds): plain field elements (``Fraction``,
  number-field elements, or ``mpmath`` complex numbers).

Three regular points are cut out by a line exactly when each component
``V`` carries ``deg V`` of them and their values sum to zero.  Here ``~``
always means identification with ``Pic0``; linear equivalence of divisors
is only implicit in the charts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from .numberfield import NFElement


class CubicKind(str, Enum):
    CUSP = "cusp"
    NODE = "node"
    TRIANGLE = "triangle"
    CONCURRENT = "concurrent"
    CONIC_SECANT = "conic-secant"
    CONIC_TANGENT = "conic-tangent"
    TORUS_SQUARE = "torus-square"
    TORUS_HEX = "torus-hex"
    TORUS_GENERIC = "torus-generic"

    @property
    def degrees(self) -> tuple[int, ...]:
        if self in (CubicKind.TRIANGLE, CubicKind.CONCURRENT):
            return (1, 1, 1)
        if self in (CubicKind.CONIC_SECANT, CubicKind.CONIC_TANGENT):
            return (1, 2)  # component 0 is the line, component 1 the conic
        return (3,)

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def rank(self) -> int:
        if self.is_torus:
            return 2
        if self in (CubicKind.NODE, CubicKind.TRIANGLE, CubicKind.CONIC_SECANT):
            return 1
        return 0

    @property
    def is_torus(self) -> bool:
        return self.value.startswith("torus")

    @property
    def embeddable(self) -> bool:
        return self in (CubicKind.CUSP, CubicKind.TRIANGLE, CubicKind.CONCURRENT, CubicKind.CONIC_SECANT)


def _frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class LatticePoint:
    """Point of ``C/(Z + wZ)`` written as ``u + v w`` with ``u, v`` in [0, 1)."""

    u: Fraction
    v: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "u", _frac_mod1(self.u))
        object.__setattr__(self, "v", _frac_mod1(self.v))

    def __add__(self, other):
        return LatticePoint(self.u + other.u, self.v + other.v)

    def __neg__(self):
        return LatticePoint(-self.u, -self.v)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, int):
            return LatticePoint(k * self.u, k * self.v)
        if isinstance(k, LatticeScalar):
            return k.act(self)
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.u or self.v)

    def __str__(self):
        if not self.v:
            return str(self.u)
        w = "w" if self.v != 1 else "w"
        return f"{self.u}+{self.v}{w}" if self.u else f"{self.v}{w}"


@dataclass(frozen=True)
class LatticeScalar:
    """Multiplier ``x + y w`` acting on a lattice with ``w^2 = c0 + c1 w``."""

    x: int
    y: int
    c0: int
    c1: int

    def __mul__(self, other):
        if isinstance(other, LatticeScalar):
            x = self.x * other.x + self.y * other.y * self.c0
            y = self.x * other.y + self.y * other.x + self.y * other.y * self.c1
            return LatticeScalar(x, y, self.c0, self.c1)
        if isinstance(other, int):
            return LatticeScalar(self.x * other, self.y * other, self.c0, self.c1)
        if isinstance(other, LatticePoint):
            return self.act(other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return LatticeScalar(-self.x, -self.y, self.c0, self.c1)

    def act(self, p: LatticePoint) -> LatticePoint:
        u = self.x * p.u + self.y * p.v * self.c0
        v = self.x * p.v + self.y * p.u + self.y * p.v * self.c1
        return LatticePoint(u, v)

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Integer matrix of the action on lattice coordinates (u, v)."""
        return ((self.x, self.y * self.c0), (self.y, self.x + self.y * self.c1))

    def is_one(self) -> bool:
        return (self.x, self.y) == (1, 0)

    def power(self, k: int) -> "LatticeScalar":
        out = LatticeScalar(1, 0, self.c0, self.c1)
        for _ in range(k):
            out = out * self
        return out

    def order(self) -> int:
        p = self
        for k in range(1, 13):
            if p.is_one():
                return k
            p = p * self
        raise ValueError("multiplier of infinite order is not a lattice unit")

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        return f"{self.x}+{self.y}w" if self.x else f"{self.y}w"


SQUARE_W = (-1, 0)  # w = i
HEX_W = (-1, 1)  # w = exp(i pi / 3), w^2 = w - 1


def lattice_w(kind: CubicKind) -> tuple[int, int]:
    if kind == CubicKind.TORUS_SQUARE:
        return SQUARE_W
    if kind == CubicKind.TORUS_HEX:
        return HEX_W
    return (0, 0)


def lattice_scalar(kind: CubicKind, x: int, y: int = 0) -> LatticeScalar:
    return LatticeScalar(x, y, *lattice_w(kind))


@dataclass(frozen=True)
class CZValue:
    """Element ``re + i im`` of ``C/Z``; ``re`` is reduced to [0, 1)."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac_mod1(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other):
        if not isinstance(other, CZValue):
            return NotImplemented
        return CZValue(self.re + other.re, self.im + other.im)

    def __neg__(self):
        return CZValue(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, int):
            return CZValue(k * self.re, k * self.im)
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.re or self.im)

    def multiplicative(self, dps: int = 50):
        """The C* coordinate ``exp(2 pi i s)``."""
        with mpmath.workdps(dps):
            s = mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                           mpmath.mpf(self.im.numerator) / self.im.denominator)
            return mpmath.exp(2j * mpmath.pi * s)

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else ("-i" if self.im == -1 else f"{self.im}i")
        if not self.re:
            return im
        return f"{self.re}{'' if im.startswith('-') else '+'}{im}"


def cz(re, im=0) -> CZValue:
    return CZValue(Fraction(re), Fraction(im))


def lat(u, v=0) -> LatticePoint:
    return LatticePoint(Fraction(u), Fraction(v))


def zero_value(kind: CubicKind, like=None):
    if kind.rank == 2:
        return LatticePoint(Fraction(0))
    if kind.rank == 1:
        return CZValue(Fraction(0))
    if isinstance(like, NFElement):
        return like.field(0)
    return Fraction(0)


def values_equal(kind: CubicKind, x, y, tol=None) -> bool:
    if kind.rank == 0 and not _exact(x) or kind.rank == 0 and not _exact(y):
        tol = tol or mpmath.mpf(10) ** -20
        return abs(mpmath.mpc(complex_of(x)) - mpmath.mpc(complex_of(y))) < tol
    return x == y


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction, NFElement))


def complex_of(x):
    if isinstance(x, NFElement):
        return x.approx()
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return x


def pic_add(kind: CubicKind, x, y):
    return x + y


def pic_neg(kind: CubicKind, x):
    return -x


def pic_smul(kind: CubicKind, x, k: int):
    return k * x


def scale(kind: CubicKind, a, x):
    """Multiplier action ``a . x`` on a Pic0 value."""
    if kind.rank == 2:
        if isinstance(a, int):
            return x * a
        return a.act(x)
    if kind.rank == 1:
        if a not in (1, -1):
            raise ValueError(f"multiplier {a} is not admissible on a nodal kind")
        return x * int(a)
    return a * x


@dataclass(frozen=True)
class MarkedPoint:
    comp: int
    value: Any

    def __str__(self):
        return f"{self.value}@V{self.comp}"


def mark(kind: CubicKind, comp: int, value) -> MarkedPoint:
    if not 0 <= comp < kind.r:
        raise ValueError(f"component {comp} invalid for {kind.value}")
    return MarkedPoint(comp, value)


def mark_add(kind: CubicKind, p: MarkedPoint, q: MarkedPoint) -> MarkedPoint:
    return MarkedPoint((p.comp + q.comp) % kind.r, p.value + q.value)


def mark_neg(kind: CubicKind, p: MarkedPoint) -> MarkedPoint:
    return MarkedPoint((-p.comp) % kind.r, -p.value)


def mark_zero(kind: CubicKind, like=None) -> MarkedPoint:
    return MarkedPoint(0, zero_value(kind, like))


def marked_equal(kind: CubicKind, p: MarkedPoint, q: MarkedPoint) -> bool:
    return p.comp == q.comp and values_equal(kind, p.value, q.value)


def value_sum(kind: CubicKind, values, like=None):
    total = zero_value(kind, like)
    for v in values:
        total = total + v
    return total


def is_degree_d_cut(kind: CubicKind, points: Sequence[MarkedPoint], d: int) -> bool:
    """Do the 3d points form the intersection of the cubic with a degree-d curve?"""
    if d < 1:
        raise ValueError("degree must be positive")
    if len(points) != 3 * d:
        raise ValueError(f"expected {3 * d} points, got {len(points)}")
    for i, deg in enumerate(kind.degrees):
        if sum(1 for p in points if p.comp == i) != d * deg:
            return False
    total = value_sum(kind, [p.value for p in points], like=points[0].value)
    return values_equal(kind, total, zero_value(kind, total))


@dataclass(frozen=True)
class CurveAut:
    """Automorphism ``p -> a p + b[i]`` on component ``i``, landing on ``tau[i]``."""

    a: Any
    tau: tuple[int, ...]
    b: tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(self.tau))
        object.__setattr__(self, "b", tuple(self.b))
        if sorted(self.tau) != list(range(len(self.tau))) or len(self.b) != len(self.tau):
            raise ValueError("tau must permute the components and b needs one translation each")


def aut_apply(kind: CubicKind, g: CurveAut, p: MarkedPoint) -> MarkedPoint:
    return MarkedPoint(g.tau[p.comp], scale(kind, g.a, p.value) + g.b[p.comp])


def aut_inverse(kind: CubicKind, g: CurveAut) -> CurveAut:
    """Inverse automorphism ``q -> a^{-1}(q - b[i])`` on component ``tau[i]``."""
    r = kind.r
    inv_tau = [0] * r
    for i, t in enumerate(g.tau):
        inv_tau[t] = i
    if kind.rank == 2:
        a_inv = g.a if isinstance(g.a, int) else g.a.power(g.a.order() - 1)
    elif kind.rank == 1:
        a_inv = g.a
    else:
        a_inv = 1 / g.a
    b_inv = [None] * r
    for i, t in enumerate(g.tau):
        b_inv[t] = -scale(kind, a_inv, g.b[i])
    return CurveAut(a_inv, tuple(inv_tau), tuple(b_inv))


def weighted_translation(kind: CubicKind, g: CurveAut):
    """``sum_V (deg V) b_V``."""
    return value_sum(kind, [deg * b for deg, b in zip(kind.degrees, g.b)], like=g.b[0])


def aut_is_projective(kind: CubicKind, g: CurveAut) -> bool:
    w = weighted_translation(kind, g)
    return values_equal(kind, w, zero_value(kind, w))


def multiplier_group(kind: CubicKind):
    """Admissible multipliers, or the string ``"all nonzero scalars"``."""
    if kind.rank == 0:
        return "all nonzero scalars"
    if kind.rank == 1 or kind == CubicKind.TORUS_GENERIC:
        if kind.rank == 2:
            return [lattice_scalar(kind, 1), lattice_scalar(kind, -1)]
        return [1, -1]
    w = lattice_scalar(kind, 0, 1)
    n = w.order()
    return [w.power(k) for k in range(n)]


def is_admissible_multiplier(kind: CubicKind, a) -> bool:
    group = multiplier_group(kind)
    if isinstance(group, str):
        if isinstance(a, NFElement):
            return bool(a)
        return a != 0
    if kind.rank == 2 and isinstance(a, int):
        a = lattice_scalar(kind, a)
    return a in group


@dataclass
class ConstraintResult:
    ok: bool
    minus_points: tuple[MarkedPoint, ...] | None
    diagnostics: list[str] = field(default_factory=list)
    ambiguous: bool = False


def third_point_component(kind: CubicKind, p: MarkedPoint, q: MarkedPoint) -> int | None:
    """Component of the third intersection of the line through p and q with C.

    Returns None when p and q lie on a common linear component, since the
    line through them is then the component itself.
    """
    if p.comp == q.comp and kind.degrees[p.comp] == 1:
        return None
    return (-(p.comp + q.comp)) % kind.r


def quadratic_constraints(kind: CubicKind, g: CurveAut, plus: Sequence[MarkedPoint]) -> ConstraintResult:
    """Check existence conditions for a quadratic map with base points ``plus`` restricting to g.

    Degree counts and the nonzero-sum condition decide ``ok``.  The inverse
    base points come from ``p_j^- = a p_j^+ + b_{V(p_j^+)} - sum_V (deg V) b_V``
    with components read off from the line through the other two base points.
    """
    plus = tuple(plus)
    if len(plus) != 3:
        raise ValueError("need exactly three base points")
    diag: list[str] = []
    r = kind.r
    inv_tau = [0] * r
    for i, t in enumerate(g.tau):
        inv_tau[t] = i
    degs = kind.degrees
    counts_ok = True
    for v in range(r):
        want = 2 * degs[v] - degs[g.tau[v]]
        have = sum(1 for p in plus if p.comp == v)
        if have != want:
            counts_ok = False
            diag.append(f"condition 1: component {v} carries {have} base points, needs {want}")

    w = weighted_translation(kind, g)
    total = value_sum(kind, [p.value for p in plus], like=plus[0].value)
    lhs = scale(kind, g.a, total)
    sum_ok = values_equal(kind, lhs, w) and not values_equal(kind, w, zero_value(kind, w))
    if not values_equal(kind, lhs, w):
        diag.append("condition 2: a * sum of base points differs from sum (deg V) b_V")
    elif values_equal(kind, w, zero_value(kind, w)):
        diag.append("condition 2: sum of base points is zero (collinear base points)")

    minus = []
    ambiguous = False
    for j in range(3):
        k, l = [x for x in range(3) if x != j]
        comp = third_point_component(kind, plus[k], plus[l])
        if comp is None:
            ambiguous = True
            diag.append(f"condition 3: base points {k + 1},{l + 1} span a component line; placement of p_{j + 1}^- is ambiguous")
            comp = g.tau[plus[j].comp]
        else:
            comp = g.tau[comp]
        val = scale(kind, g.a, plus[j].value) + g.b[plus[j].comp] - w
        minus.append(MarkedPoint(comp, val))
    for a_idx in range(3):
        for b_idx in range(a_idx + 1, 3):
            if marked_equal(kind, plus[a_idx], plus[b_idx]):
                diag.append(f"base points {a_idx + 1} and {b_idx + 1} coincide (infinitely near configuration)")

    if counts_ok:
        for v in range(r):
            want = 2 * degs[v] - degs[inv_tau[v]]
            have = sum(1 for p in minus if p.comp == v)
            if have != want:
                counts_ok = False
                diag.append(f"condition 1: component {v} carries {have} inverse base points, needs {want}")

    return ConstraintResult(counts_ok and sum_ok, tuple(minus), diag, ambiguous)
