"""Explicit plane quadratic maps from realization certificates.

Plane models of the embeddable cubics (chart parameter ``t``):

===============  ====================  =========================================
kind             defining form         charts
===============  ====================  =========================================
cusp             y z^2 - x^3           t -> [t : t^3 : 1]
concurrent       x y (x + y)           V0: [0 : 1 : t], V1: [1 : 0 : -t], V2: [1 : -1 : t]
triangle         x y z                 V0: [0 : 1 : -t], V1: [t : 0 : 1], V2: [1 : t : 0]
conic-secant     z (z^2 - x y)         line V0: [1 : -t : 0], conic V1: [t^2 : 1 : t]
===============  ====================  =========================================

For the nodal kinds ``t = exp(2 pi i s)`` where ``s`` is the C/Z value.
In every chart three regular points are collinear exactly when their
values sum to zero, and the chart origins are cut out by a line.

Everything here is floating point.  The default backend is double
precision via numpy; an mpmath backend at a chosen number of digits is
used for precision escalation.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .cubic_models import CubicKind, CurveAut, CZValue, MarkedPoint, aut_inverse
from .numberfield import NFElement


class NearDegenerate(ValueError):
    """The sample point is too close to the base locus or exceptional lines."""


class InfinitelyNear(NearDegenerate):
    """Two base points coincide, so the map has an infinitely near base point."""


class RankDeficient(ValueError):
    """The interpolation system has more than a one-dimensional nullspace."""


class NoNullspace(ValueError):
    """No quadratic map fits the sampled images."""


class UnsupportedKind(ValueError):
    pass


class Backend:
    """Scalar and linear-algebra primitives at a fixed working precision."""

    def __init__(self, dps: int | None = None):
        self.dps = dps

    @property
    def exact_eps(self) -> float:
        return 1e-15 if self.dps is None else 10.0 ** (-self.dps)

    def num(self, x):
        if self.dps is None:
            if isinstance(x, NFElement):
                return complex(x.approx(30))
            if isinstance(x, Fraction):
                return complex(x.numerator / x.denominator)
            return complex(x)
        with mpmath.workdps(self.dps):
            if isinstance(x, NFElement):
                return mpmath.mpc(x.approx(self.dps + 10))
            if isinstance(x, Fraction):
                return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
            return mpmath.mpc(x)

    def exp(self, z):
        if self.dps is None:
            return cmath.exp(z)
        with mpmath.workdps(self.dps):
            return mpmath.exp(z)

    def sqrt(self, x):
        return cmath.sqrt(x) if self.dps is None else mpmath.sqrt(x)

    def pi(self):
        return cmath.pi if self.dps is None else mpmath.pi

    def roots(self, coeffs_high_first):
        c = list(coeffs_high_first)
        while c and abs(c[0]) == 0:
            c.pop(0)
        if len(c) <= 1:
            return []
        if self.dps is None:
            return [complex(r) for r in np.roots(np.array(c, dtype=complex))]
        with mpmath.workdps(self.dps):
            if len(c) == 2:
                return [-c[1] / c[0]]
            return list(mpmath.polyroots(c, maxsteps=200, extraprec=2 * self.dps))

    def svd(self, rows):
        """Singular values (descending) and right singular vectors as rows."""
        if self.dps is None:
            M = np.array(rows, dtype=complex)
            _, s, vh = np.linalg.svd(M)
            return [float(x) for x in s], [list(v) for v in vh]
        with mpmath.workdps(self.dps):
            M = mpmath.matrix(rows)
            _, s, V = mpmath.svd_c(M)
            sv = [s[i] for i in range(min(M.rows, M.cols))]
            vh = [[V[i, j] for j in range(V.cols)] for i in range(V.rows)]
            return sv, vh

    def real(self, x) -> float:
        return float(abs(x))


DOUBLE = Backend()


# ---- projective helpers -------------------------------------------------

def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def norm(u):
    return sum(abs(x) ** 2 for x in u) ** 0.5


def normalize(u):
    """Scale to unit max-modulus."""
    m = max(u, key=abs)
    if abs(m) == 0:
        raise ValueError("zero vector is not a projective point")
    return tuple(x / m for x in u)


def proj_dist(u, v) -> float:
    """Sine of the angle between two representatives; 0 iff the same point."""
    nu, nv = norm(u), norm(v)
    if nu == 0 or nv == 0:
        return float("inf")
    # |u|^2 |v|^2 - |<u, v>|^2 = |u x v|^2, without the cancellation.
    return float(norm(cross(u, v)) / (nu * nv))


def point_line_dist(p, line) -> float:
    return float(abs(dot(p, line)) / (norm(p) * norm(line)))


def det3(a, b, c):
    return dot(a, cross(b, c))


# ---- charts -------------------------------------------------------------

def _require_embeddable(kind: CubicKind):
    kind = CubicKind(kind)
    if not kind.embeddable:
        raise UnsupportedKind(
            f"{kind.value} has no plane model here; torus and nodal-irreducible certificates "
            "are certified in lattice or C/Z coordinates only"
        )
    return kind


def chart_param(kind: CubicKind, value, bk: Backend = DOUBLE):
    """Chart coordinate t of a Pic0 value."""
    if kind.rank == 1:
        v = value if isinstance(value, CZValue) else CZValue(Fraction(value))
        s = bk.num(v.re) + 1j * bk.num(v.im)
        return bk.exp(2j * bk.pi() * s)
    return bk.num(value)


def chart_point(kind: CubicKind, comp: int, t):
    if kind == CubicKind.CUSP:
        return (t, t ** 3, 1 + 0 * t)
    if kind == CubicKind.CONCURRENT:
        one = 1 + 0 * t
        return [(0 * t, one, t), (one, 0 * t, -t), (one, -one, t)][comp]
    if kind == CubicKind.TRIANGLE:
        one = 1 + 0 * t
        return [(0 * t, one, -t), (t, 0 * t, one), (one, t, 0 * t)][comp]
    if kind == CubicKind.CONIC_SECANT:
        one = 1 + 0 * t
        return (one, -t, 0 * t) if comp == 0 else (t * t, one, t)
    raise UnsupportedKind(kind.value)


def embed(kind, p: MarkedPoint, bk: Backend = DOUBLE):
    """Plane point of a regular point of the cubic, normalized to unit max-modulus."""
    kind = _require_embeddable(kind)
    return normalize(chart_point(kind, p.comp, chart_param(kind, p.value, bk)))


def cubic_form(kind: CubicKind, p):
    x, y, z = p
    if kind == CubicKind.CUSP:
        return y * z * z - x ** 3
    if kind == CubicKind.CONCURRENT:
        return x * y * (x + y)
    if kind == CubicKind.TRIANGLE:
        return x * y * z
    if kind == CubicKind.CONIC_SECANT:
        return z * (z * z - x * y)
    raise UnsupportedKind(kind.value)


def line_params(kind: CubicKind, line, bk: Backend = DOUBLE):
    """Intersections of a line with the regular part, as (component, t) pairs."""
    l0, l1, l2 = line
    out = []
    if kind == CubicKind.CUSP:
        out = [(0, t) for t in bk.roots([l1, 0, l0, l2])]
    elif kind == CubicKind.CONCURRENT:
        for comp, (c1, c0) in enumerate([(l2, l1), (-l2, l0), (l2, l0 - l1)]):
            out += [(comp, t) for t in bk.roots([c1, c0])]
    elif kind == CubicKind.TRIANGLE:
        for comp, (c1, c0) in enumerate([(-l2, l1), (l0, l2), (l1, l0)]):
            out += [(comp, t) for t in bk.roots([c1, c0])]
    elif kind == CubicKind.CONIC_SECANT:
        out = [(0, t) for t in bk.roots([-l1, l0])] + [(1, t) for t in bk.roots([l0, l2, l1])]
    return out


# ---- numeric plane model of a certificate -------------------------------

@dataclass
class PlaneModel:
    """Numeric data of a quadratic map: base points, inverse base points, and f restricted to C."""

    kind: CubicKind
    aut: CurveAut
    plus: tuple[MarkedPoint, ...]
    minus: tuple[MarkedPoint, ...]
    bk: Backend = field(default=DOUBLE)

    def __post_init__(self):
        self.kind = _require_embeddable(self.kind)
        self.plus_pts = [embed(self.kind, p, self.bk) for p in self.plus]
        self.minus_pts = [embed(self.kind, p, self.bk) for p in self.minus]
        self._a = self._num_mult(self.aut.a)
        self._b = [self._num_trans(b) for b in self.aut.b]
        if any(proj_dist(self.plus_pts[i], self.plus_pts[j]) < 1e-9 for i in range(3) for j in range(i + 1, 3)):
            raise InfinitelyNear("coincident base points (infinitely near configuration) are not supported")

    @classmethod
    def from_certificate(cls, cert, bk: Backend = DOUBLE) -> "PlaneModel":
        return cls(cert.kind, cert.aut, tuple(cert.plus), tuple(cert.minus), bk)

    def inverse(self) -> "PlaneModel":
        return PlaneModel(self.kind, aut_inverse(self.kind, self.aut), self.minus, self.plus, self.bk)

    def with_backend(self, bk: Backend) -> "PlaneModel":
        model = PlaneModel(self.kind, self.aut, self.plus, self.minus, bk)
        if getattr(self, "data", None) is not None:
            model.data = self.data
            model.orbit_targets = _orbit_targets(model, self.data)
        return model

    def _num_mult(self, a):
        return int(a) if self.kind.rank == 1 else self.bk.num(a)

    def _num_trans(self, b):
        if self.kind.rank == 1:
            return chart_param(self.kind, b, self.bk)  # multiplicative translation
        return self.bk.num(b)

    def curve_map(self, comp: int, t):
        """f on the chart: returns (image component, image parameter)."""
        if self.kind.rank == 1:
            t2 = self._b[comp] * (t if self._a == 1 else 1 / t)
        else:
            t2 = self._a * t + self._b[comp]
        return self.aut.tau[comp], t2

    def point(self, comp, t):
        return normalize(chart_point(self.kind, comp, t))


def eval_point(model, p, tol: float = 1e-7):
    """f(p) for p off the cubic's base locus, by the three-point line construction.

    The line L through p and a base point p_j^+ meets C in two more points x,
    y and meets the exceptional line through the other two base points in q.
    f restricted to L is the projective map sending x, y, q to f(x), f(y), p_j^-.
    """
    if not isinstance(model, PlaneModel):
        model = PlaneModel.from_certificate(model)
    p = normalize(tuple(model.bk.num(c) if not isinstance(c, (complex, float, int)) or model.bk.dps else complex(c) for c in p))
    if min(proj_dist(p, b) for b in model.plus_pts) < tol:
        raise NearDegenerate("point is at a base point")
    last = None
    for j in range(3):
        try:
            return _eval_with_pivot(model, p, j, tol)
        except NearDegenerate as exc:
            last = exc
    raise last


def _eval_with_pivot(model: PlaneModel, p, j: int, tol: float):
    kind, bk = model.kind, model.bk
    pj = model.plus_pts[j]
    k, l = [i for i in range(3) if i != j]
    L = cross(p, pj)
    if norm(L) < tol:
        raise NearDegenerate("point coincides with a base point")
    exc_line = cross(model.plus_pts[k], model.plus_pts[l])
    for other in (k, l):
        if point_line_dist(model.plus_pts[other], L) < tol:
            raise NearDegenerate(f"line through the point and p_{j + 1}^+ is exceptional")
    inter = []
    for comp, t in line_params(kind, L, bk):
        if abs(t) > 1e12 or (kind.rank == 1 and abs(t) < 1e-12):
            raise NearDegenerate("line meets the cubic at a singular point")
        inter.append((comp, t, model.point(comp, t)))
    if len(inter) != 3:
        raise NearDegenerate("line meets the singular locus of the cubic")
    inter.sort(key=lambda c: proj_dist(c[2], pj))
    if proj_dist(inter[0][2], pj) > 1e-6:
        raise NearDegenerate("failed to locate the base point on the line")
    (cx, tx, x), (cy, ty, y) = inter[1], inter[2]
    if proj_dist(x, y) < tol or proj_dist(x, pj) < tol or proj_dist(y, pj) < tol:
        raise NearDegenerate("line is tangent to the cubic")
    q = cross(L, exc_line)
    if norm(q) < tol * norm(L) * norm(exc_line):
        raise NearDegenerate("line coincides with the exceptional line")
    fx = model.point(*model.curve_map(cx, tx))
    fy = model.point(*model.curve_map(cy, ty))
    alpha, beta = _coords_on_line(p, x, y)
    aq, bq = _coords_on_line(q, x, y)
    g, d = _coords_on_line(model.minus_pts[j], fx, fy)
    if abs(aq) < tol or abs(bq) < tol:
        raise NearDegenerate("exceptional line meets L on the cubic")
    img = tuple(g / aq * alpha * u + d / bq * beta * v for u, v in zip(fx, fy))
    return normalize(img)


def _coords_on_line(p, x, y):
    """Solve p = alpha x + beta y for collinear representatives (least squares)."""
    # Normal equations of the 3x2 system; well conditioned once x, y are distinct.
    xx = sum(a.conjugate() * a for a in x)
    yy = sum(a.conjugate() * a for a in y)
    xy = sum(a.conjugate() * b for a, b in zip(x, y))
    xp = sum(a.conjugate() * b for a, b in zip(x, p))
    yp = sum(a.conjugate() * b for a, b in zip(y, p))
    det = xx * yy - xy * xy.conjugate()
    alpha = (yy * xp - xy * yp) / det
    beta = (xx * yp - xy.conjugate() * xp) / det
    return alpha, beta


# ---- interpolation ------------------------------------------------------

MONOMIALS = ("x^2", "xy", "xz", "y^2", "yz", "z^2")


def monomials(p):
    x, y, z = p
    return (x * x, x * y, x * z, y * y, y * z, z * z)


@dataclass
class QuadraticMap:
    """Three quadratic forms, row-major in the monomial order x^2, xy, xz, y^2, yz, z^2."""

    coeffs: tuple[tuple[complex, ...], ...]
    kind: CubicKind | None = None
    provenance: str = ""
    normalization: str = "max-modulus coefficient scaled to 1"
    singular_values: tuple[float, ...] = ()

    def __call__(self, p):
        m = monomials(p)
        return tuple(sum(c * v for c, v in zip(row, m)) for row in self.coeffs)

    def image(self, p):
        return normalize(self(p))

    def perturbed(self, form: int, mono: int, delta) -> "QuadraticMap":
        rows = [list(r) for r in self.coeffs]
        rows[form][mono] += delta
        return QuadraticMap(tuple(tuple(r) for r in rows), self.kind, self.provenance + " (perturbed)",
                            self.normalization)

    def jacobian_det(self, p):
        x, y, z = p
        grads = []
        for c in self.coeffs:
            grads.append((2 * c[0] * x + c[1] * y + c[2] * z,
                          c[1] * x + 2 * c[3] * y + c[4] * z,
                          c[2] * x + c[4] * y + 2 * c[5] * z))
        return det3(*grads)


def _random_points(rng, count, bk: Backend):
    pts = []
    for _ in range(count):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        pts.append(normalize(tuple(bk.num(complex(c)) for c in v)))
    return pts


def fit_quadratic_map(cert, samples: int = 16, seed: int = 0, gap: float = 1e6, bk: Backend | None = None):
    """Interpolate the quadratic forms from sampled images of generic points."""
    model = cert if isinstance(cert, PlaneModel) else PlaneModel.from_certificate(cert, bk or DOUBLE)
    if bk is not None and model.bk is not bk:
        model = model.with_backend(bk)
    bk = model.bk
    rng = np.random.default_rng(seed)
    rows = []
    got = 0
    attempts = 0
    while got < samples:
        attempts += 1
        if attempts > 20 * samples + 50:
            raise NearDegenerate("could not find enough generic sample points")
        (p,) = _random_points(rng, 1, bk)
        try:
            w = eval_point(model, p)
        except NearDegenerate:
            continue
        m = monomials(p)
        for k, l in ((0, 1), (0, 2), (1, 2)):
            row = [0 * m[0]] * 18
            for i in range(6):
                row[6 * k + i] = m[i] * w[l]
                row[6 * l + i] = -m[i] * w[k]
            scale_ = norm(row)
            rows.append([r / scale_ for r in row])
        got += 1
    if len(rows) < 17:
        raise RankDeficient(f"{samples} samples give {len(rows)} equations for 18 unknowns")
    s, vh = bk.svd(rows)
    s = [float(abs(x)) for x in s]
    s = s + [0.0] * (18 - len(s))
    top = s[0]
    tiny = 1e3 * (bk.exact_eps ** 0.5 if bk.dps is None else bk.exact_eps ** 0.5)
    if s[-2] <= tiny * top:
        raise RankDeficient("nullspace has dimension > 1; resample")
    if s[-1] > 1e-6 * top or s[-2] < gap * s[-1]:
        raise NoNullspace(f"no clean one-dimensional nullspace (gap {s[-2] / max(s[-1], 1e-300):.3g})")
    v = [c.conjugate() for c in vh[-1]]
    big = max(v, key=abs)
    v = [c / big for c in v]
    coeffs = tuple(tuple(v[6 * k:6 * k + 6]) for k in range(3))
    prov = getattr(cert, "data", None)
    return QuadraticMap(coeffs, model.kind, f"{model.kind.value} {prov}" if prov else model.kind.value,
                        singular_values=tuple(s))


# ---- verification -------------------------------------------------------

@dataclass
class MapReport:
    base_point_residual: float
    curve_invariance_residual: float
    restriction_residual: float
    orbit_residuals: list[float]
    exceptional_residuals: list[float]
    degree_residual: float
    form_rank: int
    jacobian_min: float
    tol: float
    precision: str
    diagnostics: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        vals = [self.base_point_residual, self.curve_invariance_residual, self.restriction_residual,
                self.degree_residual, *self.orbit_residuals, *self.exceptional_residuals]
        return all(v < self.tol for v in vals) and self.form_rank == 3 and self.jacobian_min > 1e-6

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "precision": self.precision,
            "tol": self.tol,
            "base_point_residual": self.base_point_residual,
            "curve_invariance_residual": self.curve_invariance_residual,
            "restriction_residual": self.restriction_residual,
            "orbit_residuals": self.orbit_residuals,
            "exceptional_residuals": self.exceptional_residuals,
            "degree_residual": self.degree_residual,
            "form_rank": self.form_rank,
            "jacobian_min": self.jacobian_min,
            "diagnostics": self.diagnostics,
        }


def _rel(v) -> float:
    return float(max(abs(c) for c in v))


def _form_residual(fmap: QuadraticMap, p) -> float:
    p = normalize(p)
    return _rel(fmap(p)) / max(1.0, max(float(sum(abs(c) for c in row)) for row in fmap.coeffs))


def random_curve_points(kind: CubicKind, rng, count: int, bk: Backend = DOUBLE):
    """Random regular points as (component, chart parameter)."""
    out = []
    for i in range(count):
        comp = i % kind.r
        z = complex(rng.normal(), rng.normal())
        t = bk.num(z) if kind.rank == 0 else bk.exp(bk.num(complex(0.3 * z.real, 0.3 * z.imag)))
        out.append((comp, t))
    return out


def verify_map(fmap: QuadraticMap, cert, tol: float = 1e-8, seed: int = 1, curve_samples: int = 100,
               lines: int = 5, escalate: int | None = 40) -> MapReport:
    """Residual report for a fitted map; refits at ``escalate`` digits if doubles fall short."""
    model = cert if isinstance(cert, PlaneModel) else PlaneModel.from_certificate(cert)
    report = _verify(fmap, model, tol, seed, curve_samples, lines)
    if not report.passed and escalate and model.bk.dps is None and "perturbed" not in fmap.provenance:
        bk = Backend(escalate)
        with mpmath.workdps(escalate):
            try:
                hi_model = model.with_backend(bk)
                hi_map = fit_quadratic_map(hi_model, samples=16, bk=bk)
                hi = _verify(hi_map, hi_model, tol, seed, curve_samples, lines)
                hi.diagnostics.insert(0, "double precision failed; refit with mpmath at %d digits" % escalate)
                if hi.passed:
                    return hi
            except (RankDeficient, NoNullspace, NearDegenerate) as exc:
                report.diagnostics.append(f"precision escalation failed: {exc}")
    return report


def _verify(fmap: QuadraticMap, model: PlaneModel, tol, seed, curve_samples, lines) -> MapReport:
    kind, bk = model.kind, model.bk
    rng = np.random.default_rng(seed)
    diags = []

    base = max(_form_residual(fmap, p) for p in model.plus_pts)
    if base >= tol:
        worst = max(range(3), key=lambda j: _form_residual(fmap, model.plus_pts[j]))
        diags.append(f"forms do not vanish at p_{worst + 1}^+ (residual {base:.3g})")

    inv, restr = 0.0, 0.0
    for comp, t in random_curve_points(kind, rng, curve_samples, bk):
        p = model.point(comp, t)
        img = fmap(p)
        if max(abs(c) for c in img) == 0:
            continue
        img = normalize(img)
        inv = max(inv, float(abs(cubic_form(kind, img))))
        restr = max(restr, proj_dist(img, model.point(*model.curve_map(comp, t))))
    if inv >= tol:
        diags.append(f"image of the cubic leaves the cubic (residual {inv:.3g})")
    if restr >= tol:
        diags.append(f"map disagrees with the curve automorphism (residual {restr:.3g})")

    orbit_res = []
    data = getattr(model, "data", None)
    orbits = getattr(model, "orbit_targets", None)
    if orbits:
        for j, (start, steps, target) in enumerate(orbits):
            p = start
            for _ in range(steps):
                p = fmap.image(p)
            orbit_res.append(proj_dist(p, target))
            if orbit_res[-1] >= tol:
                diags.append(f"orbit {j + 1} misses its endpoint (residual {orbit_res[-1]:.3g})")

    exc_res = []
    for j in range(3):
        k, l = [i for i in range(3) if i != j]
        worst = 0.0
        for s in (0.31 + 0.2j, -1.7 + 0.4j, 2.3 - 0.9j):
            p = normalize(tuple(u + s * v for u, v in zip(model.plus_pts[k], model.plus_pts[l])))
            img = fmap(p)
            worst = max(worst, proj_dist(img, model.minus_pts[j]) if max(abs(c) for c in img) else 1.0)
        exc_res.append(worst)
        if worst >= tol:
            diags.append(f"exceptional line through p_{k + 1}^+, p_{l + 1}^+ is not contracted to p_{j + 1}^- ({worst:.3g})")

    deg = 0.0
    for _ in range(lines):
        a, b = _random_points(rng, 2, bk)
        pts = [normalize(tuple(u + s * v for u, v in zip(a, b))) for s in
               [complex(rng.normal(), rng.normal()) for _ in range(8)]]
        imgs = [fmap.image(p) for p in pts] + list(model.minus_pts)
        rows = []
        for q in imgs:
            m = monomials(q)
            nm = norm(m)
            rows.append([c / nm for c in m])
        s, _ = bk.svd(rows)
        deg = max(deg, float(abs(s[-1])) / float(abs(s[0])))
    if deg >= tol:
        diags.append(f"generic lines do not map to conics through I(f^-1) ({deg:.3g})")

    cm = np.array([[complex(c) for c in row] for row in fmap.coeffs])
    rank = int(np.linalg.matrix_rank(cm, tol=1e-8))
    jac = min(float(abs(fmap.jacobian_det(p))) for p in _random_points(rng, 5, bk))
    if rank < 3:
        diags.append("quadratic forms are linearly dependent")
    if jac <= 1e-6:
        diags.append("Jacobian determinant vanishes at generic points")
    prec = "double" if bk.dps is None else f"mpmath {bk.dps} digits"
    return MapReport(float(base), inv, restr, orbit_res, exc_res, deg, rank, jac, tol, prec, diags)


def attach_orbits(model: PlaneModel, cert) -> PlaneModel:
    """Record orbit start points, step counts and endpoints for the orbit residual check."""
    model.orbit_targets = _orbit_targets(model, cert.data)
    model.data = cert.data
    return model


def _orbit_targets(model: PlaneModel, data):
    return [(model.minus_pts[j], data.n[j] - 1, model.plus_pts[data.sigma[j] - 1]) for j in range(3)]


def certificate_model(cert, bk: Backend = DOUBLE) -> PlaneModel:
    return attach_orbits(PlaneModel.from_certificate(cert, bk), cert)
