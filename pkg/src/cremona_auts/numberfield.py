"""Exact arithmetic in Q[a] = Q[x]/(m(x)) for an irreducible integer polynomial m.

Each field carries a chosen complex root of m as its embedding, so every
element has a high-precision numerical shadow alongside its exact residue.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from . import polys

EMBED_DPS = 60


class NumberField:
    def __init__(self, modulus, root_index: int = 0):
        m = polys.trim([int(c) for c in modulus])
        if polys.degree(m) < 1:
            raise ValueError("modulus must have positive degree")
        if m[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        roots = _sorted_roots(self.modulus)
        if not 0 <= root_index < len(roots):
            raise IndexError(f"root index {root_index} out of range 0..{len(roots) - 1}")
        self.root_index = root_index
        self.root = roots[root_index]

    def __eq__(self, other):
        return isinstance(other, NumberField) and (self.modulus, self.root_index) == (
            other.modulus,
            other.root_index,
        )

    def __hash__(self):
        return hash((self.modulus, self.root_index))

    def __repr__(self):
        return f"NumberField({polys.to_str(list(self.modulus))}, root_index={self.root_index})"

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        return NFElement(self, (Fraction(value),))

    @property
    def gen(self) -> "NFElement":
        if self.degree == 1:
            return self(-self.modulus[0])
        return NFElement(self, (Fraction(0), Fraction(1)))

    def reduce(self, p):
        # Monic integer modulus: x^d = -(m_0 + ... + m_{d-1} x^{d-1}).
        r = [Fraction(c) for c in p]
        m, d = self.modulus, self.degree
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c:
                for i in range(d):
                    if m[i]:
                        r[k - d + i] -= c * m[i]
        return tuple(polys.trim(r[:d]))

    def roots(self):
        return _sorted_roots(self.modulus)


@lru_cache(maxsize=1024)
def _sorted_roots(modulus: tuple[int, ...]):
    """Roots by descending modulus, then descending real and imaginary part."""
    with mpmath.workdps(EMBED_DPS + 20):
        coeffs = [mpmath.mpf(c) for c in reversed(modulus)]
        if len(coeffs) == 2:
            rts = [-coeffs[1] / coeffs[0]]
        else:
            rts = _polished_roots(modulus) or mpmath.polyroots(coeffs, maxsteps=500, extraprec=4 * EMBED_DPS)
        rts = [mpmath.mpc(r) for r in rts]
        rts.sort(key=lambda r: (-abs(r), -mpmath.re(r), -mpmath.im(r)))
        return tuple(rts)


def _polished_roots(modulus):
    """Companion eigenvalues refined by Newton steps; None if they do not settle cleanly."""
    seeds = np.roots([float(c) for c in reversed(modulus)])
    dp = polys.derivative(list(modulus))
    eps = mpmath.mpf(10) ** -(EMBED_DPS + 10)
    out = []
    for z in seeds:
        r = mpmath.mpc(complex(z))
        for _ in range(60):
            d = polys.evaluate(dp, r)
            if d == 0:
                return None
            step = polys.evaluate(list(modulus), r) / d
            r -= step
            if abs(step) < eps * max(1, abs(r)):
                break
        else:
            return None
        out.append(r)
    gap = min((abs(a - b) for i, a in enumerate(out) for b in out[i + 1:]), default=1)
    if gap < mpmath.mpf(10) ** -8:
        return None
    return out


class NFElement:
    __slots__ = ("field", "residue")

    def __init__(self, field: NumberField, residue):
        self.field = field
        self.residue = field.reduce(list(residue)) if len(residue) > field.degree else tuple(
            polys.trim([Fraction(c) for c in residue])
        )

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixing elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, (Fraction(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElement(self.field, polys.add(list(self.residue), list(other.residue)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-c for c in self.residue])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = polys.mul(list(self.residue), list(other.residue))
        return NFElement(self.field, self.field.reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if not self.residue:
            raise ZeroDivisionError("inverse of zero in number field")
        # Extended Euclid: s*self + t*m = 1.
        r0, r1 = list(self.field.modulus), list(self.residue)
        s0, s1 = [], [Fraction(1)]
        while polys.degree(r1) > 0:
            q, r = polys.divmod_poly(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, polys.sub(s0, polys.mul(q, s1))
        c = Fraction(r1[0])
        return NFElement(self.field, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = NFElement(self.field, (Fraction(1),)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, NFElement) else other
        if other is NotImplemented:
            return False
        return self.field == other.field and self.residue == other.residue

    def __hash__(self):
        return hash((self.field, self.residue))

    def __bool__(self):
        return bool(self.residue)

    def is_rational(self) -> bool:
        return len(self.residue) <= 1

    def approx(self, dps: int = EMBED_DPS):
        with mpmath.workdps(dps):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in self.residue]
            return mpmath.mpc(polys.evaluate(coeffs, self.field.root))

    def __complex__(self):
        return complex(self.approx())

    def __repr__(self):
        if not self.residue:
            return "0"
        return polys.to_str(list(self.residue), "a")
