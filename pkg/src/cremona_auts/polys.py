"""Dense univariate polynomials over Z and Q.

Polynomials are plain lists of coefficients, lowest degree first.  Integer
polynomials use ``int`` entries, rational ones use ``fractions.Fraction``.
The zero polynomial is the empty list.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([c * a for a in p])


def divmod_poly(p, q):
    """Long division over Q; returns (quotient, remainder) as Fraction lists."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(p)]
    lead = Fraction(q[-1])
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [], r
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quot[k] = c
        if c:
            for i, b in enumerate(q):
                r[k + i] -= c * b
    return trim(quot), trim(r[:dq])


def exact_div(p, q):
    """Divide integer polynomials known to divide exactly; returns ints."""
    quot, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("polynomial does not divide exactly")
    if any(c.denominator != 1 for c in quot):
        raise ArithmeticError("quotient is not integral")
    return [int(c) for c in quot]


def divides(q, p) -> bool:
    return not divmod_poly(p, q)[1]


def monic(p):
    p = trim(p)
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def gcd_poly(p, q):
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a) if a else []


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def squarefree_part(p):
    """p / gcd(p, p') made primitive with integer coefficients."""
    g = gcd_poly(p, derivative(p))
    q, _ = divmod_poly(p, g)
    return primitive(q)


def primitive(p):
    """Clear denominators and content; sign fixed so the leading term is positive."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reverse(p, n=None):
    """Coefficients of x^n p(1/x); n defaults to deg p."""
    p = trim(p)
    n = len(p) - 1 if n is None else n
    out = [0] * (n + 1)
    for i, c in enumerate(p):
        out[n - i] = c
    return trim(out)


def xpow(k):
    return [0] * k + [1]


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = exact_div(p, list(cyclotomic(d)))
    return tuple(p)


def strip_cyclotomic(p):
    """Remove every cyclotomic factor from an integer polynomial.

    Returns (rest, factors) where factors maps n to the multiplicity of
    Phi_n.  Orders are bounded by phi(n) <= deg p, and phi(n) >= sqrt(n/2)
    caps the search at n <= 2 deg^2.
    """
    rest = [int(c) for c in trim(p)]
    found: dict[int, int] = {}
    n = 1
    while n <= 2 * max(1, degree(rest)) ** 2 + 2 and degree(rest) > 0:
        if euler_phi(n) <= degree(rest):
            phi = list(cyclotomic(n))
            while degree(rest) >= len(phi) - 1 and divides(phi, rest):
                rest = exact_div(rest, phi)
                found[n] = found.get(n, 0) + 1
        n += 1
    return rest, found


def to_str(p, var="x") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if (mag == 1 and k > 0) else str(mag)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = coef + mono
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out
