"""Dense univariate polynomials over Q and arithmetic in simple number fields.

Polynomials are lists of coefficients, lowest degree first.  Fields expose
``zero``, ``one``, ``add``, ``sub``, ``mul``, ``inv``, ``is_zero`` so the
same Euclidean gcd works over Q and over Q[x]/(phi).
"""
from __future__ import annotations

import math
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from . import linalg

Poly = list


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: Sequence) -> int:
    return len(trim(p)) - 1


def padd(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a, b):
    return padd(a, [-x for x in b])


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def pdivmod(a, b):
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a = trim(a)
    return trim(q), a


def pgcd(a, b):
    """Monic gcd over Q."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def deriv(p):
    return trim([i * p[i] for i in range(1, len(p))])


def peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive_int(p) -> list[int]:
    """Scale a rational polynomial to a primitive integer one with positive leading coefficient."""
    p = trim(p)
    if not p:
        return []
    den = math.lcm(*(Fraction(x).denominator for x in p))
    ints = [int(Fraction(x) * den) for x in p]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def squarefree_decomposition(p) -> list[tuple[list[int], int]]:
    """Yun's algorithm: p = c * prod f_i^i with f_i squarefree and coprime."""
    p = trim(p)
    out = []
    if deg(p) < 1:
        return out
    a = pgcd(p, deriv(p))
    b = pdivmod(p, a)[0]
    c = pdivmod(deriv(p), a)[0]
    d = psub(c, deriv(b))
    i = 1
    while deg(b) > 0:
        a = pgcd(b, d)
        b = pdivmod(b, a)[0]
        c = pdivmod(d, a)[0]
        d = psub(c, deriv(b))
        if deg(a) > 0:
            out.append((primitive_int(a), i))
        i += 1
    return out


def divisors(n: int) -> list[int]:
    from sympy import divisors as _divisors
    return [int(d) for d in _divisors(abs(int(n)))]


def rational_roots(p: Sequence[int]) -> list[Fraction]:
    """Distinct rational roots of an integer polynomial (rational root theorem)."""
    p = trim(p)
    if deg(p) < 1:
        return []
    k = 0
    while p[k] == 0:
        k += 1
    roots = [Fraction(0)] if k else []
    p = primitive_int(p[k:])
    if len(p) == 1:
        return roots
    # Cauchy bound prunes candidates
    bound = 1 + max(abs(Fraction(c, p[-1])) for c in p[:-1])
    for q in divisors(p[-1]):
        for a in divisors(p[0]):
            if Fraction(a, q) > bound or math.gcd(a, q) != 1:
                continue
            for num in (a, -a):
                # homogenized evaluation stays in the integers
                if sum(c * num**i * q ** (len(p) - 1 - i) for i, c in enumerate(p)) == 0:
                    roots.append(Fraction(num, q))
    return sorted(set(roots))


def sylvester_resultant(a: Sequence, b: Sequence):
    """Resultant of two univariate polynomials with exact (integer) coefficients."""
    a, b = trim(a), trim(b)
    m, n = deg(a), deg(b)
    if m < 0 or n < 0:
        return 0
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    if all(isinstance(x, int) for r in rows for x in r):
        return linalg.det(rows)
    return _det_fraction(rows)


def _det_fraction(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


@lru_cache(maxsize=32)
def _lagrange_basis(xs: tuple[int, ...]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(xs)
    out = []
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j != i:
                basis = pmul(basis, [Fraction(-xs[j]), Fraction(1)]) or [Fraction(0)]
                denom *= xs[i] - xs[j]
        basis = basis + [Fraction(0)] * (n - len(basis))
        out.append(tuple(Fraction(c) / denom for c in basis))
    return tuple(out)


def interpolate(xs: Sequence[int], ys: Sequence) -> list[Fraction]:
    """Coefficients of the unique polynomial of degree < len(xs) through the points."""
    basis = _lagrange_basis(tuple(xs))
    n = len(xs)
    return [sum((basis[i][k] * ys[i] for i in range(n) if ys[i]), Fraction(0)) for k in range(n)]


# ----------------------------------------------------------------- fields


class Rationals:
    zero = Fraction(0)
    one = Fraction(1)
    degree = 1

    @staticmethod
    def coerce(x):
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def is_zero(a):
        return a == 0


QQ = Rationals()


class NumberField:
    """Q[x]/(phi) for an irreducible integer polynomial phi; elements are tuples
    of ``degree`` Fractions in the power basis 1, x, x^2, ..."""

    def __init__(self, phi: Sequence[int]):
        self.phi = primitive_int(phi)
        self.degree = deg(self.phi)
        if self.degree < 1:
            raise ValueError("defining polynomial must be nonconstant")
        self.zero = (Fraction(0),) * self.degree
        self.one = self.coerce(1)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.phi == other.phi

    def __hash__(self):
        return hash(tuple(self.phi))

    def _reduce(self, p) -> tuple:
        r = pdivmod(p, self.phi)[1] if deg(p) >= self.degree else [Fraction(x) for x in trim(p)]
        r = list(r) + [Fraction(0)] * (self.degree - len(r))
        return tuple(r)

    def coerce(self, x) -> tuple:
        if isinstance(x, tuple):
            return x
        return self._reduce([Fraction(x)])

    def gen(self) -> tuple:
        return self._reduce([0, 1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        return self._reduce(pmul(list(a), list(b)))

    def is_zero(self, a):
        return not any(a)

    def is_rational(self, a):
        return not any(a[1:])

    def inv(self, a):
        # extended Euclid on (a, phi)
        r0, r1 = [Fraction(x) for x in self.phi], trim(list(a))
        s0, s1 = [], [Fraction(1)]
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        while deg(r1) > 0:
            q, r = pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, psub(s0, pmul(q, s1))
        if not r1:
            raise ZeroDivisionError("element not invertible (phi reducible?)")
        c = Fraction(r1[0])
        return self._reduce([x / c for x in s1])

    def minpoly(self, a) -> list[int]:
        """Primitive integer minimal polynomial of ``a`` over Q."""
        powers = [self.one]
        while True:
            k = len(powers)
            M = [[p[i] for p in powers] for i in range(self.degree)]
            den = math.lcm(*(x.denominator for row in M for x in row)) if M else 1
            Mi = [[int(x * den) for x in row] for row in M]
            ker = linalg.kernel(Mi, k) if k > 1 else []
            if ker:
                return primitive_int(list(ker[0]))
            powers.append(self.mul(powers[-1], a))

    def roots(self, dps: int = 30) -> list[complex]:
        import mpmath
        with mpmath.workdps(dps):
            return [complex(r) for r in mpmath.polyroots(list(reversed(self.phi)), maxsteps=200, extraprec=200)]

    def embed(self, a, root: complex) -> complex:
        return complex(peval(list(a), root))


def field_poly_gcd(a: list, b: list, F) -> list:
    """Monic gcd of polynomials with coefficients in field F (lowest degree first)."""
    def strip(p):
        p = list(p)
        while p and F.is_zero(p[-1]):
            p.pop()
        return p

    def mod(x, y):
        x = strip(x)
        inv_lead = F.inv(y[-1])
        while len(x) >= len(y) and x:
            f = F.mul(x[-1], inv_lead)
            k = len(x) - len(y)
            for i, c in enumerate(y):
                x[i + k] = F.sub(x[i + k], F.mul(f, c))
            x = strip(x)
        return x

    a, b = strip(a), strip(b)
    while b:
        a, b = b, mod(a, b)
    if not a:
        return []
    inv_lead = F.inv(a[-1])
    return [F.mul(c, inv_lead) for c in a]


def squarefree_part(n: int) -> int:
    from sympy import factorint
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= int(p)
    return sign * out


def fundamental_discriminant_of(disc: int) -> int:
    if disc == 0:
        raise ValueError("zero discriminant")
    root = math.isqrt(disc) if disc > 0 else -1
    if disc > 0 and root * root == disc:
        raise ValueError(f"discriminant {disc} is a square: the form is reducible")
    d0 = squarefree_part(disc)
    return d0 if d0 % 4 == 1 else 4 * d0
