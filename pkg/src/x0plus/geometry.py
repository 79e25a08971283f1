"""Exact intersections of lines and planes with the canonical curve.

Lines meet a plane quartic in 4 points and planes meet the genus-4 sextic
in 6, counted with multiplicity.  Everything here is exact: restrictions
are integer binary forms, factored over Q; plane sections are resolved by
a resultant after a unimodular shear that is checked to separate points.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import algebra, linalg
from .algebra import QQ, NumberField, field_poly_gcd
from .model import CanonicalModel, HomogeneousPoly
from .points import normalize

log = logging.getLogger(__name__)

MAX_SHEARS = 32


class GeometryError(RuntimeError):
    pass


class RankError(GeometryError, ValueError):
    pass


class ComponentError(GeometryError):
    """The linear space meets the model in a positive-dimensional set."""


class SeparationError(GeometryError):
    pass


# ------------------------------------------------------------------ subspaces


@dataclass(frozen=True)
class LinearSubspace:
    span: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.span)

    def contains(self, p: Sequence) -> bool:
        return linalg.rank(list(self.span) + [list(p)]) == self.k

    def contains_subspace(self, other: "LinearSubspace") -> bool:
        return linalg.rank(list(self.span) + list(other.span)) == self.k

    def normals(self) -> list[tuple[int, ...]]:
        return linalg.kernel(self.span)


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple[int, ...]

    def subspace(self) -> LinearSubspace:
        return LinearSubspace(tuple(linalg.kernel([self.normal])))

    def contains(self, p: Sequence) -> bool:
        return sum(a * b for a, b in zip(self.normal, p)) == 0


def subspace_through(pts: Sequence[Sequence[int]]) -> LinearSubspace:
    r = linalg.rank(pts)
    if r != len(pts):
        raise RankError(f"{len(pts)} points span only rank {r}")
    return LinearSubspace(linalg.canonical_span(pts))


def subspace_of(rows: Sequence[Sequence[int]]) -> LinearSubspace:
    return LinearSubspace(linalg.canonical_span(rows))


def hyperplane_through(pts: Sequence[Sequence[int]]) -> Hyperplane:
    n = len(pts[0])
    r = linalg.rank(pts)
    if r != n - 1:
        raise RankError(f"points span rank {r}, need {n - 1} for a hyperplane")
    (normal,) = linalg.kernel(pts)
    return Hyperplane(normalize(normal))


def tangent_line(model: CanonicalModel, P: Sequence[int]) -> LinearSubspace:
    if model.gPlus != 3:
        raise ValueError("tangent lines are defined here for plane quartics only")
    (F,) = model.polys
    grad = [g(P) for g in F.gradient()]
    if not any(grad):
        raise GeometryError(f"singular point {tuple(P)}: gradient vanishes")
    return LinearSubspace(tuple(linalg.kernel([grad])))


# ------------------------------------------------------------------ binary forms


@dataclass(frozen=True)
class BinaryForm:
    """c[0] s^d + c[1] s^(d-1) t + ... + c[d] t^d."""
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, s, t):
        d = self.degree
        return sum(c * s ** (d - i) * t**i for i, c in enumerate(self.coeffs))

    def dehomogenize(self) -> list[int]:
        """p(x) = B(x, 1), lowest degree first."""
        return list(reversed(self.coeffs))

    @classmethod
    def from_poly(cls, p: Sequence, degree: int) -> "BinaryForm":
        p = list(p) + [0] * (degree + 1 - len(p))
        return cls(tuple(int(x) for x in reversed(p[:degree + 1])))

    def times(self, other: "BinaryForm") -> "BinaryForm":
        return BinaryForm.from_poly(algebra.pmul(self.dehomogenize(), other.dehomogenize()) or [0],
                                    self.degree + other.degree)

    def discriminant(self) -> int:
        if self.degree != 2:
            raise ValueError("discriminant defined here for quadratic forms")
        a, b, c = self.coeffs
        return b * b - 4 * a * c

    def __str__(self):
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "".join(v if k == 1 else f"{v}^{k}" for v, k in (("s", d - i), ("t", i)) if k)
            body = mono if abs(c) == 1 and mono else f"{abs(c)}{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts) or "0"
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _primitive_form(coeffs: Sequence[int]) -> BinaryForm:
    return BinaryForm(linalg.primitive(coeffs))


def _split_quartic(p: list[int]) -> list[list[int]] | None:
    """Quadratic x quadratic split of a primitive integer quartic without rational
    roots, by divisor enumeration; exact, no search over free coefficients."""
    a0, a1, a2, a3, a4 = p
    for b2 in algebra.divisors(a4):
        c2 = a4 // b2
        for d in algebra.divisors(a0):
            for b0 in (d, -d):
                c0 = a0 // b0
                det = c2 * b0 - b2 * c0
                cands = []
                if det:
                    num_b1 = a3 * b0 - b2 * a1
                    num_c1 = c2 * a1 - c0 * a3
                    if num_b1 % det == 0 and num_c1 % det == 0:
                        cands.append((num_b1 // det, num_c1 // det))
                else:
                    # c2 b1^2 - a3 b1 + b2 (a2 - b2 c0 - b0 c2) = 0
                    A, B, C = c2, -a3, b2 * (a2 - b2 * c0 - b0 * c2)
                    disc = B * B - 4 * A * C
                    if disc >= 0:
                        r = algebra.math.isqrt(disc)
                        if r * r == disc:
                            for num in (-B + r, -B - r):
                                if num % (2 * A) == 0:
                                    b1 = num // (2 * A)
                                    if (a3 - b1 * c2) % b2 == 0:
                                        cands.append((b1, (a3 - b1 * c2) // b2))
                for b1, c1 in cands:
                    g = [b0, b1, b2]
                    h = [c0, c1, c2]
                    if algebra.pmul(g, h) == p:
                        return [g, h]
    return None


def _split_by_roots(p: list[int]) -> list[list[int]] | None:
    """Find a proper factor of a squarefree primitive integer polynomial from
    subsets of its complex roots; candidates are verified by exact division."""
    import mpmath

    n = algebra.deg(p)
    lead = p[-1]
    norm = sum(abs(c) for c in p)
    dps = 40 + 2 * len(str(norm)) + 2 * n
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(p)), maxsteps=400, extraprec=4 * dps)
        for k in range(1, n // 2 + 1):
            for S in itertools.combinations(range(n), k):
                coeffs = [mpmath.mpc(lead)]
                for i in S:
                    coeffs = [(coeffs[j - 1] if j else 0) - roots[i] * (coeffs[j] if j < len(coeffs) else 0)
                              for j in range(len(coeffs) + 1)]
                # coeffs is lead * prod (x - r), lowest degree first
                ints = []
                ok = True
                for c in coeffs:
                    re = mpmath.nint(c.real)
                    if abs(c - re) > mpmath.mpf(10) ** (-dps // 3):
                        ok = False
                        break
                    ints.append(int(re))
                if not ok:
                    continue
                g = algebra.primitive_int(ints)
                q, r = algebra.pdivmod(p, g)
                if not r and algebra.deg(g) >= 1:
                    return [g, algebra.primitive_int(q)]
    return None


def _irreducible_factors(p: list[int]) -> list[list[int]]:
    """Factor a squarefree primitive integer polynomial with no rational roots."""
    n = algebra.deg(p)
    if n <= 3:
        return [p]
    split = _split_quartic(p) if n == 4 else _split_by_roots(p)
    if split is None:
        return [p]
    out = []
    for f in split:
        out.extend(_irreducible_factors(f))
    return out


def factor_binary_form(B: BinaryForm) -> list[tuple[BinaryForm, int]]:
    """Irreducible primitive factors with multiplicities; product is +-B / content."""
    if B.is_zero():
        raise ValueError("cannot factor the zero form")
    c = list(linalg.primitive(B.coeffs))
    out: list[tuple[BinaryForm, int]] = []
    k = 0
    while c[k] == 0:
        k += 1
    if k:
        out.append((BinaryForm((0, 1)), k))  # t
    rest = c[k:]
    d = len(rest) - 1
    p = list(reversed(rest))  # B(x, 1) with x = s/t, lowest degree first
    for f, mult in algebra.squarefree_decomposition(p):
        g = f
        for r in algebra.rational_roots(g):
            # r = a/b contributes the linear form b s - a t
            lin = [-r.numerator, r.denominator]
            g = algebra.primitive_int(algebra.pdivmod(g, lin)[0])
            out.append((_primitive_form((r.denominator, -r.numerator)), mult))
        if algebra.deg(g) >= 1:
            for h in _irreducible_factors(g):
                out.append((_primitive_form(list(reversed(h))), mult))
    total = sum(f.degree * m for f, m in out)
    if total != B.degree:
        raise AssertionError(f"factor degrees sum to {total}, form has degree {B.degree} ({d})")
    return sorted(out, key=lambda fm: (fm[0].degree, fm[0].coeffs))


def fundamental_discriminant(q: BinaryForm) -> int:
    return algebra.fundamental_discriminant_of(q.discriminant())


# ------------------------------------------------------------------ divisors


@dataclass(frozen=True)
class AlgebraicPoint:
    """A Galois orbit of points: coordinates in Q[x]/(phi), one entry per ambient variable."""
    field: NumberField
    coords: tuple[tuple, ...]

    def normalized(self) -> tuple[tuple, ...]:
        F = self.field
        lead = next(c for c in self.coords if not F.is_zero(c))
        inv = F.inv(lead)
        return tuple(F.mul(c, inv) for c in self.coords)

    def coordinate_minpolys(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.field.minpoly(c)) for c in self.normalized())

    def approximations(self) -> list[tuple[complex, ...]]:
        F = self.field
        out = []
        for root in F.roots():
            vals = [F.embed(c, root) for c in self.normalized()]
            out.append(tuple(vals))
        return out


@dataclass(frozen=True)
class DivisorEntry:
    kind: str                     # "rational", "quadratic" or "higher"
    multiplicity: int
    point: tuple[int, ...] | None = None        # rational points
    minpoly: tuple[int, ...] | None = None      # lowest degree first
    discriminant: int | None = None             # fundamental, quadratic only
    degree: int = 1
    orbit: AlgebraicPoint | None = field(default=None, compare=False, repr=False)
    key: tuple = ()

    @property
    def weight(self) -> int:
        return self.multiplicity * self.degree


@dataclass(frozen=True)
class IntersectionDivisor:
    entries: tuple[DivisorEntry, ...]

    @property
    def degree(self) -> int:
        return sum(e.weight for e in self.entries)

    @property
    def fully_rational(self) -> bool:
        return all(e.kind == "rational" for e in self.entries)

    def rational_points(self) -> dict[tuple[int, ...], int]:
        return {e.point: e.multiplicity for e in self.entries if e.kind == "rational"}

    def canonical(self) -> tuple:
        return tuple(sorted((e.kind, e.multiplicity, e.point or (), e.key) for e in self.entries))


def _entry(orbit: AlgebraicPoint, mult: int) -> DivisorEntry:
    F = orbit.field
    if F.degree == 1:
        pt = normalize(linalg.scale_to_integers([c[0] for c in orbit.coords]))
        return DivisorEntry("rational", mult, point=pt)
    mins = orbit.coordinate_minpolys()
    full = next((m for m in mins if algebra.deg(m) == F.degree), None)
    if full is None:
        full = next(m for m in mins if algebra.deg(m) > 1)
    if F.degree == 2:
        a0, a1, a2 = full
        disc = algebra.fundamental_discriminant_of(a1 * a1 - 4 * a2 * a0)
        return DivisorEntry("quadratic", mult, minpoly=tuple(full), discriminant=disc,
                            degree=2, orbit=orbit, key=mins)
    return DivisorEntry("higher", mult, minpoly=tuple(full), degree=F.degree, orbit=orbit, key=mins)


def _orbit_for_factor(f: BinaryForm, rows: Sequence[Sequence]) -> tuple[NumberField, tuple, tuple]:
    """Field and (s, t) values of a root of the irreducible factor f."""
    if f.degree == 1:
        a, b = f.coeffs  # a s + b t = 0  ->  (s:t) = (-b : a)
        F = NumberField([0, 1])
        return F, F.coerce(-b), F.coerce(a)
    F = NumberField(f.dehomogenize())
    return F, F.gen(), F.one


def restrict_to_line(F: HomogeneousPoly, L: LinearSubspace) -> BinaryForm:
    if L.k != 2:
        raise RankError("restriction needs a line (rank 2 span)")
    g = F.pullback(L.span)
    d = F.degree
    coeffs = dict(g.terms)
    B = BinaryForm(tuple(coeffs.get((d - i, i), 0) for i in range(d + 1)))
    if B.is_zero():
        raise ComponentError("the line lies on the curve (restriction vanishes identically)")
    return B


def line_divisor(model: CanonicalModel, L: LinearSubspace) -> IntersectionDivisor:
    (F,) = model.polys
    B = restrict_to_line(F, L)
    entries = []
    A, C = L.span
    for f, m in factor_binary_form(B):
        K, s, t = _orbit_for_factor(f, L.span)
        coords = tuple(K.add(K.mul(s, K.coerce(a)), K.mul(t, K.coerce(c))) for a, c in zip(A, C))
        entries.append(_entry(AlgebraicPoint(K, coords), m))
    div = IntersectionDivisor(tuple(sorted(entries, key=_entry_order)))
    if div.degree != F.degree:
        raise AssertionError(f"line divisor has degree {div.degree}")
    return div


def _entry_order(e: DivisorEntry):
    return (e.kind != "rational", e.point or (), e.degree, e.key)


def plane_section(model: CanonicalModel, plane: LinearSubspace) -> tuple[HomogeneousPoly, HomogeneousPoly]:
    if model.gPlus != 4:
        raise ValueError("plane sections are for the genus-4 model")
    if plane.k != 3 or linalg.rank(plane.span) != 3:
        raise RankError("plane needs a rank-3 span")
    quad, cubic = sorted(model.polys, key=lambda p: p.degree)
    c2 = quad.pullback(plane.span)
    c3 = cubic.pullback(plane.span)
    if c2.is_zero():
        raise ComponentError("plane lies inside the quadric")
    if c3.is_zero():
        raise ComponentError("plane lies inside the cubic surface")
    return c2, c3


def _in_u(poly: HomogeneousPoly, s, t, F) -> list:
    """Specialize a ternary form at (s, t, u) to a polynomial in u over F."""
    out = [F.zero] * (poly.degree + 1)
    for (i, j, k), c in poly.terms:
        term = F.coerce(c)
        for _ in range(i):
            term = F.mul(term, s)
        for _ in range(j):
            term = F.mul(term, t)
        out[k] = F.add(out[k], term)
    return out


def _resultant_form(c2: HomogeneousPoly, c3: HomogeneousPoly) -> BinaryForm:
    """Res_u as a degree-6 binary form in (s, t), by interpolation on t = 1."""
    xs = list(range(-3, 4))
    ys = []
    for x in xs:
        a = [int(v) for v in _in_u(c2, x, 1, QQ)]
        b = [int(v) for v in _in_u(c3, x, 1, QQ)]
        ys.append(algebra.sylvester_resultant(a, b))
    coeffs = algebra.interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError("resultant interpolation is not integral")
    return BinaryForm.from_poly([int(c) for c in coeffs], 6)


def _shears(seed: int | None):
    """The identity first (unless seeded), then seeded random unimodular shears."""
    n = MAX_SHEARS
    if seed is None:
        yield (0, 0)
        n -= 1
    rng = random.Random(seed if seed is not None else 0)
    for i in range(n):
        r = 2 + i // 4
        yield (rng.randint(-r, r), rng.randint(-r, r))


def conic_cubic_divisor(conic: HomogeneousPoly, cubic: HomogeneousPoly,
                        span: Sequence[Sequence[int]] | None = None,
                        seed: int | None = None) -> IntersectionDivisor:
    """Divisor of {conic = cubic = 0} in P^2 (or mapped through ``span`` into P^n)."""
    span = span or [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    attempts = []
    for a, b in _shears(seed):
        # s = s' + a u', t = t' + b u', u = u'
        rows = [(1, 0, 0), (0, 1, 0), (a, b, 1)]
        q2, q3 = conic.pullback(rows), cubic.pullback(rows)
        if not (q2.as_dict().get((0, 0, 2)) and q3.as_dict().get((0, 0, 3))):
            attempts.append((a, b, "leading coefficient vanishes"))
            continue
        R = _resultant_form(q2, q3)
        if R.is_zero():
            raise ComponentError("conic and cubic share a component (zero resultant)")
        try:
            entries = _resolve(q2, q3, R, (a, b), span)
        except SeparationError as exc:
            attempts.append((a, b, str(exc)))
            continue
        div = IntersectionDivisor(tuple(sorted(entries, key=_entry_order)))
        if div.degree != 6:
            raise AssertionError(f"plane divisor has degree {div.degree}")
        return div
    raise SeparationError(f"no separating shear in {MAX_SHEARS} attempts: {attempts[-3:]}")


def _resolve(q2, q3, R, shear, span) -> list[DivisorEntry]:
    a, b = shear
    entries = []
    for f, m in factor_binary_form(R):
        K, s, t = _orbit_for_factor(f, None)
        g = field_poly_gcd(_in_u(q2, s, t, K), _in_u(q3, s, t, K), K)
        if len(g) != 2:
            raise SeparationError(f"fiber over root of {f} has {len(g) - 1} common roots")
        u = K.sub(K.zero, g[0])  # monic linear: u + g0
        # undo the shear, then map through the plane parametrization
        S = K.add(s, K.mul(K.coerce(a), u))
        T = K.add(t, K.mul(K.coerce(b), u))
        local = (S, T, u)
        coords = []
        for j in range(len(span[0])):
            acc = K.zero
            for r in range(3):
                if span[r][j]:
                    acc = K.add(acc, K.mul(K.coerce(span[r][j]), local[r]))
            coords.append(acc)
        entries.append(_entry(AlgebraicPoint(K, tuple(coords)), m))
    return entries


def plane_divisor(model: CanonicalModel, plane: LinearSubspace, seed: int | None = None) -> IntersectionDivisor:
    c2, c3 = plane_section(model, plane)
    div = conic_cubic_divisor(c2, c3, plane.span, seed)
    for pt in div.rational_points():
        if not model.contains(pt):
            raise AssertionError(f"divisor point {pt} is not on the model")
    return div

