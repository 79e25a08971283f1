"""Canonical models of X_0^+(N) from q-expansions.

Genus 3: the unique quartic relation among the three basis forms.
Genus 4: the unique quadric plus one cubic generating the cubic relations
modulo the multiples of the quadric.
"""
from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from . import linalg
from .arith import sturm_bound
from .qseries import QSeries, is_zero_to, monomial_eval, mul

log = logging.getLogger(__name__)

Exponents = tuple[int, ...]


class ModelError(RuntimeError):
    """Relation spaces have the wrong shape for a canonical curve."""


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Exponents, ...]:
    """Exponent vectors of total ``degree``, largest first in lex order."""
    if nvars < 1 or degree < 0:
        raise ValueError("need nvars >= 1 and degree >= 0")
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        out.extend((e,) + rest for rest in monomials(nvars - 1, degree - e))
    assert len(out) == comb(nvars + degree - 1, degree)
    return tuple(out)


@dataclass(frozen=True)
class HomogeneousPoly:
    nvars: int
    degree: int
    terms: tuple[tuple[Exponents, int], ...]  # graded-lex order, nonzero coefficients

    @classmethod
    def from_dict(cls, nvars: int, degree: int, terms: Mapping[Exponents, int],
                  normalize: bool = False) -> "HomogeneousPoly":
        for e in terms:
            if len(e) != nvars or sum(e) != degree:
                raise ValueError(f"exponent {e} does not fit ({nvars} vars, degree {degree})")
        ordered = [(e, int(terms[e])) for e in monomials(nvars, degree) if terms.get(e)]
        if normalize and ordered:
            prim = linalg.primitive([c for _, c in ordered])
            ordered = [(e, c) for (e, _), c in zip(ordered, prim)]
        return cls(nvars, degree, tuple(ordered))

    @classmethod
    def from_vector(cls, nvars: int, degree: int, vec: Sequence[int],
                    normalize: bool = True) -> "HomogeneousPoly":
        return cls.from_dict(nvars, degree, dict(zip(monomials(nvars, degree), vec)), normalize)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "HomogeneousPoly":
        """Parse a sum of monomials such as ``"XY + 2Y^2 - 5XYZ"``.

        Variable names must be single characters; juxtaposition multiplies.
        """
        index = {v: i for i, v in enumerate(variables)}
        src = text.replace(" ", "").replace("*", "")
        if src and src[0] not in "+-":
            src = "+" + src
        terms: dict[Exponents, int] = {}
        degree = None
        for sign, num, body in re.findall(r"([+-])(\d*)([A-Za-z](?:\^\d+)?(?:[A-Za-z](?:\^\d+)?)*)", src):
            exps = [0] * len(variables)
            for var, power in re.findall(r"([A-Za-z])(?:\^(\d+))?", body):
                exps[index[var]] += int(power or 1)
            e = tuple(exps)
            c = int(num or 1) * (-1 if sign == "-" else 1)
            terms[e] = terms.get(e, 0) + c
            if degree is None:
                degree = sum(e)
        rebuilt = re.sub(r"([+-])(\d*)([A-Za-z](?:\^\d+)?(?:[A-Za-z](?:\^\d+)?)*)", "", src)
        if rebuilt or degree is None:
            raise ValueError(f"could not parse polynomial {text!r}")
        return cls.from_dict(len(variables), degree, {e: c for e, c in terms.items() if c})

    def as_dict(self) -> dict[Exponents, int]:
        return dict(self.terms)

    def vector(self) -> list[int]:
        d = self.as_dict()
        return [d.get(e, 0) for e in monomials(self.nvars, self.degree)]

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, point: Sequence) -> object:
        total = 0
        for e, c in self.terms:
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total += v
        return total

    def gradient(self) -> list["HomogeneousPoly"]:
        out = []
        for i in range(self.nvars):
            d: dict[Exponents, int] = {}
            for e, c in self.terms:
                if e[i]:
                    f = list(e)
                    f[i] -= 1
                    d[tuple(f)] = d.get(tuple(f), 0) + c * e[i]
            out.append(HomogeneousPoly.from_dict(self.nvars, self.degree - 1, d))
        return out

    def pullback(self, rows: Sequence[Sequence]) -> "HomogeneousPoly":
        """Substitute x = sum_k y_k rows[k]; result is a form in len(rows) variables."""
        k = len(rows)
        linear = [{tuple(int(j == r) for j in range(k)): rows[r][i] for r in range(k) if rows[r][i]}
                  for i in range(self.nvars)]
        powers: dict[tuple[int, int], dict] = {}

        def power(i: int, e: int) -> dict:
            if (i, e) not in powers:
                powers[(i, e)] = ({(0,) * k: 1} if e == 0 else _pmul(power(i, e - 1), linear[i]))
            return powers[(i, e)]

        acc: dict[Exponents, int] = {}
        for e, c in self.terms:
            prod = {(0,) * k: c}
            for i, ei in enumerate(e):
                if ei:
                    prod = _pmul(prod, power(i, ei))
            for m, v in prod.items():
                acc[m] = acc.get(m, 0) + v
        return HomogeneousPoly.from_dict(k, self.degree, {m: v for m, v in acc.items() if v})

    def times(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        prod = _pmul(self.as_dict(), other.as_dict())
        return HomogeneousPoly.from_dict(self.nvars, self.degree + other.degree,
                                         {m: v for m, v in prod.items() if v})

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.terms:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+") + " " + body)
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "degree": self.degree,
                "terms": [[list(e), c] for e, c in self.terms]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "HomogeneousPoly":
        return cls.from_dict(obj["nvars"], obj["degree"],
                             {tuple(e): c for e, c in obj["terms"]})


def _pmul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return out


@dataclass(frozen=True)
class CanonicalModel:
    N: int
    gPlus: int
    polys: tuple[HomogeneousPoly, ...]

    def __post_init__(self):
        degrees = sorted(p.degree for p in self.polys)
        want = {3: [4], 4: [2, 3]}.get(self.gPlus)
        if want is not None and degrees != want:
            raise ValueError(f"genus {self.gPlus} model needs degrees {want}, got {degrees}")
        if any(p.nvars != self.gPlus for p in self.polys):
            raise ValueError("every polynomial must have gPlus variables")

    @property
    def degree(self) -> int:
        """Degree of the canonical curve, 2g - 2."""
        return 2 * self.gPlus - 2

    def contains(self, point: Sequence[int]) -> bool:
        return all(p(point) == 0 for p in self.polys)

    def to_json(self) -> dict:
        return {"N": self.N, "gPlus": self.gPlus,
                "variables": [f"x{i}" for i in range(self.gPlus)],
                "polys": [p.to_json() for p in self.polys]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "CanonicalModel":
        return cls(obj["N"], obj["gPlus"], tuple(HomogeneousPoly.from_json(p) for p in obj["polys"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _monomial_columns(forms: Sequence[QSeries], degree: int, rows: int) -> list[list[int]]:
    """Rows = q-indices 1..rows, columns = degree-``degree`` monomials."""
    forms = [f.truncate(rows) for f in forms]
    cache: dict[Exponents, QSeries] = {}

    def series(e: Exponents) -> QSeries:
        if e not in cache:
            i = next(k for k, x in enumerate(e) if x)
            if sum(e) == 1:
                cache[e] = forms[i]
            else:
                rest = list(e)
                rest[i] -= 1
                cache[e] = mul(series(tuple(rest)), forms[i])
        return cache[e]

    cols = [series(e).coeffs for e in monomials(len(forms), degree)]
    return [[c[n] for c in cols] for n in range(rows)]


def relation_space(basis, degree: int) -> list[tuple[int, ...]]:
    """Integer kernel of the monomial-series matrix through the Sturm bound."""
    bound = sturm_bound(basis.N, 2 * degree)
    if basis.prec < bound:
        raise ValueError(f"precision {basis.prec} below Sturm bound {bound} "
                         f"for weight {2 * degree} at N={basis.N}")
    M = _monomial_columns(basis.forms, degree, bound)
    return linalg.kernel(M, len(monomials(basis.gPlus, degree)))


def _reduce_size(vec: list[int], lattice: Sequence[Sequence[int]]) -> list[int]:
    """Greedily subtract small multiples of lattice vectors to shrink max |coef|."""
    def size(v):
        return (max(abs(x) for x in v), sum(abs(x) for x in v))

    best = list(vec)
    improved = True
    while improved:
        improved = False
        for b in lattice:
            for k in (1, -1, 2, -2, 3, -3):
                cand = [x - k * y for x, y in zip(best, b)]
                if size(cand) < size(best):
                    best, improved = cand, True
                    break
    return best


def build_model(basis) -> CanonicalModel:
    g = basis.gPlus
    if g not in (3, 4):
        raise ValueError(f"only genus 3 and 4 are supported, got {g}")
    if relation_space(basis, 1):
        raise ModelError("basis forms are linearly dependent (nonzero linear relations)")
    quad = relation_space(basis, 2)
    if g == 3:
        if quad:
            raise ModelError("quadric relation in genus 3: hyperelliptic or degenerate basis")
        quart = relation_space(basis, 4)
        if len(quart) != 1:
            raise ModelError(f"expected one quartic relation, found {len(quart)}")
        model = CanonicalModel(basis.N, 3, (HomogeneousPoly.from_vector(3, 4, quart[0]),))
    else:
        if len(quad) != 1:
            raise ModelError(f"expected one quadric relation, found {len(quad)}")
        Q = HomogeneousPoly.from_vector(4, 2, quad[0])
        cubics = relation_space(basis, 3)
        if len(cubics) != 5:
            raise ModelError(f"expected five cubic relations, found {len(cubics)} (trigonal degeneracy?)")
        LQ = [Q.times(HomogeneousPoly.from_vector(4, 1, e, normalize=False)).vector()
              for e in monomials(4, 1)]
        LQ_span = linalg.canonical_span(LQ)
        if len(LQ_span) != 4:
            raise ModelError("multiples of the quadric are dependent")
        cubic = _cubic_mod_quadric(cubics, LQ, LQ_span)
        model = CanonicalModel(basis.N, 4, (Q, HomogeneousPoly.from_vector(4, 3, cubic)))
    log.info("N=%d model: %s", basis.N, " ; ".join(p.to_string() for p in model.polys))
    return model


def _cubic_mod_quadric(cubics, LQ, LQ_span) -> list[int]:
    _, pivots = linalg.rref(LQ_span)
    outside = [c for c in cubics if linalg.rank(list(LQ_span) + [c]) == 5]
    if not outside:
        raise ModelError("every cubic relation is a multiple of the quadric")
    if linalg.rank(list(LQ_span) + list(cubics)) != 5:
        raise ModelError("cubic relations do not contain the quadric multiples")
    R, _ = linalg.rref(LQ_span)
    v = [Fraction(x) for x in outside[0]]
    for row, p in zip(R, pivots):
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    reduced = list(linalg.scale_to_integers(v))
    return list(linalg.primitive(_reduce_size(reduced, LQ)))


def verify_model(model: CanonicalModel, basis) -> bool:
    for p in model.polys:
        bound = sturm_bound(basis.N, 2 * p.degree)
        if basis.prec < bound:
            raise ValueError(f"precision {basis.prec} below Sturm bound {bound}")
        forms = [f.truncate(bound) for f in basis.forms]
        total = QSeries.zero(bound)
        for e, c in p.terms:
            s = monomial_eval(forms, e)
            total = QSeries(tuple(a + c * b for a, b in zip(total.coeffs, s.coeffs)))
        if not is_zero_to(total, bound):
            return False
    return True


def ideal_contains(model: CanonicalModel, poly: HomogeneousPoly) -> bool:
    """Whether ``poly`` is in the degree-d graded piece of the model's ideal."""
    gens = []
    for p in model.polys:
        if p.degree <= poly.degree:
            for e in monomials(model.gPlus, poly.degree - p.degree):
                mono = HomogeneousPoly.from_dict(model.gPlus, poly.degree - p.degree, {e: 1})
                gens.append(p.times(mono).vector())
    if not gens:
        return poly.is_zero()
    return linalg.rank(gens + [poly.vector()]) == linalg.rank(gens)
