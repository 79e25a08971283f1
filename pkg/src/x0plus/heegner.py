"""Heegner points on X_0^+(N): forms, numerical images, and CM labels."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .arith import check_discriminant
from .ingest import tail_bound

log = logging.getLogger(__name__)

# the thirteen class-number-one discriminants; configurable per call
ADMISSIBLE_D = (-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163)
CUSP = 0
EXCEPTIONAL = "Exceptional"
UNKNOWN = "Unknown"

DEFAULT_TERMS = 400
DEFAULT_TOL = 1e-6
DEFAULT_CEILING = 1e-8
CUSP_IM = 5.0


class PrecisionError(ArithmeticError):
    """The truncation error bound exceeds the allowed ceiling."""


class AmbiguousMatch(LookupError):
    pass


@dataclass(frozen=True)
class HeegnerForm:
    A: int
    B: int
    C: int

    @property
    def D(self) -> int:
        return self.B * self.B - 4 * self.A * self.C


def heegner_forms(N: int, D: int) -> list[HeegnerForm]:
    """One form (N a, B, C) per square root B of D modulo 4N, B taken mod 2N."""
    check_discriminant(D)
    out = []
    for B0 in range(2 * N):
        if (B0 * B0 - D) % (4 * N):
            continue
        a = 1
        while True:
            A = N * a
            # the B = B0 (mod 2N) representatives inside (-A, A]
            Bs = sorted((B for B in range(B0 - 2 * N * a, B0 + 2 * N * a + 1, 2 * N) if -A < B <= A),
                        key=lambda b: (abs(b), -b))
            hit = next((HeegnerForm(A, B, (B * B - D) // (4 * A)) for B in Bs
                        if (B * B - D) % (4 * A) == 0
                        and math.gcd(A, B, (B * B - D) // (4 * A)) == 1), None)
            if hit:
                out.append(hit)
                break
            a += 1
    return out


def tau_of(f: HeegnerForm) -> complex:
    D = f.D
    return complex(-f.B / (2 * f.A), math.sqrt(-D) / (2 * f.A))


@dataclass(frozen=True)
class ComplexProjPoint:
    coords: np.ndarray
    err: float          # certified truncation bound per coordinate
    rounding: float = 0.0  # floating-point summation estimate

    def normalized(self, index: int | None = None) -> tuple[np.ndarray, float]:
        """Scale so coordinate ``index`` (default: largest) is 1; return (z, error bound)."""
        if index is None:
            index = int(np.argmax(np.abs(self.coords)))
        big = abs(self.coords[index])
        e = self.err + self.rounding
        if big <= e:
            return self.coords / self.coords[index], math.inf
        return self.coords / self.coords[index], 2 * e / (big - e)


def eval_map(basis, tau: complex, terms: int = DEFAULT_TERMS,
             ceiling: float = DEFAULT_CEILING, dps: int | None = None) -> ComplexProjPoint:
    """Image of tau under the canonical map, truncated after ``terms`` coefficients.

    ``dps=None`` uses the float64 kernel; an integer switches to mpmath with
    that many decimal digits (needed when Im(tau) is small and the series
    cancels heavily).
    """
    if terms > basis.prec:
        raise ValueError(f"terms={terms} exceeds fixture precision {basis.prec}")
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    err = tail_bound(terms, tau.imag)
    if err > ceiling:
        raise PrecisionError(f"tail bound {err:.2e} > {ceiling:.0e} at Im(tau)={tau.imag:.4g}, terms={terms}")
    if dps is None:
        vals, mags = _kernels.series_values(basis.coefficient_matrix(terms), tau)
        rounding = float((terms + 4) * np.finfo(float).eps * np.max(mags))
    else:
        rows = [f.coeffs[:terms] for f in basis.forms]
        vals, mags, rounding = _kernels.series_values_mp(rows, tau, dps)
    return ComplexProjPoint(np.asarray(vals), err, rounding)


def _distances(z: ComplexProjPoint, candidates: Sequence[Sequence[int]]):
    zn, zerr = z.normalized()
    k = int(np.argmax(np.abs(z.coords)))
    out = []
    for c in candidates:
        if c[k] == 0:
            out.append(math.inf)
            continue
        cn = np.asarray(c, dtype=float) / c[k]
        out.append(float(np.max(np.abs(zn - cn))))
    return out, zerr


def match_point(z: ComplexProjPoint, candidates: Sequence[Sequence[int]], tol: float = DEFAULT_TOL):
    dists, zerr = _distances(z, candidates)
    if not tol > 10 * zerr:
        raise PrecisionError(f"tolerance {tol:.0e} not above 10x normalized error {zerr:.2e}")
    hits = [c for c, d in zip(candidates, dists) if d < tol]
    if len(hits) > 1:
        raise AmbiguousMatch(f"{len(hits)} candidates within {tol:.0e}: {hits}")
    return tuple(hits[0]) if hits else None


@dataclass
class LabelResult:
    labels: dict = field(default_factory=dict)       # point -> D, EXCEPTIONAL or UNKNOWN
    margins: dict = field(default_factory=dict)      # D -> second-nearest distance
    distances: dict = field(default_factory=dict)    # D -> nearest distance
    terms_used: dict = field(default_factory=dict)   # D -> terms needed
    diagnostics: list = field(default_factory=list)

    def by_label(self) -> dict:
        return {v: k for k, v in self.labels.items() if isinstance(v, int)}


DPS_LADDER = (None, 40, 80, 160)


def _evaluate(basis, tau, terms, ceiling, tol):
    """eval_map, raising terms (up to the fixture precision) and working precision
    until the normalized error is below tol / 10."""
    t = min(terms, basis.prec)
    level = 0
    while True:
        try:
            z = eval_map(basis, tau, t, ceiling, DPS_LADDER[level])
        except PrecisionError:
            if t >= basis.prec:
                raise
            t = min(basis.prec, int(t * 1.5) + 1)
            continue
        _, zerr = z.normalized()
        if 10 * zerr < tol:
            return z, t
        if z.err >= z.rounding and t < basis.prec:
            t = min(basis.prec, int(t * 1.5) + 1)
        elif z.rounding > z.err and level + 1 < len(DPS_LADDER):
            level += 1
        else:
            return z, t


def label_points(N: int, basis, model, pts: Sequence[Sequence[int]], terms: int = DEFAULT_TERMS,
                 tol: float = DEFAULT_TOL, ceiling: float = DEFAULT_CEILING,
                 discriminants: Sequence[int] = ADMISSIBLE_D) -> LabelResult:
    """Attach CM discriminants (0 for the cusp) to rational points by numerical matching."""
    pts = sorted(tuple(p) for p in pts)
    res = LabelResult()
    matched: dict[tuple, int] = {}
    conclusive = True

    def record(D, tau, rep_terms):
        nonlocal conclusive
        try:
            z, used = _evaluate(basis, tau, rep_terms, ceiling, tol)
            dists, zerr = _distances(z, pts)
            hit = match_point(z, pts, tol)
        except (PrecisionError, AmbiguousMatch) as exc:
            res.diagnostics.append(f"D={D}: {exc}")
            conclusive = False
            return None, False
        order = sorted(dists)
        res.terms_used[D] = max(res.terms_used.get(D, 0), used)
        if hit is not None:
            res.distances[D] = order[0]
            res.margins[D] = order[1] if len(order) > 1 else math.inf
            if res.margins[D] < 1e3 * tol:
                log.warning("N=%d D=%d: second-nearest candidate only %.2e away", N, D, res.margins[D])
        return hit, True

    hit, ok = record(CUSP, complex(0, CUSP_IM), min(terms, 50))
    if hit is not None:
        matched[hit] = CUSP
    for D in discriminants:
        forms = heegner_forms(N, D)
        if not forms:
            continue
        forms.sort(key=lambda f: (f.A, abs(f.B), -f.B))
        hits = []
        for f in forms:
            h, ok = record(D, tau_of(f), terms)
            if ok:
                hits.append(h)
        if len(set(hits)) > 1:
            res.diagnostics.append(f"D={D}: representatives disagree {sorted(set(hits), key=str)}")
            conclusive = False
            continue
        if hits and hits[0] is not None:
            p = hits[0]
            if p in matched and matched[p] != D:
                res.diagnostics.append(f"point {p} matched by both D={matched[p]} and D={D}")
                conclusive = False
                matched[p] = None
            else:
                matched[p] = D
            if not model.contains(p):
                raise AssertionError(f"matched point {p} is not on the model")
    for p in pts:
        lab = matched.get(p)
        if lab is not None:
            res.labels[p] = lab
        else:
            res.labels[p] = EXCEPTIONAL if conclusive else UNKNOWN
    for d in res.diagnostics:
        log.info("N=%d: %s", N, d)
    return res
