"""Lines and planes spanned by rational points, their divisors, and how they meet.

Candidates are the subspaces spanned by known rational points (plus the
tangent line at each point of a plane quartic).  A report is *fully
rational* when every point of its intersection divisor is rational.  An
optional sweep over all hyperplanes with small normals bounds the claim
that nothing was missed outside point spans.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import geometry, linalg
from .geometry import (GeometryError, Hyperplane, IntersectionDivisor, LinearSubspace, RankError)
from .model import CanonicalModel
from .points import normalize

log = logging.getLogger(__name__)

SWEEP_BOUND = 7


@dataclass(frozen=True)
class IncidenceReport:
    subspace: LinearSubspace
    normal: tuple[int, ...]
    divisor: IntersectionDivisor
    fully_rational: bool
    labels: tuple = ()            # one entry per divisor entry: CM label, "Exceptional", or None
    origin: str = "span"          # "span", "tangent" or "sweep"

    @property
    def key(self) -> tuple:
        return self.subspace.span


@dataclass
class ConfigurationSummary:
    collinear_triples: list = field(default_factory=list)   # (span, points, labels)
    common_points: list = field(default_factory=list)       # dicts: members, point, label
    containments: list = field(default_factory=list)        # (line name, subspace name)


# ------------------------------------------------------------------ rendering


def render_entry(entry, label=None) -> str:
    if entry.kind == "rational":
        body = f"({label})" if label is not None else "[" + ":".join(map(str, entry.point)) + "]"
    elif entry.kind == "quadratic":
        body = f"{{disc {entry.discriminant}}}"
    else:
        body = f"{{deg {entry.degree}: {_poly_text(entry.minpoly)}}}"
    return body if entry.multiplicity == 1 else f"{entry.multiplicity}{body}"


def _poly_text(p: Sequence[int]) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coef = str(abs(c)) if (abs(c) != 1 or not mono) else ""
        terms.append(("-" if c < 0 else "+") + coef + mono)
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


def _render_key(entry, label):
    # CM labels by decreasing D (cusp first), then other rational points, then irrational orbits
    if entry.kind == "rational" and isinstance(label, int):
        return (0, -label, ())
    if entry.kind == "rational":
        return (1, 0, entry.point)
    return (2, entry.degree, entry.key)


def render_divisor(divisor: IntersectionDivisor, labels: Mapping | None = None) -> str:
    """Divisor in the notation "2(0) + 2(-8) + (-11) + (-16)"."""
    labels = labels or {}
    items = [(e, labels.get(e.point) if e.point else None) for e in divisor.entries]
    items.sort(key=lambda el: _render_key(*el))
    return " + ".join(render_entry(e, lab) for e, lab in items)


def render_report(report: IncidenceReport, labels: Mapping | None = None) -> str:
    return render_divisor(report.divisor, labels)


# ------------------------------------------------------------------ candidates


def _make_report(model, sub: LinearSubspace, labels: Mapping, origin: str) -> IncidenceReport:
    if model.gPlus == 3:
        div = geometry.line_divisor(model, sub)
    else:
        div = geometry.plane_divisor(model, sub)
    (normal,) = linalg.kernel(sub.span)
    labs = tuple(labels.get(e.point) if e.point else None for e in div.entries)
    if div.fully_rational:
        for p in div.rational_points():
            if not model.contains(p):
                raise AssertionError(f"divisor point {p} is not on the model")
    return IncidenceReport(sub, normalize(normal), div, div.fully_rational, labs, origin)


def _evaluate(model, candidates, labels, workers):
    items = sorted(candidates.items())
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_make_report, itertools.repeat(model), [s for _, (s, _) in items],
                                    itertools.repeat(dict(labels)), [o for _, (_, o) in items]))
    else:
        reports = [_make_report(model, s, labels, o) for _, (s, o) in items]
    return reports


def rational_lines(model: CanonicalModel, pts: Sequence[Sequence[int]], labels: Mapping | None = None,
                   workers: int = 1) -> list[IncidenceReport]:
    """Line divisors for all lines through two points and all tangent lines, deduplicated."""
    if model.gPlus != 3:
        raise ValueError("rational_lines needs a plane quartic (gPlus = 3)")
    if not pts:
        raise ValueError("no points given")
    labels = labels or {}
    pts = sorted({normalize(p) for p in pts})
    candidates: dict[tuple, tuple[LinearSubspace, str]] = {}
    for P in pts:
        try:
            L = geometry.tangent_line(model, P)
        except GeometryError as exc:
            log.info("no tangent at %s: %s", P, exc)
            continue
        candidates.setdefault(L.span, (L, "tangent"))
    for P, Q in itertools.combinations(pts, 2):
        L = geometry.subspace_through([P, Q])
        candidates.setdefault(L.span, (L, "span"))
    return _evaluate(model, candidates, labels, workers)


def rational_planes(model: CanonicalModel, pts: Sequence[Sequence[int]], labels: Mapping | None = None,
                    workers: int = 1) -> list[IncidenceReport]:
    """Plane divisors for every plane through three independent points, deduplicated."""
    if model.gPlus != 4:
        raise ValueError("rational_planes needs the genus-4 model")
    pts = sorted({normalize(p) for p in pts})
    if len(pts) < 3:
        raise ValueError("need at least three points")
    labels = labels or {}
    candidates: dict[tuple, tuple[LinearSubspace, str]] = {}
    for tri in itertools.combinations(pts, 3):
        try:
            P = geometry.subspace_through(list(tri))
        except RankError as exc:
            log.debug("skipping collinear triple %s: %s", tri, exc)
            continue
        candidates.setdefault(P.span, (P, "span"))
    return _evaluate(model, candidates, labels, workers)


def incidence_reports(model, pts, labels=None, workers: int = 1) -> list[IncidenceReport]:
    if model.gPlus == 3:
        return rational_lines(model, pts, labels, workers)
    return rational_planes(model, pts, labels, workers)


def collinear_subsets(pts: Sequence[Sequence[int]]) -> list[tuple[LinearSubspace, tuple]]:
    """Maximal sets of at least three points lying on one line."""
    pts = sorted({normalize(p) for p in pts})
    seen = {}
    for P, Q in itertools.combinations(pts, 2):
        L = geometry.subspace_through([P, Q])
        if L.span in seen:
            continue
        on = tuple(R for R in pts if L.contains(R))
        if len(on) >= 3:
            seen[L.span] = (L, on)
    return [seen[k] for k in sorted(seen)]


# ------------------------------------------------------------------ configuration


def _point_of(span: Sequence[Sequence[int]]):
    return normalize(span[0]) if len(span) == 1 else None


def configuration(reports: Sequence[IncidenceReport], lines: Sequence[tuple[LinearSubspace, tuple]],
                  labels: Mapping | None = None, names: Mapping | None = None) -> ConfigurationSummary:
    """Exact pairwise/triple intersections of fully-rational subspaces and collinear lines.

    Only intersections that are a single projective point are recorded as
    common points; ``names`` maps subspace spans to display names.
    """
    labels = labels or {}
    names = dict(names or {})
    summary = ConfigurationSummary()
    full = [r.subspace for r in reports if r.fully_rational]
    for i, r in enumerate(sorted(full, key=lambda s: s.span)):
        names.setdefault(r.span, f"S{i + 1}")
    for i, (L, on) in enumerate(lines):
        names.setdefault(L.span, f"L{i + 1}")
        summary.collinear_triples.append((L, on, tuple(labels.get(p) for p in on)))
    line_spaces = [L for L, _ in lines]

    def record(members):
        span = members[0].span
        for m in members[1:]:
            span = linalg.intersect_spans(span, m.span)
            if not span:
                return
        pt = _point_of(span)
        # only report a point if it is the exact intersection and not already implied by a subset
        if pt is not None:
            summary.common_points.append({
                "members": tuple(names[m.span] for m in members),
                "point": pt,
                "label": labels.get(pt),
            })

    for group in (line_spaces, full):
        for k in (2, 3):
            for members in itertools.combinations(group, k):
                if k == 3 and len(members[0].span) == 2:
                    continue  # lines: pairwise only
                if k == 2 and len(members[0].span) == 3 and len(members[0].span[0]) == 4:
                    continue  # two planes in P^3 meet in a line
                record(members)
    for L in line_spaces:
        for S in full:
            if S.span != L.span and S.contains_subspace(L):
                summary.containments.append((names[L.span], names[S.span]))
    return summary


# ------------------------------------------------------------------ sweep


def _small_normals(n: int, bound: int):
    rng = range(-bound, bound + 1)
    for v in itertools.product(rng, repeat=n):
        if any(v) and linalg.content(v) == 1 and normalize(v) == tuple(v):
            yield tuple(v)


def _splits_completely(model, sub: LinearSubspace) -> bool:
    """Cheap necessary test: the divisor's projection must split into rational linear factors."""
    if model.gPlus == 3:
        B = geometry.restrict_to_line(model.polys[0], sub)
    else:
        c2, c3 = geometry.plane_section(model, sub)
        if not (c2.as_dict().get((0, 0, 2)) and c3.as_dict().get((0, 0, 3))):
            return True  # undecided here; let the full computation decide
        B = geometry._resultant_form(c2, c3)
        if B.is_zero():
            return True
    if not _roots_look_real(B):
        return False
    return all(f.degree == 1 for f, _ in geometry.factor_binary_form(B))


def _roots_look_real(B) -> bool:
    """Float test that only rejects roots with a clearly nonzero imaginary part.

    Multiple roots of multiplicity m scatter by about eps^(1/m), far below the
    threshold, so a completely split form is never rejected.
    """
    c = [float(x) for x in B.coeffs]
    k = 0
    while k < len(c) and c[k] == 0:
        k += 1  # leading zeros are roots at (1:0), which are rational
    c = c[k:]
    if len(c) <= 1:
        return True
    scale = max(abs(x) for x in c)
    roots = np.roots([x / scale for x in c])
    return bool(np.all(np.abs(roots.imag) <= 1e-3 * (1 + np.abs(roots))))


def _sweep_one(model, normal):
    sub = Hyperplane(normal).subspace()
    try:
        if not _splits_completely(model, sub):
            return None
        rep = _make_report(model, sub, {}, "sweep")
    except GeometryError as exc:
        log.info("sweep: normal %s skipped: %s", normal, exc)
        return None
    return rep if rep.fully_rational else None


def _sweep_chunk(args):
    model, normals = args
    return [r for r in (_sweep_one(model, n) for n in normals) if r is not None]


def sweep(model: CanonicalModel, bound: int = SWEEP_BOUND, workers: int = 1) -> list[IncidenceReport]:
    """All fully-rational hyperplanes whose primitive normal has entries of size <= bound."""
    normals = list(_small_normals(model.gPlus, bound))
    chunks = [normals[i::max(workers, 1) * 8] for i in range(max(workers, 1) * 8)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            found = [r for part in pool.map(_sweep_chunk, [(model, c) for c in chunks]) for r in part]
    else:
        found = _sweep_chunk((model, normals))
    return sorted(found, key=lambda r: r.normal)


__all__ = [
    "IncidenceReport", "ConfigurationSummary", "rational_lines", "rational_planes", "collinear_subsets",
    "configuration", "sweep", "render_divisor", "render_report", "incidence_reports",
]
