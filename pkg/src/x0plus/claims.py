"""Checks of the reference N = 137 geometry against the reference model.

Each check is exact (integer ranks, kernels, factorizations) except the
optional CM-label check, which goes through the q-expansion fixture and the
numerical Heegner matching and is then transported to the reference
coordinates by an exact projective change of coordinates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from . import coords, geometry, golden, incidence, linalg
from .geometry import Hyperplane
from .points import normalize, search

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  [{self.detail}]" if self.detail else "")


def _labelled(pt, labels):
    lab = labels.get(pt)
    return str(lab) if lab is not None else "[" + ":".join(map(str, pt)) + "]"


def geometric_checks(height: int = 25) -> list[Check]:
    model = golden.golden_model()
    pts = golden.golden_points()
    labels = golden.golden_labels()
    labels_x = dict(labels)
    labels_x[normalize(golden.EXCEPTIONAL)] = "Exceptional"
    by_label = {v: k for k, v in labels.items()}
    out = []

    bad = [p for p in pts if any(f(p) != 0 for f in model.polys)]
    out.append(Check("all nine points satisfy both equations exactly", not bad, f"failing: {bad}" if bad else ""))

    found = search(model, height)
    out.append(Check(f"search to height {height} finds exactly the nine points", found == pts,
                     "" if found == pts else f"found {found}"))

    reports = incidence.rational_planes(model, pts, labels_x)
    full = {r.normal: r for r in reports if r.fully_rational}
    for normal, pattern in golden.PLANES.items():
        r = full.get(normal)
        got = incidence.render_report(r, labels_x) if r else None
        out.append(Check(f"plane {normal} is fully rational with divisor {pattern}", got == pattern,
                         "" if got == pattern else f"got {got}"))
    extra = sorted(set(full) - set(golden.PLANES))
    out.append(Check("exactly three fully-rational planes through point triples", not extra and
                     set(golden.PLANES) <= set(full),
                     "; ".join(f"also {n}: {incidence.render_report(full[n], labels_x)}" for n in extra)))

    try:
        H = geometry.hyperplane_through([by_label[0], by_label[-4], by_label[-11]])
        normal_ok = H.normal == golden.EXCEPTIONAL_PLANE
    except geometry.RankError:
        normal_ok = False
    out.append(Check(f"plane through 0, -4, -11 has normal {golden.EXCEPTIONAL_PLANE}", normal_ok))
    div = geometry.plane_divisor(model, Hyperplane(golden.EXCEPTIONAL_PLANE).subspace())
    rat = div.rational_points()
    quads = [e for e in div.entries if e.kind == "quadratic"]
    want = {by_label[0], by_label[-4], by_label[-11], normalize(golden.EXCEPTIONAL)}
    ok = (set(rat) == want and all(m == 1 for m in rat.values()) and len(quads) == 1
          and quads[0].multiplicity == 1
          and quads[0].discriminant == golden.EXCEPTIONAL_PLANE_RESIDUAL_DISCRIMINANT)
    out.append(Check("that plane holds the exceptional point and a conjugate pair of discriminant 8", ok,
                     incidence.render_divisor(div, labels_x)))

    lines = incidence.collinear_subsets(pts)
    got_sets = sorted(tuple(sorted(labels_x[p] for p in on)) for _, on in lines)
    want_sets = sorted(tuple(sorted(t)) for t in golden.LINES)
    out.append(Check("collinear subsets are exactly {-7,-11,-19} and {-8,-11,-16}", got_sets == want_sets,
                     f"found {got_sets}"))

    spans = {tuple(sorted(labels_x[p] for p in on)): L for L, on in lines}
    L1 = spans.get(tuple(sorted(golden.LINES[0])))
    L2 = spans.get(tuple(sorted(golden.LINES[1])))
    planes = [Hyperplane(n).subspace() for n in golden.PLANES]
    if L1 and L2:
        meet = linalg.intersect_spans(L1.span, L2.span)
        p = normalize(meet[0]) if len(meet) == 1 else None
        out.append(Check("the two lines meet at -11", p == by_label[-11], _labelled(p, labels_x) if p else "no point"))
        inside = planes[1].contains_subspace(L1) and planes[1].contains_subspace(L2)
        out.append(Check(f"both lines lie in plane {list(golden.PLANES)[1]}", inside))
    else:
        out.append(Check("the two lines meet at -11", False, "lines not found"))
        out.append(Check(f"both lines lie in plane {list(golden.PLANES)[1]}", False, "lines not found"))
    ker = linalg.kernel(list(golden.PLANES))
    p = normalize(ker[0]) if len(ker) == 1 else None
    out.append(Check("the three planes meet exactly at -11", p == by_label[-11],
                     _labelled(p, labels_x) if p else f"kernel rank {len(ker)}"))
    return out


def fixture_checks(data_dir=None, terms: int = 400, tol: float = 1e-6) -> list[Check]:
    """Rebuild the model from q-expansions, match it to the reference coordinates,
    and compare CM labels."""
    from . import heegner, ingest, model as model_mod

    basis = ingest.load_level(137, data_dir)
    fmodel = model_mod.build_model(basis)
    out = [Check("model rebuilt from q-expansions passes verification", model_mod.verify_model(fmodel, basis))]
    fpts = search(fmodel, 25)
    gmodel = golden.golden_model()
    Ts = coords.match_coordinates(fmodel, fpts, gmodel, golden.golden_points())
    out.append(Check("a unique projective change of coordinates carries it onto the reference model",
                     len(Ts) == 1, f"{len(Ts)} candidates"))
    if len(Ts) != 1:
        return out
    T = Ts[0]
    res = heegner.label_points(137, basis, fmodel, fpts, terms=terms, tol=tol)
    moved = {coords.apply(T, p): lab for p, lab in res.labels.items()}
    expected = dict(golden.golden_labels())
    expected[normalize(golden.EXCEPTIONAL)] = heegner.EXCEPTIONAL
    diff = {p: (moved.get(p), lab) for p, lab in expected.items() if moved.get(p) != lab}
    out.append(Check("CM labels from Heegner points reproduce the reference table", not diff,
                     f"mismatches {diff}" if diff else ""))
    margin = min(res.margins.values()) if res.margins else 0.0
    out.append(Check("second-nearest candidate margin is at least 1e3 * tol", margin >= 1e3 * tol,
                     f"min margin {margin:.3g}"))
    return out


def reference_checks(data_dir=None, with_fixture: bool = True) -> list[Check]:
    checks = geometric_checks()
    if with_fixture:
        checks += fixture_checks(data_dir)
    return checks
