import pytest

from x0plus import geometry, golden, incidence
from x0plus.geometry import Hyperplane
from x0plus.model import CanonicalModel, HomogeneousPoly

FERMAT = CanonicalModel(0, 3, (HomogeneousPoly.parse("X^4 + Y^4 - Z^4", "XYZ"),))


@pytest.fixture(scope="module")
def G():
    return golden.golden_model()


@pytest.fixture(scope="module")
def labels_x():
    labels = dict(golden.golden_labels())
    labels[golden.EXCEPTIONAL] = "Exceptional"
    return labels


@pytest.fixture(scope="module")
def planes(G, labels_x):
    return incidence.rational_planes(G, golden.golden_points(), labels_x)


def test_render_reference_planes(planes, labels_x):
    full = {r.normal: incidence.render_report(r, labels_x) for r in planes if r.fully_rational}
    for normal, text in golden.PLANES.items():
        assert full[normal] == text


def test_render_irrational_entries(G, labels_x):
    div = geometry.plane_divisor(G, Hyperplane(golden.EXCEPTIONAL_PLANE).subspace())
    assert incidence.render_divisor(div, labels_x) == "(0) + (-4) + (-11) + (Exceptional) + {disc 8}"
    div = geometry.line_divisor(FERMAT, Hyperplane((0, 0, 1)).subspace())
    assert incidence.render_divisor(div) == "{deg 4: x^4+1}"
    div = geometry.line_divisor(FERMAT, geometry.subspace_through([(0, 1, 1), (1, 0, 0)]))
    assert incidence.render_divisor(div) == "4[0:1:1]"


def test_reports_are_consistent(planes):
    keys = [r.key for r in planes]
    assert len(keys) == len(set(keys))
    for r in planes:
        assert r.fully_rational == all(e.kind == "rational" for e in r.divisor.entries)
        assert r.divisor.degree == 6
        assert all(Hyperplane(r.normal).contains(p) for p in r.subspace.span)


def test_collinear_subsets(labels_x):
    found = {tuple(sorted(labels_x[p] for p in on)) for _, on in incidence.collinear_subsets(golden.golden_points())}
    for trio in golden.LINES:
        assert tuple(sorted(trio)) in found
    assert incidence.collinear_subsets([(1, 0, 0), (0, 1, 0)]) == []


def test_configuration(planes, labels_x):
    lines = incidence.collinear_subsets(golden.golden_points())
    names = {Hyperplane(n).subspace().span: f"P{i + 1}" for i, n in enumerate(golden.PLANES)}
    line_name = {}
    for L, on in lines:
        key = tuple(sorted(labels_x[p] for p in on))
        if key in {tuple(sorted(t)) for t in golden.LINES}:
            line_name[key] = names[L.span] = "L" + "".join(str(-d) for d in key)
    summary = incidence.configuration(planes, lines, labels_x, names)
    meets = {frozenset(c["members"]): c["label"] for c in summary.common_points}
    assert meets[frozenset({"P1", "P2", "P3"})] == -11
    L1, L2 = (line_name[tuple(sorted(t))] for t in golden.LINES)
    assert meets[frozenset({L1, L2})] == -11
    assert (L1, "P2") in summary.containments and (L2, "P2") in summary.containments
    for c in summary.common_points:
        assert c["label"] == labels_x.get(c["point"])


def test_rational_lines_fermat():
    pts = [(0, 1, -1), (0, 1, 1), (1, 0, -1), (1, 0, 1)]
    reports = incidence.rational_lines(FERMAT, pts)
    for r in reports:
        assert r.divisor.degree == 4
    tangents = [r for r in reports if r.origin == "tangent"]
    assert len(tangents) == 4 and all(r.fully_rational for r in tangents)


def test_rational_lines_on_fixture_model(model97, points97):
    reports = incidence.rational_lines(model97, points97)
    assert any(r.fully_rational for r in reports)
    for r in reports:
        for p in r.divisor.rational_points():
            assert model97.contains(p)


def test_wrong_genus_rejected(G):
    with pytest.raises(ValueError):
        incidence.rational_lines(G, golden.golden_points())
    with pytest.raises(ValueError):
        incidence.rational_planes(FERMAT, [(0, 1, 1)])


def test_parallel_matches_serial(G, labels_x, planes):
    par = incidence.rational_planes(G, golden.golden_points(), labels_x, workers=2)
    assert [(r.normal, r.divisor.canonical()) for r in par] == [(r.normal, r.divisor.canonical()) for r in planes]


def test_small_sweep_finds_span_planes(G):
    found = {r.normal for r in incidence.sweep(G, bound=3)}
    assert {(0, 0, 0, 1), (1, 1, 2, 3), (0, 1, 1, 3)} <= found
    for n in found:
        assert geometry.plane_divisor(G, Hyperplane(n).subspace()).fully_rational
