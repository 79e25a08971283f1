import pytest
from hypothesis import given, strategies as st

from x0plus import golden, points
from x0plus.model import CanonicalModel, HomogeneousPoly

FERMAT = CanonicalModel(0, 3, (HomogeneousPoly.parse("X^4 + Y^4 - Z^4", "XYZ"),))


def test_normalize_examples():
    assert points.normalize((-2, 4, 6, -2)) == (1, -2, -3, 1)
    assert points.normalize((0, 0, -5, 0)) == (0, 0, 1, 0)
    assert points.normalize((19, 2, -16, 4)) == (19, 2, -16, 4)
    with pytest.raises(ValueError):
        points.normalize((0, 0, 0))


@given(st.lists(st.integers(-99, 99), min_size=3, max_size=4).filter(any), st.integers(-9, 9).filter(bool))
def test_normalize_idempotent_and_scale_invariant(v, k):
    n = points.normalize(v)
    assert points.normalize(n) == n
    assert points.normalize([k * x for x in v]) == n


def test_fermat_height_one():
    assert points.search(FERMAT, 1) == [(0, 1, -1), (0, 1, 1), (1, 0, -1), (1, 0, 1)]


def test_height_precondition():
    with pytest.raises(ValueError):
        points.search(FERMAT, 0)


def test_reference_model_height_20():
    assert points.search(golden.golden_model(), 20) == golden.golden_points()


def test_monotone_and_exact(model97):
    small = points.search(model97, 10)
    big = points.search(model97, 40)
    assert set(small) <= set(big)
    assert all(model97.contains(p) for p in big)
    assert all(points.normalize(p) == p for p in big)


def test_workers_give_same_result(model137):
    assert points.search(model137, 30, workers=4) == points.search(model137, 30)
