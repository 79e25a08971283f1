from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from x0plus import linalg


def test_primitive_and_content():
    assert linalg.primitive([-2, 4, 6, -2]) == (1, -2, -3, 1)
    assert linalg.primitive([0, 0, -5, 0]) == (0, 0, 1, 0)
    assert linalg.content([6, -9, 12]) == 3


def test_scale_to_integers():
    assert linalg.scale_to_integers([Fraction(1, 2), Fraction(-1, 3)]) == (3, -2)


def test_kernel_and_rank():
    M = [[1, 2, 3], [2, 4, 6]]
    assert linalg.rank(M) == 1
    K = linalg.kernel(M)
    assert len(K) == 2
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


def test_canonical_span_unique():
    a = linalg.canonical_span([(1, 0, 0), (0, 1, 0)])
    assert a == ((1, 0, 0), (0, 1, 0))
    assert linalg.canonical_span([(1, 1, 0), (1, -1, 0)]) == a


def test_solve_and_intersect():
    assert linalg.solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    assert linalg.solve([[1, 1], [1, 1]], [1, 2]) is None
    assert linalg.intersect_spans([(1, 0, 0), (0, 1, 0)], [(0, 1, 0), (0, 0, 1)]) == [(0, 1, 0)]
    assert linalg.intersect_spans([(1, 0, 0)], [(0, 0, 1)]) == []


mats = st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                                                    min_size=n, max_size=n))


@settings(max_examples=200, deadline=None)
@given(mats)
def test_det_and_rank_match_sympy(M):
    S = sympy.Matrix(M)
    assert linalg.det(M) == S.det()
    assert linalg.rank(M) == S.rank()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.lists(st.lists(st.integers(-5, 5), min_size=5, max_size=5),
                                                    min_size=r, max_size=r)))
def test_kernel_is_primitive_echelon_basis(M):
    K = linalg.kernel(M, 5)
    assert len(K) == 5 - linalg.rank(M)
    for v in K:
        assert linalg.content(v) == 1
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
