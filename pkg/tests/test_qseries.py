import pytest
from hypothesis import given, strategies as st

from x0plus.qseries import QSeries, add, is_zero_to, monomial_eval, mul, scale


def Q(*c):
    return QSeries.from_list(c)


def test_add_and_scale():
    assert add(Q(1, 2), Q(1, -1)) == Q(2, 1)
    assert scale(Q(1, 0, 1), 0) == QSeries.zero(3)
    f = Q(3, -1, 4, 1)
    assert add(f, scale(f, -1)) == QSeries.zero(4)
    assert add(Q(1, 2, 3), Q(1, 1)).prec == 2


def test_mul():
    assert mul(Q(1, 0), Q(1, 0)) == Q(0, 1)
    assert mul(Q(1, -1, 0, 0), Q(1, 1, 0, 0)) == Q(0, 1, 0, -1)
    assert mul(Q(1, 1, 1, 0), Q(1, 1, 1, 0)) == Q(0, 1, 2, 3)


def test_monomial_eval():
    basis = [Q(1, 0, 0), Q(1, 1, 0), Q(0, 0, 1)]
    assert monomial_eval(basis, (1, 0, 0)) == basis[0]
    assert monomial_eval(basis, (2, 0, 0)) == Q(0, 1, 0)
    assert monomial_eval(basis, (1, 1, 0)) == Q(0, 1, 1)
    with pytest.raises(ValueError):
        monomial_eval(basis, (0, 0, 0))
    with pytest.raises(ValueError):
        monomial_eval(basis, (1, 0))


def test_is_zero_to():
    assert is_zero_to(QSeries.zero(10), 10)
    q50 = QSeries.monomial(50, 60)
    assert is_zero_to(q50, 49)
    assert not is_zero_to(q50, 50)
    with pytest.raises(ValueError):
        is_zero_to(q50, 61)


def test_fixture_difference_is_zero(basis97):
    f = basis97.forms[0]
    assert is_zero_to(f - f, f.prec)


def test_exact_integers_only():
    with pytest.raises(TypeError):
        QSeries((1.0, 2))
    with pytest.raises(ValueError):
        QSeries(())


def test_indexing():
    f = Q(5, 6, 7)
    assert f[0] == 0 and f[1] == 5 and f[3] == 7
    with pytest.raises(IndexError):
        f[4]


series = st.lists(st.integers(-50, 50), min_size=6, max_size=6).map(QSeries.from_list)


@given(series, series, series)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(st.lists(st.integers(-20, 20), min_size=9, max_size=9),
       st.lists(st.integers(-20, 20), min_size=9, max_size=9), st.integers(1, 9))
def test_truncation_soundness(a, b, n):
    f, g = QSeries.from_list(a), QSeries.from_list(b)
    assert mul(f, g).truncate(n) == mul(f.truncate(n), g.truncate(n))
