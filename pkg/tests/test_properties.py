"""Property-based suites: divisor degrees, factorization, shear invariance, class numbers, genus."""
import pytest
import sympy
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from x0plus import algebra, arith, geometry, golden, ingest, model as M, points
from x0plus.geometry import BinaryForm, ComponentError, Hyperplane, RankError

SETTINGS = settings(deadline=None, suppress_health_check=[HealthCheck.too_slow])

GOLDEN = golden.golden_model()
GOLDEN_PTS = golden.golden_points()
QUARTIC97 = M.build_model(ingest.load_level(97))
PTS97 = points.search(QUARTIC97, 30)

small = st.integers(-6, 6)


# ------------------------------------------------------------------ divisor degrees


@SETTINGS
@given(st.tuples(small, small, small).filter(any), st.tuples(small, small, small).filter(any))
def test_line_divisor_degree_is_4(a, b):
    try:
        L = geometry.subspace_through([a, b])
    except RankError:
        assume(False)
    div = geometry.line_divisor(QUARTIC97, L)
    assert div.degree == 4
    for p in div.rational_points():
        assert QUARTIC97.contains(p)


@SETTINGS
@given(st.sampled_from(PTS97), st.tuples(small, small, small).filter(any))
def test_line_through_a_point_contains_it(P, d):
    try:
        L = geometry.subspace_through([P, d])
    except RankError:
        assume(False)
    div = geometry.line_divisor(QUARTIC97, L)
    assert div.degree == 4 and P in div.rational_points()


@SETTINGS
@given(st.tuples(small, small, small, small).filter(any))
def test_plane_divisor_degree_is_6(n):
    div = geometry.plane_divisor(GOLDEN, Hyperplane(points.normalize(n)).subspace())
    assert div.degree == 6
    for p in div.rational_points():
        assert GOLDEN.contains(p)


# ------------------------------------------------------------------ factorization


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _reconstruct(factors):
    prod = [1]
    for f, m in factors:
        for _ in range(m):
            prod = _mul(prod, list(f.coeffs))
    return prod


def _primitive_up_to_sign(c):
    return algebra.primitive_int(list(c)) if any(c) else c


def _check_factorization(B):
    factors = geometry.factor_binary_form(B)
    for f, m in factors:
        assert m >= 1 and f.degree >= 1
        # each factor is irreducible over Q (checked independently with sympy)
        s, t = sympy.symbols("s t")
        expr = sum(c * s ** (f.degree - i) * t ** i for i, c in enumerate(f.coeffs))
        assert len(sympy.factor_list(expr)[1]) == 1 and sympy.factor_list(expr)[1][0][1] == 1
    got = _reconstruct(factors)
    want = list(B.coeffs)
    assert _primitive_up_to_sign(got) in (_primitive_up_to_sign(want),
                                          [-x for x in _primitive_up_to_sign(want)])
    assert sum(f.degree * m for f, m in factors) == B.degree


raw_form = st.integers(1, 6).flatmap(
    lambda d: st.lists(st.integers(-40, 40), min_size=d + 1, max_size=d + 1)).filter(any)
factor_piece = st.lists(st.integers(-5, 5), min_size=2, max_size=3).filter(lambda c: any(c[:-1]) or c[-1])


@st.composite
def product_form(draw):
    """Products of small pieces, so repeated and rational factors are common."""
    coeffs = [1]
    while True:
        piece = draw(factor_piece)
        if len(coeffs) - 1 + len(piece) - 1 > 6:
            break
        coeffs = _mul(coeffs, piece)
        if draw(st.booleans()):
            break
    assume(any(coeffs) and len(coeffs) >= 2)
    return BinaryForm(tuple(coeffs))


@settings(max_examples=500, deadline=None)
@given(raw_form.map(lambda c: BinaryForm(tuple(c))))
def test_factorization_reconstructs_random_forms(B):
    _check_factorization(B)


@settings(max_examples=500, deadline=None)
@given(product_form())
def test_factorization_reconstructs_products(B):
    _check_factorization(B)


# ------------------------------------------------------------------ shear invariance


@st.composite
def plane_through_points(draw):
    k = draw(st.sampled_from([2, 3]))
    pts = draw(st.lists(st.sampled_from(GOLDEN_PTS), min_size=k, max_size=k, unique=True))
    rows = list(pts)
    while len(rows) < 3:
        rows.append(draw(st.tuples(small, small, small, small).filter(any)))
    try:
        return geometry.subspace_through(rows)
    except RankError:
        assume(False)


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow,
                                                                   HealthCheck.filter_too_much])
@given(plane_through_points(), st.integers(0, 10**6), st.integers(0, 10**6))
def test_shear_invariance(S, seed1, seed2):
    ref = geometry.plane_divisor(GOLDEN, S)
    for seed in (seed1, seed2):
        try:
            other = geometry.plane_divisor(GOLDEN, S, seed=seed)
        except geometry.SeparationError:
            continue
        assert other.canonical() == ref.canonical()


# ------------------------------------------------------------------ arithmetic


@pytest.mark.parametrize("D,h", [(-3, 1), (-4, 1), (-163, 1), (-23, 3)])
def test_class_numbers(D, h):
    assert arith.class_number(D) == h


def _kronecker(D, a):
    out = 1
    while a % 2 == 0:
        if D % 2 == 0:
            return 0
        out *= 1 if D % 8 in (1, 7) else -1
        a //= 2
    return out * (sympy.jacobi_symbol(D % a, a) if a > 1 else 1)


fundamental = st.integers(3, 3000).map(lambda n: -n).filter(
    lambda D: D % 4 in (0, 1) and algebra.fundamental_discriminant_of(D) == D)


@settings(max_examples=200, deadline=None)
@given(fundamental)
def test_class_number_matches_analytic_formula(D):
    """h(D) = -(w / 2|D|) * sum_{0<a<|D|} (D/a) a for fundamental D < 0."""
    w = {-3: 6, -4: 4}.get(D, 2)
    total = sum(_kronecker(D, a) * a for a in range(1, -D))
    assert arith.class_number(D) * 2 * (-D) == -w * total


def test_genus_plus_integral_for_primes_below_1000():
    for N in sympy.primerange(5, 1000):
        twice = arith.genus_X0(N) + 1 - arith.H_count(N)
        assert twice % 2 == 0 and twice >= 0, N
        assert arith.genus_plus(N) == twice // 2
