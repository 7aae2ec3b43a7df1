"""Tests for windowed two-variable series arithmetic."""

import pytest
from hypothesis import given, strategies as st

from endolift.series import (
    SeriesContext,
    TruncSeries,
    f_series,
    g_series,
    series_invert,
)

# A context with lo1 = 0 is an honest quotient ring (by x1^(hi1+1) and
# x2^cap2 plus p^prec), so the full set of ring laws must hold there.
# Negative lo1 opens a Laurent window, which is only a truncation of a
# module; the laws that survive arbitrary truncation are tested on it.
QUOTIENT_CTX = [
    SeriesContext(3, 4, 0, 12, 4),
    SeriesContext(5, 3, 0, 9, 3),
    SeriesContext(7, 2, 0, 6, 2),
]
LAURENT_CTX = [
    SeriesContext(3, 4, -8, 8, 3),
    SeriesContext(5, 3, -6, 6, 2),
]


def _series_strategy(ctx):
    key = st.tuples(
        st.integers(min_value=max(ctx.lo1, -6), max_value=min(ctx.hi1, 8)),
        st.integers(min_value=0, max_value=ctx.cap2 - 1),
    )
    pair = st.tuples(
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=-50, max_value=50),
    )
    return st.dictionaries(key, pair, max_size=6).map(lambda d: TruncSeries(ctx, d))


@st.composite
def quotient_triples(draw):
    ctx = draw(st.sampled_from(QUOTIENT_CTX))
    strat = _series_strategy(ctx)
    return draw(strat), draw(strat), draw(strat)


@st.composite
def any_pairs(draw):
    ctx = draw(st.sampled_from(QUOTIENT_CTX + LAURENT_CTX))
    strat = _series_strategy(ctx)
    return draw(strat), draw(strat)


def test_constructor_filters_window_and_reduces():
    ctx = SeriesContext(3, 2, 0, 4, 2)
    s = TruncSeries(ctx, {(5, 0): (1, 0), (0, 3): (1, 0), (1, 1): (10, 9), (2, 0): (9, 18)})
    # out-of-window keys dropped, coefficients reduced mod 9, zeros dropped
    assert s.support() == [(1, 1)]
    assert s.coeffs[(1, 1)] == (1, 0)


def test_variable_and_monomial():
    ctx = QUOTIENT_CTX[0]
    x1 = TruncSeries.variable(ctx, "x1")
    x2 = TruncSeries.variable(ctx, "x2")
    assert (x1 * x2).support() == [(1, 1)]
    assert TruncSeries.monomial(ctx, 2, 1, (3, 4)).coeffs[(2, 1)] == (3, 4)
    with pytest.raises(ValueError):
        TruncSeries.variable(ctx, "x3")


@given(any_pairs())
def test_mul_commutes(sts):
    s, t = sts
    assert (s * t).coeffs == (t * s).coeffs


@given(quotient_triples())
def test_mul_associates_in_quotient_ring(stu):
    s, t, u = stu
    assert ((s * t) * u).coeffs == (s * (t * u)).coeffs


@given(quotient_triples())
def test_distributivity(stu):
    s, t, u = stu
    assert (s * (t + u)).coeffs == (s * t + s * u).coeffs


@given(any_pairs())
def test_additive_group(sts):
    s, t = sts
    assert (s + t - t).coeffs == s.coeffs
    assert (s - s).is_zero()


@given(any_pairs())
def test_one_is_neutral(sts):
    s, _ = sts
    assert (s * TruncSeries.one(s.ctx)).coeffs == s.coeffs


@given(quotient_triples())
def test_frobenius_is_multiplicative(stu):
    s, t, _ = stu
    assert (s * t).frobenius().coeffs == (s.frobenius() * t.frobenius()).coeffs


@given(quotient_triples())
def test_frobenius_dilates_exponents(stu):
    s, _, _ = stu
    p = s.ctx.p
    for (m1, m2) in s.frobenius().support():
        assert m1 % p == 0 and m2 % p == 0


@given(any_pairs())
def test_sigma_coefficients_is_an_involution(sts):
    s, _ = sts
    assert s.sigma_coefficients().sigma_coefficients().coeffs == s.coeffs


@given(quotient_triples())
def test_substitutions_are_ring_maps(stu):
    s, t, _ = stu
    prod = s * t
    assert prod.substitute_x2_zero().coeffs == (s.substitute_x2_zero() * t.substitute_x2_zero()).coeffs
    assert prod.substitute_x1_zero().coeffs == (s.substitute_x1_zero() * t.substitute_x1_zero()).coeffs


def test_substitute_x2_equals_x1_merges_exponents():
    ctx = QUOTIENT_CTX[0]
    s = TruncSeries(ctx, {(1, 2): (2, 0), (3, 0): (1, 0), (0, 3): (5, 1)})
    merged = s.substitute_x2_equals_x1()
    # x1*x2^2 and x1^3 merge at exponent 3; x2^3 lands there too
    total = (2 + 1 + 5, 0 + 0 + 1)
    assert merged.coeffs == {(3, 0): total}


@given(any_pairs())
def test_x2_slices_reassemble(sts):
    s, _ = sts
    ctx = s.ctx
    acc = TruncSeries.zero(ctx)
    for j in range(ctx.cap2):
        acc = acc + s.x2_slice(j).shift_x2(j)
    assert acc.coeffs == s.coeffs


@given(any_pairs(), st.integers(min_value=0, max_value=3))
def test_divisibility_roundtrip(sts, e):
    s, _ = sts
    q = s.ctx.p**e
    scaled = s * TruncSeries.constant(s.ctx, q)
    if e >= s.ctx.prec:
        assert scaled.is_zero()
        return
    assert scaled.divisible_by(q)
    back = scaled.divide_exact(q)
    assert (back * TruncSeries.constant(s.ctx, q)).coeffs == scaled.coeffs


@given(any_pairs())
def test_reduce_mod_p_is_reduction(sts):
    s, _ = sts
    r = s.reduce_mod_p()
    assert r.ctx.prec == 1
    for k, (a, b) in r.coeffs.items():
        orig = s.coeffs[k]
        assert (a - orig[0]) % s.ctx.p == 0 and (b - orig[1]) % s.ctx.p == 0


def test_with_context_refuses_precision_raise():
    ctx = QUOTIENT_CTX[0]
    s = TruncSeries.one(ctx)
    with pytest.raises(ValueError):
        s.with_context(ctx.weakened(prec=ctx.prec).__class__(ctx.p, ctx.prec + 1, ctx.lo1, ctx.hi1, ctx.cap2))


def test_p_valuation_and_min_degree():
    ctx = SeriesContext(3, 4, 0, 10, 3)
    s = TruncSeries(ctx, {(2, 1): (9, 0), (4, 2): (3, 27)})
    assert s.p_valuation() == 1
    assert s.min_x2_degree() == 1
    assert TruncSeries.zero(ctx).min_x2_degree() is None


# -- the two closed-form series --------------------------------------------


@pytest.mark.parametrize("p", [3, 5])
def test_f_series_support(p):
    ctx = SeriesContext(p, 6, -(p**4), p**4, 1)
    f = f_series(ctx, "x1", 1)
    expected = []
    q = 1
    while q <= p**4:
        expected.append((q, 0))
        q *= p * p
    assert f.support() == sorted(expected)
    assert all(c == (1, 0) for c in f.coeffs.values())


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("power", [1, p_ := 3])
def test_f_series_functional_equation(p, power):
    """f(x^a) = x^a + f(x^(a*p^2)) inside the window."""
    ctx = SeriesContext(p, 6, -(p**4), p**4, 1)
    f_a = f_series(ctx, "x1", power)
    f_ap2 = f_series(ctx, "x1", power * p * p)
    x_a = TruncSeries.variable(ctx, "x1", power)
    assert f_a.coeffs == (x_a + f_ap2).coeffs


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("power", [1, 2])
def test_g_series_is_windowed_square_of_f(p, power):
    # compute f^2 in a wide enough box that no cross term is lost, then
    # compare the window part against g
    wide = SeriesContext(p, 6, -(2 * p**4), 2 * p**4, 1)
    narrow = SeriesContext(p, 6, -(p**4), p**4, 1)
    f = f_series(wide, "x1", power)
    g = g_series(narrow, "x1", power)
    square = (f * f).with_context(narrow)
    assert g.coeffs == square.coeffs


@pytest.mark.parametrize("p", [3, 5])
def test_f_g_on_x2(p):
    ctx = SeriesContext(p, 4, 0, 4, p**2 + 2)
    f = f_series(ctx, "x2", 1)
    assert (1, 0) == f.coeffs[(0, 1)]
    assert (0, p**2) in f.coeffs
    g = g_series(ctx, "x2", 1)
    assert g.coeffs[(0, 2)] == (1, 0)


def test_series_invert_units():
    ctx = SeriesContext(3, 4, 0, 8, 3)
    u = TruncSeries(ctx, {(0, 0): (2, 1), (1, 0): (5, 0), (0, 2): (1, 7)})
    v = series_invert(u)
    assert (u * v).coeffs == TruncSeries.one(ctx).coeffs


def test_series_invert_rejects_nonunit():
    ctx = SeriesContext(3, 4, 0, 8, 3)
    x1 = TruncSeries.variable(ctx, "x1")
    with pytest.raises(Exception):
        series_invert(x1)


def test_dump_is_readable():
    ctx = SeriesContext(3, 3, 0, 5, 2)
    s = TruncSeries(ctx, {(1, 0): (2, 0), (0, 1): (0, 1)})
    text = s.dump()
    assert "x1" in text and "x2" in text
