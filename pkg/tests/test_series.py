"""Series arithmetic: evaluation, differentiation, convolution."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from volterra.errors import DomainError
from volterra.series import (DIVERGENT_SAMPLE, FunctionHandle, TaylorSeries,
                             antiderivative, cauchy_product,
                             check_derivative_consistency, derivative, evaluate,
                             is_divergent)


def coeff_lists(max_degree=24):
    scalar = st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False)
    return st.lists(scalar, min_size=1, max_size=max_degree + 1)


def test_eval_linear():
    f = TaylorSeries((1, 1))
    assert evaluate(f, 0.5) == pytest.approx(1.5)


def test_eval_zero_case():
    f = TaylorSeries((0, 0, 1))
    assert evaluate(f, 0.0) == 0


def test_eval_closed_form_matches_geometric_partial_sums():
    # oracle: partial sums of the geometric series at degree 60
    z = 0.5
    oracle = sum(z ** n for n in range(61))
    handle = FunctionHandle.closed_form(lambda w: 1.0 / (1.0 - w))
    assert abs(evaluate(handle, z) - 2.0) < 1e-12
    assert abs(oracle - 2.0) < 1e-12


def test_eval_outside_domain_raises():
    handle = FunctionHandle.closed_form(lambda w: 1.0 / (1.0 - w), domain_radius=1.0)
    with pytest.raises(DomainError):
        evaluate(handle, 1.0 + 0j)


def test_overflow_comes_back_tagged_not_raised():
    handle = FunctionHandle.closed_form(lambda w: np.full_like(w, 1e305))
    out = evaluate(handle, 0.1)
    assert is_divergent(out)
    assert out == DIVERGENT_SAMPLE


def test_derivative_power_rule():
    assert derivative(TaylorSeries((0, 0, 1))).coeffs == (0j, 2 + 0j)


def test_derivative_constant_is_zero():
    assert derivative(TaylorSeries((7,))).coeffs == (0j,)


def test_derivative_term_by_term_oracle():
    # 1 + 3z + 5z^3: oracle differentiates term by term
    f = TaylorSeries((1, 3, 0, 5))
    oracle = tuple((n + 1) * f.coeffs[n + 1] for n in range(f.degree))
    assert derivative(f).coeffs == oracle == (3 + 0j, 0j, 15 + 0j)


def test_antiderivative_base_cases():
    assert antiderivative(TaylorSeries((1,))).coeffs == (0j, 1 + 0j)
    assert antiderivative(TaylorSeries((0, 2))).coeffs == (0j, 0j, 1 + 0j)


def test_antiderivative_inverts_derivative_example():
    f = TaylorSeries((3, 0, 15))
    assert antiderivative(f).coeffs == (0j, 3 + 0j, 0j, 5 + 0j)
    assert derivative(antiderivative(f)).coeffs == f.coeffs


@settings(max_examples=60, deadline=None)
@given(coeff_lists(max_degree=200))
def test_derivative_of_antiderivative_is_identity(cs):
    # round-trip c -> c/(n+1) -> *(n+1) is correctly rounded twice, so each
    # coefficient comes back within one ulp (bit-exact only when n+1 is a
    # power of two)
    f = TaylorSeries(tuple(cs))
    back = derivative(antiderivative(f))
    for a, b in zip(back.coeffs, f.coeffs):
        assert a == pytest.approx(b, rel=2.0 ** -51, abs=0.0)


def test_cauchy_difference_of_squares():
    out = cauchy_product(TaylorSeries((1, 1)), TaylorSeries((1, -1)), 2)
    assert out.coeffs == (1 + 0j, 0j, -1 + 0j)


def test_cauchy_annihilator():
    out = cauchy_product(TaylorSeries((2, 3, 4)), TaylorSeries((0,)))
    assert all(c == 0 for c in out.coeffs)


def test_cauchy_direct_convolution_oracle():
    f, g = TaylorSeries((1, 1, 1)), TaylorSeries((1, 1))
    out = cauchy_product(f, g, 3)
    oracle = [sum(f.coefficient(k) * g.coefficient(n - k) for k in range(n + 1))
              for n in range(4)]
    assert list(out.coeffs) == oracle == [1, 2, 2, 1]


def test_cauchy_truncation_flag_and_precondition():
    f, g = TaylorSeries((1, 1)), TaylorSeries((1, 1))
    assert cauchy_product(f, g, 1).truncated
    assert not cauchy_product(f, g, 2).truncated
    with pytest.raises(ValueError):
        cauchy_product(f, g, 3)


@settings(max_examples=40, deadline=None)
@given(coeff_lists(), coeff_lists())
def test_cauchy_commutative(cs1, cs2):
    f, g = TaylorSeries(tuple(cs1)), TaylorSeries(tuple(cs2))
    a, b = cauchy_product(f, g), cauchy_product(g, f)
    scale = max(1.0, max(abs(c) for c in a.coeffs))
    assert all(abs(x - y) <= 1e-14 * scale for x, y in zip(a.coeffs, b.coeffs))


@settings(max_examples=40, deadline=None)
@given(coeff_lists(max_degree=10), coeff_lists(max_degree=10), coeff_lists(max_degree=10),
       st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False))
def test_cauchy_bilinear(cs1, cs2, cs3, scalar):
    f, g, h = (TaylorSeries(tuple(c)) for c in (cs1, cs2, cs3))
    lhs = cauchy_product(f, g + h.scaled(scalar))
    rhs_g, rhs_h = cauchy_product(f, g), cauchy_product(f, h)
    deg = lhs.degree
    scale = max(1.0, max(abs(c) for c in lhs.coeffs))
    for n in range(deg + 1):
        want = rhs_g.coefficient(n) + scalar * rhs_h.coefficient(n)
        assert abs(lhs.coefficient(n) - want) <= 1e-12 * scale


def test_derivative_consistency_check_accepts_and_rejects():
    good = FunctionHandle.closed_form(lambda z: 1.0 / (1.0 - z),
                                      lambda z: (1.0 - z) ** -2.0)
    assert check_derivative_consistency(good) < 1e-6
    broken = FunctionHandle.closed_form(lambda z: 1.0 / (1.0 - z),
                                        lambda z: 1.1 * (1.0 - z) ** -2.0)
    with pytest.raises(DomainError):
        check_derivative_consistency(broken)


def test_horner_matches_numpy_polyval():
    rng = np.random.default_rng(7)
    cs = rng.normal(size=30) + 1j * rng.normal(size=30)
    f = TaylorSeries(tuple(cs))
    zs = 0.9 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    mine = evaluate(f, zs)
    ref = np.polyval(cs[::-1], zs)
    assert np.max(np.abs(mine - ref)) < 1e-12
