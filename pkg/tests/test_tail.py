import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osctail import reference as ref
from osctail.errors import ConfigurationError
from osctail.model import (
    Integrand,
    KernelKind,
    OscillatoryKernel,
    TruncationPoint,
    TruncationRule,
)
from osctail.quadrature import QuadratureConfig
from osctail.tail import (
    CorrectionSpec,
    DerivativeSource,
    SecondaryOscillationWarning,
    correct_extrema,
    correct_series,
    correct_zeroth,
    decay_bound_exponent,
    error_estimate,
    integrate_left_tail,
    integrate_semi_infinite,
    select_truncation,
    warn_if_secondary_oscillation,
)

PI = math.pi
SIN1 = OscillatoryKernel(KernelKind.SINE, 1.0)
COS1 = OscillatoryKernel(KernelKind.COSINE, 1.0)
ZEROS = TruncationRule.KERNEL_ZEROS
EXTREMA = TruncationRule.KERNEL_EXTREMA


def zero_point(n, kernel=SIN1):
    return TruncationPoint.from_index(kernel, ZEROS, n)


# ---------------------------------------------------------------- selection


def test_select_already_aligned_sine():
    t = select_truncation(SIN1, ZEROS, 10 * PI)
    assert t.n_index == 10 and t.b == pytest.approx(10 * PI)


def test_select_cosine_rounds_up_to_half_integer():
    t = select_truncation(COS1, ZEROS, 4 * PI)
    assert t.n_index == 5 and t.b == pytest.approx(4.5 * PI)


def test_select_sine_omega_two():
    t = select_truncation(OscillatoryKernel(KernelKind.SINE, 2.0), ZEROS, 10.0)
    assert t.n_index == 7 and t.b == pytest.approx(3.5 * PI)


def test_select_respects_lower_limit():
    t = select_truncation(SIN1, ZEROS, 1.0, a=25.0)
    assert t.b >= 25.0 and t.n_index == 8


def test_select_validates_inputs():
    with pytest.raises(ValueError):
        select_truncation(SIN1, ZEROS, 0.0)
    with pytest.raises(ValueError):
        select_truncation(SIN1, ZEROS, 1.0, a=-1.0)
    with pytest.raises(ValueError):
        select_truncation(COS1, EXTREMA, 1.0)


@settings(max_examples=150)
@given(
    min_length=st.floats(min_value=1e-3, max_value=1e4),
    omega=st.sampled_from((0.1, 1.0, 2.0, 17.3)),
    kind=st.sampled_from(list(KernelKind)),
)
def test_select_returns_smallest_aligned_point(min_length, omega, kind):
    kernel = OscillatoryKernel(kind, omega)
    t = select_truncation(kernel, ZEROS, min_length)
    assert t.b >= min_length * (1 - 1e-10)
    if t.n_index > 1:
        previous = TruncationPoint.from_index(kernel, ZEROS, t.n_index - 1)
        assert previous.b < min_length


# -------------------------------------------------------------- corrections


def test_zeroth_exponential_reference_point():
    t = zero_point(20)
    c = correct_zeroth(ref.make_exp(0.01).integrand, SIN1, t)
    assert c.value == pytest.approx(math.exp(-0.2 * PI), rel=1e-14)
    assert c.order_k == 0 and len(c.terms) == 1


def test_zeroth_inverse_sqrt_even_and_odd_index():
    c2 = correct_zeroth(ref.make_inv_sqrt().integrand, SIN1, zero_point(2))
    assert c2.value == pytest.approx(1.0 / math.sqrt(2 * PI), rel=1e-14)
    c3 = correct_zeroth(ref.make_inv_sqrt().integrand, SIN1, zero_point(3))
    assert c3.value == pytest.approx(-1.0 / math.sqrt(3 * PI), rel=1e-14)


def test_zeroth_cosine_kernel():
    t = TruncationPoint.from_index(COS1, ZEROS, 5)  # b = 4.5*pi
    c = correct_zeroth(ref.make_exp(1.0).integrand, COS1, t)
    assert c.value == pytest.approx(-math.exp(-4.5 * PI), rel=1e-14)


def test_zeroth_scales_with_omega():
    kernel = OscillatoryKernel(KernelKind.SINE, 2.0)
    t = TruncationPoint.from_index(kernel, ZEROS, 4)  # b = 2*pi
    c = correct_zeroth(ref.make_exp(1.0).integrand, kernel, t)
    assert c.value == pytest.approx(math.exp(-2 * PI) / 2.0, rel=1e-14)


def test_series_one_extra_term_inverse_sqrt():
    # second derivative of x**-0.5 is (3/4) x**-2.5
    t = zero_point(2)
    c = correct_series(ref.make_inv_sqrt().integrand, SIN1, t, CorrectionSpec(order_k=1))
    expected = 1.0 / math.sqrt(2 * PI) - 0.75 * (2 * PI) ** -2.5
    assert c.value == pytest.approx(expected, rel=1e-14)
    assert c.terms[1] == pytest.approx(-0.75 * (2 * PI) ** -2.5, rel=1e-14)


def test_series_order_zero_is_zeroth_bit_for_bit():
    t = zero_point(20)
    f = ref.make_inv_sqrt().integrand
    a = correct_zeroth(f, SIN1, t)
    b = correct_series(f, SIN1, t, CorrectionSpec(order_k=0))
    assert a.value == b.value and a.terms == b.terms


def test_series_error_estimate_reference_value():
    t = zero_point(20)
    c = correct_series(
        ref.make_inv_sqrt().integrand,
        SIN1,
        t,
        CorrectionSpec(order_k=0, emit_error_estimate=True),
    )
    assert c.error_estimate == pytest.approx(2.392e-5, rel=0.01)
    # the estimate is the first omitted term of the series
    assert c.error_estimate == pytest.approx(0.75 * (20 * PI) ** -2.5, rel=1e-12)


def test_series_rejects_extrema_alignment():
    t = TruncationPoint.from_index(SIN1, EXTREMA, 4)
    with pytest.raises(ValueError):
        correct_series(ref.make_inv_sqrt().integrand, SIN1, t, CorrectionSpec(order_k=0))


def test_order_k_bounds():
    with pytest.raises(ValueError):
        CorrectionSpec(order_k=9)
    with pytest.raises(ValueError):
        CorrectionSpec(order_k=-1)


@settings(max_examples=80)
@given(n=st.integers(min_value=2, max_value=500))
def test_adjacent_indices_flip_leading_sign(n):
    f = ref.make_exp(0.05).integrand
    lead_n = correct_zeroth(f, SIN1, zero_point(n)).terms[0]
    lead_n1 = correct_zeroth(f, SIN1, zero_point(n + 1)).terms[0]
    assert lead_n * lead_n1 < 0.0


def test_analytic_required_raises_without_closures():
    bare = Integrand(fn=lambda x: 1.0 / math.sqrt(x), name="bare")
    spec = CorrectionSpec(order_k=1, derivative_source=DerivativeSource.ANALYTIC_REQUIRED)
    with pytest.raises(ConfigurationError):
        correct_series(bare, SIN1, zero_point(4), spec)


def test_fd_fallback_matches_analytic_through_order_two():
    bare = Integrand(fn=lambda x: 1.0 / math.sqrt(x), name="bare")
    t = zero_point(20)
    fd = correct_series(bare, SIN1, t, CorrectionSpec(order_k=2))
    exact = correct_series(ref.make_inv_sqrt().integrand, SIN1, t, CorrectionSpec(order_k=2))
    for got, want in zip(fd.terms, exact.terms):
        assert got == pytest.approx(want, rel=1e-3)


def test_fd_fallback_refuses_high_order():
    bare = Integrand(fn=lambda x: 1.0 / math.sqrt(x), name="bare")
    with pytest.raises(ConfigurationError):
        correct_series(bare, SIN1, zero_point(4), CorrectionSpec(order_k=3))


# ------------------------------------------------------------------ extrema


def test_extrema_exponential_leading_term():
    t = TruncationPoint.from_index(SIN1, EXTREMA, 4)  # x_T = 3.5*pi
    c = correct_extrema(ref.make_exp(1.0).integrand, SIN1, t, CorrectionSpec(order_k=0))
    assert c.value == pytest.approx(-math.exp(-3.5 * PI), rel=1e-14)


def test_extrema_constant_factor_vanishes():
    const = Integrand(fn=lambda x: 3.0, derivatives=[lambda x: 3.0] + [lambda x: 0.0] * 8)
    t = TruncationPoint.from_index(SIN1, EXTREMA, 7)
    c = correct_extrema(const, SIN1, t, CorrectionSpec(order_k=1))
    assert c.value == 0.0


def test_extrema_inverse_sqrt_leading_term():
    t = TruncationPoint.from_index(SIN1, EXTREMA, 2)  # x_T = 1.5*pi
    c = correct_extrema(ref.make_inv_sqrt().integrand, SIN1, t, CorrectionSpec(order_k=0))
    assert c.value == pytest.approx(-0.5 * (1.5 * PI) ** -1.5, rel=1e-14)


def test_extrema_requires_sine_and_extrema_alignment():
    t = zero_point(4)
    with pytest.raises(ValueError):
        correct_extrema(ref.make_inv_sqrt().integrand, SIN1, t, CorrectionSpec(order_k=0))


# ----------------------------------------------------------- residual series


def test_error_estimate_empty_sum_is_zero():
    assert error_estimate(ref.make_inv_sqrt().integrand, SIN1, zero_point(7), 1) == 0.0


def test_error_estimate_matches_reference_series():
    f = ref.make_inv_sqrt().integrand
    for n, frozen in ((2, -0.00695), (20, -2.392e-5)):
        got = error_estimate(f, SIN1, zero_point(n), 4)
        assert got == pytest.approx(ref.example2_error_series(n * PI, 3), rel=1e-12)
        assert got == pytest.approx(frozen, rel=0.01)


def test_error_estimate_cos_over_x_two_terms():
    f = ref.make_cos_over_x(0.2).integrand
    got = error_estimate(f, SIN1, zero_point(100), 3)
    assert got == pytest.approx(ref.example3_error_two_terms(100 * PI, 0.2), rel=1e-9)
    assert got == pytest.approx(1.273e-4 + 5.077e-6, rel=0.01)


def test_error_estimate_requires_closures():
    bare = Integrand(fn=lambda x: 1.0 / math.sqrt(x), name="bare")
    with pytest.raises(ConfigurationError):
        error_estimate(bare, SIN1, zero_point(4), 2)
    with pytest.raises(ValueError):
        error_estimate(bare, SIN1, zero_point(4), 0)


@pytest.mark.parametrize("order_k", [0, 1, 2])
@pytest.mark.parametrize("n", [4, 10, 20, 50, 100])
def test_series_residual_bounded_by_first_omitted_term(order_k, n):
    # asymptotic bracketing: the truth sits within twice the first omitted term
    spec = ref.make_inv_sqrt()
    t = zero_point(n)
    truth = ref.oracle_tail(spec.integrand, SIN1, t.b, 1e-13)
    approx = correct_series(spec.integrand, SIN1, t, CorrectionSpec(order_k=order_k))
    omitted = abs(spec.integrand.derivative(2 * (order_k + 1))(t.b))
    assert abs(truth - approx.value) <= 2.0 * omitted


# --------------------------------------------------------- full integration


def test_semi_infinite_exponential():
    r = integrate_semi_infinite(ref.make_exp(1.0).integrand, SIN1, 0.0, 10 * PI)
    assert r.total == pytest.approx(0.5, abs=1e-9)
    assert r.evaluations > 0
    assert r.total == r.finite_part + r.tail_correction


def test_semi_infinite_inverse_sqrt_headline():
    r = integrate_semi_infinite(
        ref.make_inv_sqrt().integrand, SIN1, 0.0, 100 * PI, cspec=CorrectionSpec(order_k=0)
    )
    exact = math.sqrt(PI / 2.0)
    assert abs(r.total - exact) / exact < 5e-7


def test_semi_infinite_cos_over_x():
    r = integrate_semi_infinite(ref.make_cos_over_x(0.2).integrand, SIN1, 0.0, 100 * PI)
    assert abs(r.total - PI / 2.0) / (PI / 2.0) < 1e-4


def test_semi_infinite_counts_derivative_evaluations():
    f = ref.make_exp(1.0).integrand
    r0 = integrate_semi_infinite(f, SIN1, 0.0, 4 * PI, cspec=CorrectionSpec(order_k=0))
    r2 = integrate_semi_infinite(f, SIN1, 0.0, 4 * PI, cspec=CorrectionSpec(order_k=2))
    assert r2.evaluations == r0.evaluations + 2


@pytest.mark.parametrize("omega", [0.5, 2.0, 5.0])
def test_omega_scaling_identity(omega):
    qcfg = QuadratureConfig()
    kernel = OscillatoryKernel(KernelKind.SINE, omega)
    f = ref.make_exp(1.0).integrand
    direct = integrate_semi_infinite(f, kernel, 0.0, 30.0, qcfg, CorrectionSpec(order_k=1))
    stretched = Integrand(
        fn=lambda x: math.exp(-x / omega),
        derivatives=[
            (lambda x, m=m: (-1.0 / omega) ** m * math.exp(-x / omega))
            for m in range(ref.MAX_REGISTERED_DERIVATIVE + 1)
        ],
    )
    via_unit = integrate_semi_infinite(
        stretched, SIN1, 0.0, 30.0 * omega, qcfg, CorrectionSpec(order_k=1)
    )
    assert abs(direct.total - via_unit.total / omega) <= 10 * qcfg.rel_tol * abs(direct.total)
    assert direct.total == pytest.approx(omega / (1 + omega * omega), rel=1e-9)


# ---------------------------------------------------------------- left tail


def test_left_tail_exponential_reflection():
    grows = Integrand(
        fn=lambda x: math.exp(x),
        derivatives=[(lambda x, m=m: math.exp(x)) for m in range(9)],
        name="exp(x)",
    )
    c = integrate_left_tail(grows, SIN1, zero_point(20), CorrectionSpec(order_k=0))
    assert c.value == pytest.approx(-math.exp(-20 * PI), rel=1e-14)


def test_left_tail_even_factor_cosine_symmetry():
    even = Integrand(
        fn=lambda x: 1.0 / (1.0 + x * x),
        name="1/(1+x^2)",
    )
    t = TruncationPoint.from_index(COS1, ZEROS, 8)
    left = integrate_left_tail(even, COS1, t, CorrectionSpec(order_k=0))
    right = correct_zeroth(even, COS1, t)
    assert left.value == right.value


def test_left_tail_zero_factor():
    zero = Integrand(fn=lambda x: 0.0, derivatives=[lambda x: 0.0] * 9)
    c = integrate_left_tail(zero, SIN1, zero_point(5), CorrectionSpec(order_k=1))
    assert c.value == 0.0


# ------------------------------------------------------------- diagnostics


def test_secondary_oscillation_warning_threshold():
    with pytest.warns(SecondaryOscillationWarning):
        warn_if_secondary_oscillation(0.6, SIN1)
    with pytest.warns(SecondaryOscillationWarning):
        warn_if_secondary_oscillation(0.5, SIN1)  # boundary included


def test_no_warning_for_slow_secondary_oscillation(recwarn):
    warn_if_secondary_oscillation(0.2, SIN1)
    assert not [w for w in recwarn if issubclass(w.category, SecondaryOscillationWarning)]


def test_decay_bound_exponent_shape():
    assert decay_bound_exponent(-0.5, 0) == -1.5
    assert decay_bound_exponent(-0.5, 2) == -5.5
