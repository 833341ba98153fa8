import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osctail import numdiff
from osctail import reference as ref
from osctail.model import (
    CorrectionResult,
    Integrand,
    IntegralResult,
    KernelKind,
    OscillatoryKernel,
    TruncationPoint,
    TruncationRule,
    parity_sign,
)

OMEGAS = (0.1, 1.0, 2.0, 17.3)


def test_kernel_requires_positive_omega():
    with pytest.raises(ValueError):
        OscillatoryKernel(KernelKind.SINE, 0.0)
    with pytest.raises(ValueError):
        OscillatoryKernel(KernelKind.COSINE, -2.0)
    with pytest.raises(ValueError):
        OscillatoryKernel(KernelKind.SINE, math.inf)


def test_kernel_evaluates():
    k = OscillatoryKernel(KernelKind.SINE, 2.0)
    assert k(math.pi / 4) == pytest.approx(1.0)
    c = OscillatoryKernel(KernelKind.COSINE, 1.0)
    assert c(0.0) == 1.0
    assert k.half_period == math.pi / 2.0


@given(st.integers(min_value=0, max_value=10**9))
def test_parity_sign_matches_integer_parity(n):
    assert parity_sign(n) == (1.0 if n % 2 == 0 else -1.0)


@settings(max_examples=200)
@given(
    n=st.integers(min_value=1, max_value=10**6),
    omega=st.sampled_from(OMEGAS),
    kind=st.sampled_from(list(KernelKind)),
    rule=st.sampled_from(list(TruncationRule)),
)
def test_truncation_point_roundtrip(n, omega, kind, rule):
    if kind is KernelKind.COSINE and rule is TruncationRule.KERNEL_EXTREMA:
        with pytest.raises(ValueError):
            TruncationPoint.from_index(OscillatoryKernel(kind, omega), rule, n)
        return
    kernel = OscillatoryKernel(kind, omega)
    t = TruncationPoint.from_index(kernel, rule, n)
    t.validate_against(kernel)
    assert t.reconstructed_index(kernel) == n


def test_truncation_point_rejects_misaligned_b():
    kernel = OscillatoryKernel(KernelKind.SINE, 1.0)
    t = TruncationPoint(b=10.0, n_index=3, rule=TruncationRule.KERNEL_ZEROS)
    with pytest.raises(ValueError):
        t.validate_against(kernel)


def test_truncation_point_basic_validation():
    with pytest.raises(ValueError):
        TruncationPoint(b=math.pi, n_index=0, rule=TruncationRule.KERNEL_ZEROS)
    with pytest.raises(ValueError):
        TruncationPoint(b=-math.pi, n_index=1, rule=TruncationRule.KERNEL_ZEROS)


def test_integrand_decay_hint_must_be_negative():
    with pytest.raises(ValueError):
        Integrand(fn=lambda x: x, decay_exponent=0.5)
    Integrand(fn=lambda x: x, decay_exponent=-1.0)  # fine


def test_integrand_derivative_lookup():
    f = Integrand(fn=lambda x: x * x, derivatives=[lambda x: x * x, lambda x: 2 * x])
    assert f.derivative(0)(3.0) == 9.0
    assert f.derivative(1)(3.0) == 6.0
    assert f.derivative(2) is None
    with pytest.raises(ValueError):
        f.derivative(-1)


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=32), min_size=1, max_size=12))
def test_correction_result_value_is_exact_sum(terms):
    r = CorrectionResult.from_terms(terms, order_k=len(terms) - 1)
    # fsum is exactly rounded, so any reassociation gives the same bits
    assert r.value == math.fsum(terms)
    assert r.value == math.fsum(reversed(terms))
    assert r.terms == tuple(terms)


def test_integral_result_total_is_one_addition():
    r = IntegralResult.build(0.1, 0.2, None, 5, 1.0)
    assert r.total == 0.1 + 0.2
    assert r.evaluations == 5


@pytest.mark.parametrize(
    "spec",
    [ref.make_exp(0.01), ref.make_exp(1.0), ref.make_inv_sqrt(), ref.make_cos_over_x(0.2)],
    ids=["exp0.01", "exp1", "invsqrt", "cosoverx0.2"],
)
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_registered_derivatives_agree_with_finite_differences(spec, m):
    # Cross-check, not bit equality: the closure must land within the
    # finite-difference scheme's own error scale at each probe point.
    h = math.pi / 16.0
    for x in (5.0, 20.0, 20.0 * math.pi):
        closure = spec.integrand.derivative(m)
        fd, fd_err = numdiff.central_derivative(spec.integrand.fn, m, x, h)
        scale = max(abs(fd), abs(closure(x)))
        assert abs(closure(x) - fd) <= max(100.0 * fd_err, 1e-10 * scale, 1e-15)
