import cmath
import math

import numpy as np
import pytest
import scipy.integrate

from gfcperiods import (
    agm_elliptic_periods,
    base_integrals,
    beta_closed_form,
    crosscheck_report,
    enumerate_forms,
    integrate_word,
    validate_spec,
)
from gfcperiods.curve import FormIndex
from gfcperiods.errors import DegenerateLambda, InvalidArity
from gfcperiods.homology import ConjComm, Power
from gfcperiods.oracle import WordIntegrator, _optimal_agm, reduce_tau
from gfcperiods.periods import zeta_power


@pytest.fixture(scope="module")
def wi32(quad_cfg):
    spec = validate_spec(3, 2, [])
    return WordIntegrator(spec, quad_cfg), base_integrals(spec, quad_cfg)


def test_separa_decomposition(wi32):
    wi, _ = wi32
    spec = wi.spec
    k = spec.k
    for form in enumerate_forms(spec):
        m = form.m_exponents
        lhs = wi.integrate_word(ConjComm(g=(0, 0), j=1, l=2), form)
        i1 = wi.single_loop_integral(1, form)
        i2 = wi.single_loop_integral(2, form)
        rhs = (1 - zeta_power(k, m[1])) * i1 - (1 - zeta_power(k, m[0])) * i2
        assert abs(lhs - rhs) / abs(rhs) < 1e-8


def test_expliciti_reduction(wi32):
    wi, J = wi32
    spec = wi.spec
    for c, form in enumerate(enumerate_forms(spec)):
        m = form.m_exponents
        for i in (1, 2):
            lhs = wi.single_loop_integral(i, form)
            rhs = -(1 - zeta_power(spec.k, m[i - 1])) * J[i - 1, c] / spec.k
            assert abs(lhs - rhs) / abs(rhs) < 1e-8


def test_power_word_vanishing(wi32):
    wi, J = wi32
    for c, form in enumerate(enumerate_forms(wi.spec)):
        scale = np.max(np.abs(J[:, c]))
        for i in (1, 2):
            assert abs(wi.integrate_word(Power(i), form)) <= 1e-8 * scale


def test_sumasuma_covariance(wi32):
    wi, _ = wi32
    spec = wi.spec
    form = enumerate_forms(spec)[0]
    base = wi.integrate_word(ConjComm(g=(0, 0), j=1, l=2), form)
    from gfcperiods.homology import conjugation_phase

    for g in [(1, 0), (0, 1), (2, 2), (1, 2)]:
        word = ConjComm(g=g, j=1, l=2)
        lhs = wi.integrate_word(word, form)
        rhs = conjugation_phase(word, form, spec.k) * base
        assert abs(lhs - rhs) < 1e-8 * abs(base)


def test_memoized_matches_literal_traversal(quad_cfg):
    spec = validate_spec(2, 3, [2.0])
    wi = WordIntegrator(spec, quad_cfg)
    form = enumerate_forms(spec)[0]
    for word in [ConjComm(g=(1, 0, 1), j=1, l=3), ConjComm(g=(0, 1, 1), j=2, l=3)]:
        fast = wi.integrate_word(word, form, memoize=True)
        slow = wi.integrate_word(word, form, memoize=False)
        assert abs(fast - slow) < 1e-10 * max(1.0, abs(slow))


def test_beta_magnitude_and_phase_consistency(quad_cfg):
    # |J_2 - J_1| is the Beta value; with the branch anchored at the default
    # base point (upper half plane) the unit prefactor is
    # exp(i pi (1 - (alpha_1 + 1 + alpha_2)/k)) for every form.
    for k in (3, 4, 5):
        spec = validate_spec(k, 2, [])
        J = base_integrals(spec, quad_cfg)
        for c, form in enumerate(enumerate_forms(spec)):
            diff = J[1, c] - J[0, c]
            b = beta_closed_form(form, k)
            assert abs(abs(diff) - b) / b < 1e-9
            a1, a2 = form.alpha
            predicted = cmath.exp(1j * math.pi * (1 - (a1 + 1 + a2) / k))
            assert abs(diff / b - predicted) < 1e-9


def test_beta_closed_form_values():
    assert abs(beta_closed_form(FormIndex(alpha=(0, 1)), 2) - math.pi) < 1e-14
    g = math.gamma
    expected = g(0.25) * g(0.5) / g(0.75)
    assert abs(beta_closed_form(FormIndex(alpha=(0, 2)), 4) - expected) < 1e-12
    expected = g(1 / 3) ** 2 / g(2 / 3)
    assert abs(beta_closed_form(FormIndex(alpha=(0, 2)), 3) - expected) < 1e-12


def test_beta_closed_form_rejects_higher_rank():
    with pytest.raises(InvalidArity):
        beta_closed_form(FormIndex(alpha=(0, 1, 1)), 2)


def test_agm_fixed_point():
    assert _optimal_agm(3.7 + 0j, 3.7 + 0j) == 3.7 + 0j


def test_agm_rejects_degenerate_lambda():
    for lam in (0.0, 1.0):
        with pytest.raises(DegenerateLambda):
            agm_elliptic_periods(lam)


@pytest.mark.parametrize("lam", [2.0, 5.0])
def test_agm_matches_adaptive_quadrature(lam):
    w1, w2 = agm_elliptic_periods(lam)
    f1 = lambda x: 1.0 / math.sqrt(x * (1 - x) * (lam - x))
    v1, _ = scipy.integrate.quad(f1, 0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    f2 = lambda x: 1.0 / math.sqrt(x * (x - 1) * (lam - x))
    v2, _ = scipy.integrate.quad(f2, 1.0, lam, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert abs(w1 - 2 * v1) < 1e-10 * abs(w1)
    assert abs(w2 - 2j * v2) < 1e-10 * abs(w2)
    assert abs((w2 / w1).imag) > 0.1


def test_agm_lattice_shape_invariant_under_moebius():
    # lambda, 1 - lambda and 1/lambda give isomorphic curves, so the reduced
    # period ratios coincide
    for lam in (2.0, 3.0 + 1.0j):
        taus = []
        for image in (lam, 1 - lam, 1 / lam):
            w1, w2 = agm_elliptic_periods(image)
            taus.append(reduce_tau(w2 / w1))
        for tau in taus[1:]:
            assert abs(tau - taus[0]) < 1e-8


def test_agm_carlson_crosscheck():
    # independent route: complete cycle integrals via Carlson symmetric forms
    from scipy.special import elliprf

    for lam in (2.0, 5.0, 2.0 + 1.0j):
        e1, e2, e3 = lam, 1.0, 0.0
        w1, w2 = agm_elliptic_periods(lam)
        c1 = 4.0 * elliprf(0.0, e1 - e3, e1 - e2)
        assert abs(w1 - c1) < 1e-10 * abs(w1)


def test_crosscheck_report_passes(quad_cfg):
    spec = validate_spec(3, 2, [])
    report = crosscheck_report(spec, quad_cfg, sample=9, seed=0)
    assert report.passed
    names = {c.name for c in report.checks}
    assert {"power_word_vanishing", "closed_form_vs_contour", "beta_magnitude"} <= names


def test_crosscheck_report_agm_branch(quad_cfg):
    report = crosscheck_report(validate_spec(2, 3, [2.0]), quad_cfg, sample=5, seed=3)
    assert report.passed
    assert any(c.name == "agm_lattice_equality" for c in report.checks)


def test_integrate_word_free_function(quad_cfg):
    spec = validate_spec(3, 2, [])
    form = enumerate_forms(spec)[0]
    word = ConjComm(g=(0, 0), j=1, l=2)
    value = integrate_word(word, form, spec, quad_cfg)
    wi = WordIntegrator(spec, quad_cfg)
    assert value == wi.integrate_word(word, form)
