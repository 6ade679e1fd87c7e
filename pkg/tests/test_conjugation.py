"""The complementary operation: golden values, catalog, properties."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from youngcalc import conjugation as conj
from youngcalc import functions as fn
from youngcalc.errors import DomainError
from youngcalc.extreal import INF, is_inf


def test_power_pair_golden():
    """phi = u^2/2, phi1 = u^4/4: the result is u^4/4."""
    phi, phi1 = fn.power_over_p(2), fn.power_over_p(4)
    assert conj.ominus(phi, phi1, 2.0) == pytest.approx(4.0, rel=1e-6)
    closed = conj.catalog_closed_form(phi, phi1)
    for u in np.geomspace(1e-2, 1e2, 25):
        assert float(closed(u)) == pytest.approx(u ** 4 / 4, rel=1e-12)
        assert conj.ominus(phi, phi1, float(u)) == pytest.approx(u ** 4 / 4, rel=1e-6)


def test_power_pair_zero_variant_golden():
    """Same pair, v restricted to [0,1]: u^2/2 - 1/4 for u >= 1."""
    phi, phi1 = fn.power_over_p(2), fn.power_over_p(4)
    assert conj.ominus_zero(phi, phi1, 2.0) == pytest.approx(1.75, rel=1e-6)
    closed = conj.catalog_closed_form_zero(phi, phi1)
    for u in (0.5, 1.0, 1.5, 3.0, 10.0):
        expect = conj.ominus_zero(phi, phi1, u)
        assert float(closed(u)) == pytest.approx(expect, rel=1e-6, abs=1e-9)


def test_equal_power_zero_variant_is_hinge_like():
    phi = fn.power_over_p(2)
    assert conj.ominus_zero(phi, phi, 1.0) == pytest.approx(0.0, abs=1e-9)
    assert conj.ominus_zero(phi, phi, 2.0) == pytest.approx(2.0 - 0.5, rel=1e-6)


def test_identical_y1_pair_is_step():
    phi = fn.power_over_p(2)
    closed = conj.catalog_closed_form(phi, phi)
    assert closed == fn.step(1.0)
    assert conj.ominus(phi, phi, 0.9) == 0.0
    assert conj.ominus(phi, phi, 1.0) == 0.0
    assert is_inf(conj.ominus(phi, phi, 2.0))


def test_hinge_chain_goldens():
    """max(u-1,0) against u^2, then iterating through the chain."""
    phi = fn.example7_phi()
    assert conj.ominus(phi, fn.example7_phi1(), 4.0) == pytest.approx(3.0, rel=1e-6)
    phi2 = conj.catalog_closed_form(phi, fn.example7_phi1())
    assert phi2 == fn.example7_phi2()
    phi3 = conj.catalog_closed_form(phi, phi2)
    assert phi3 == fn.example7_phi3()
    phi4 = conj.catalog_closed_form(phi, phi3)
    assert phi4 == fn.example7_phi2()
    # numerics agree with each closed form on the finite part
    for phi1, closed in ((fn.example7_phi1(), phi2), (phi2, phi3), (phi3, phi4)):
        for u in np.geomspace(1e-2, 1e2, 17):
            expect = float(closed(float(u)))
            got = conj.ominus(phi, phi1, float(u))
            if expect == 0.0:
                assert got <= 1e-9
            else:
                assert got == pytest.approx(expect, rel=1e-6)


def test_sqrt_doubling_composition():
    """phi(u) = 2*phi1(sqrt(u)) reproduces phi1 (exponential instance)."""
    phi1 = fn.power_exp(2.0, 1.0, 1.0)
    phi = fn.power_exp(1.0, 1.0, 2.0)
    assert conj.catalog_closed_form(phi, phi1) == phi1
    for u in (0.5, 1.0, 1.5, 2.5):
        assert conj.ominus(phi, phi1, u) == pytest.approx(float(phi1(u)), rel=1e-5)


def test_quartic_pair_goldens():
    """u^2 against the piecewise u^p/u^4 family (three exponents)."""
    phi = fn.example11_phi()
    theta = fn.example11_theta()
    for p in (1.0, 1.5, 2.0):
        closed = conj.catalog_closed_form(phi, fn.example11_phi_p(p))
        assert closed == theta
    # spot-check numerics against theta's three pieces
    for u in (0.5, 1.0, 1.2, 2.0, 5.0):
        expect = float(theta(u))
        got = conj.ominus(phi, fn.example11_phi_p(1.0), u)
        assert got == pytest.approx(expect, rel=1e-6, abs=1e-9)
    # and the second application lands on u^2 / u^4
    phi2 = conj.catalog_closed_form(phi, theta)
    assert phi2 == fn.example11_phi2()
    for u in (0.5, 1.0, 2.0):
        assert conj.ominus(phi, theta, u) == pytest.approx(float(phi2(u)), rel=1e-6)


def test_double_application_disagreement_region():
    """Iterating twice recovers phi1 only on [1, inf) for the p=1 instance."""
    phi = fn.example11_phi()
    phi1 = fn.example11_phi_p(1.0)
    rep = conj.double_ominus_check(phi, phi1)
    assert not rep.all_agree
    assert rep.first_disagreement is not None and rep.first_disagreement < 1.0
    for u, ok in zip(rep.us, rep.agree):
        if u >= 1.0:
            assert ok, u
        if u < 1.0:
            # the iterate equals u^2 there, not u
            assert not ok, u


def test_double_application_agreement_case():
    """The hinge chain closes: phi ominus phi3 equals phi2 everywhere."""
    rep = conj.double_ominus_check(fn.example7_phi(), fn.example7_phi1())
    # iterate = phi ominus phi2 = phi3 != phi1 = u^2, so most points disagree;
    # this guards the report plumbing rather than a mathematical identity
    assert rep.inner_closed_form == fn.example7_phi2()


def test_value_at_zero_and_monotone():
    phi, phi1 = fn.power_over_p(2), fn.power_over_p(4)
    assert conj.ominus(phi, phi1, 0.0) == 0.0
    us = np.geomspace(1e-2, 1e2, 21)
    vals = [conj.ominus(phi, phi1, float(u)) for u in us]
    assert all(b >= a * (1 - 1e-9) for a, b in zip(vals, vals[1:]))


def test_divergent_pair_flags_infinite():
    """p > p1 (u^4 against u^2): the supremum is infinite for every u > 0."""
    detail = conj.ominus_detail(fn.power(4), fn.power(2), 1.0)
    assert is_inf(detail.value) and detail.diverged
    assert conj.catalog_closed_form(fn.power(4), fn.power(2)) is None


def test_both_finite_b_rejected():
    with pytest.raises(DomainError):
        conj.ominus(fn.truncated_linear(2.0), fn.reciprocal(1.0), 1.0)


def test_finite_b_phi_gives_infinity():
    # phi jumps to +inf at b while phi1 stays finite
    assert is_inf(conj.ominus(fn.truncated_linear(2.0), fn.power(2), 0.5))


def test_young_inequality_by_construction():
    phi, phi1 = fn.power_over_p(2), fn.power_over_p(4)
    for u in (0.3, 1.0, 2.7):
        val = conj.ominus(phi, phi1, u)
        for v in np.geomspace(1e-2, 1e2, 40):
            lhs = float(phi(u * v))
            rhs = float(phi1(v)) + val
            assert lhs <= rhs * (1 + 1e-9) + 1e-12


def test_monotone_refinement():
    phi, phi1 = fn.example7_phi(), fn.example7_phi1()
    coarse = conj.OminusOptions(n_grid=5001)
    dense = conj.OminusOptions(n_grid=40_001)
    for u in (0.5, 2.0, 7.0):
        v1 = conj.ominus(phi, phi1, u, coarse)
        v2 = conj.ominus(phi, phi1, u, dense)
        assert v2 >= v1 - 1e-9 * max(1.0, abs(v1))


@settings(max_examples=20, deadline=None)
@given(c=st.floats(0.25, 4.0), p=st.floats(1.0, 3.0),
       c1=st.floats(0.25, 4.0), dp=st.floats(0.5, 3.0))
def test_inverse_product_bound_power_pairs(c, p, c1, dp):
    """phi1^{-1}(u) * phi2^{-1}(u) <= 2 * phi^{-1}(u) for catalog pairs."""
    phi = fn.power(p, c)
    phi1 = fn.power(p + dp, c1)
    phi2 = conj.catalog_closed_form(phi, phi1)
    assert phi2 is not None
    for u in np.geomspace(1e-4, 1e4, 200):
        lhs = phi1.inverse(float(u)) * phi2.inverse(float(u))
        rhs = 2.0 * phi.inverse(float(u))
        assert lhs <= rhs * (1 + 1e-9)


def test_table_interface():
    res = conj.ominus_table(fn.power_over_p(2), fn.power_over_p(4), [0.5, 1.0, 2.0])
    assert res.closed_form is not None
    assert res.values[2] == pytest.approx(4.0, rel=1e-6)
    assert not any(res.diverged)
