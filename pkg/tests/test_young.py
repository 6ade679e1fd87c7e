"""Young-function representation, generalized inverse, validation, Delta_2."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from youngcalc import functions as fn
from youngcalc.errors import DomainError, ValidationError
from youngcalc.extreal import INF, is_inf
from youngcalc.young import (Piece, YoungFunction, delta2, from_json_dict,
                             to_json_dict, validate, validate_or_raise,
                             young_from_samples)

# catalog instances covering all three classes
Y1_FUNCS = [fn.power(2), fn.power(3, 0.5), fn.hinge(1.0), fn.exp_minus_one(),
            fn.power_exp(2), fn.log_power(2), fn.example7_phi3()]
Y2_FUNCS = [fn.reciprocal(1.0), fn.reciprocal(2.0, 3.0)]
Y3_FUNCS = [fn.truncated_linear(2.0), fn.step(1.0)]


def test_evaluation_basics():
    assert fn.power(2)(0.0) == 0
    assert fn.hinge(1.0)(3.0) == 2
    assert is_inf(fn.step(1.0)(2.0))
    assert fn.step(1.0)(1.0) == 0
    with pytest.raises(ValueError):
        fn.power(2)(-1.0)


def test_characteristics():
    h = fn.hinge(1.0).characteristics()
    assert h.a_phi == 1.0 and is_inf(h.b_phi) and h.class_tag == "Y1"
    s = fn.step(1.0).characteristics()
    assert s.a_phi == 1.0 and s.b_phi == 1.0
    assert s.class_tag == "Y3" and s.u0 == 0 and s.degenerate_step
    p = fn.power(2).characteristics()
    assert p.a_phi == 0.0 and is_inf(p.b_phi) and p.class_tag == "Y1"
    assert is_inf(p.u0)
    r = fn.reciprocal(1.0).characteristics()
    assert r.class_tag == "Y2" and r.b_phi == 1.0 and is_inf(r.value_at_b)
    t = fn.truncated_linear(2.0).characteristics()
    assert t.class_tag == "Y3" and t.u0 == 2.0


def test_inverse_basics():
    assert fn.power(2).inverse(4.0) == pytest.approx(2.0, rel=1e-12)
    assert fn.step(1.0).inverse(100.0) == 1.0
    # Y3: inf{u : phi(u) > 3} does not exist below b, so inverse = b
    tl = fn.truncated_linear(2.0)
    assert tl.inverse(3.0) == 2.0
    assert tl(tl.inverse(3.0)) == 2.0 < 3.0
    # inverse at infinity is b
    assert tl.inverse(INF) == 2.0
    assert is_inf(fn.power(2).inverse(INF))


def _sample_vs(phi, n=10_000):
    vs = np.geomspace(1e-6, 1e6, n)
    if not is_inf(phi.value_at_b):
        vs = np.unique(np.concatenate([vs, [float(phi.value_at_b)]]))
    return vs


@pytest.mark.parametrize("phi", Y1_FUNCS + Y2_FUNCS + Y3_FUNCS)
def test_inverse_identities_phi_of_inverse(phi):
    """phi(phi^{-1}(v)) <= v everywhere; equality off the Y3 overshoot."""
    u0 = phi.u0
    for v in _sample_vs(phi, 2000):
        u = phi.inverse(v)
        pu = phi(u)
        if is_inf(pu):
            continue
        assert float(pu) <= v * (1 + 1e-9) + 1e-12
        if phi.class_tag in ("Y1", "Y2") or v <= float(u0):
            # Lemma-type equality on the attained range
            if u > float(phi.a_phi):
                assert float(pu) == pytest.approx(v, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("phi", Y1_FUNCS + Y2_FUNCS)
def test_inverse_identities_inverse_of_phi(phi):
    us = np.geomspace(max(float(phi.a_phi), 1e-6) * 1.001, 1e3, 500)
    if not is_inf(phi.b):
        us = us[us < float(phi.b)]
    for u in us:
        v = phi(u)
        if is_inf(v) or float(v) == 0.0:
            continue
        assert phi.inverse(float(v)) == pytest.approx(u, rel=1e-9)


@pytest.mark.parametrize("phi", Y1_FUNCS + Y2_FUNCS + Y3_FUNCS)
def test_inverse_monotone_nondecreasing(phi):
    vs = _sample_vs(phi, 800)
    inv = np.array([phi.inverse(v) for v in vs])
    assert np.all(np.diff(inv) >= -1e-12 * np.maximum(1.0, inv[:-1]))


def test_y3_split_at_u0_exact():
    """For the affine Y3 instance the split value u0 is exact."""
    tl = fn.truncated_linear(2.0)
    assert tl.u0 == 2.0
    # below u0 the inverse inverts exactly
    for v in (0.5, 1.0, 1.999, 2.0):
        assert tl.inverse(v) == pytest.approx(min(v, 2.0), rel=1e-12)
        assert float(tl(tl.inverse(v))) == pytest.approx(v, rel=1e-12)
    # above u0 the inverse saturates at b and phi(phi^{-1}(v)) < v
    for v in (2.0001, 3.0, 100.0):
        assert tl.inverse(v) == 2.0
        assert float(tl(2.0)) == 2.0 < v


@settings(max_examples=40, deadline=None)
@given(c=st.floats(0.25, 4.0), p=st.floats(1.0, 4.0),
       v=st.floats(1e-4, 1e4))
def test_inverse_scaling_homogeneity(c, p, v):
    """inverse(phi(c*.), v) == inverse(phi, v)/c for every catalog phi."""
    phi = fn.power(p)
    scaled = phi.scale_arg(c)
    assert scaled.inverse(v) == pytest.approx(phi.inverse(v) / c, rel=1e-9)


def test_scale_arg_all_kinds():
    c = 2.5
    for phi in Y1_FUNCS + Y2_FUNCS + Y3_FUNCS:
        scaled = phi.scale_arg(c)
        for u in (0.1, 0.5, 1.3):
            expect = phi(c * u)
            got = scaled(u)
            if is_inf(expect):
                assert is_inf(got)
            else:
                assert float(got) == pytest.approx(float(expect), rel=1e-12, abs=1e-15)


def test_validate_passes_catalog():
    for phi in Y1_FUNCS + Y2_FUNCS + Y3_FUNCS:
        rep = validate(phi)
        assert rep.passed, (phi, rep.failed_axioms())


def test_validate_concave_fails():
    # sqrt(u) as a power piece with p < 1 is concave
    bad = YoungFunction((Piece(0, "power", {"c": 1.0, "p": 0.5}),))
    rep = validate(bad)
    assert not rep.passed
    assert "midpoint-convexity" in rep.failed_axioms()
    assert rep.checks[[c.name for c in rep.checks].index("midpoint-convexity")].witness


def test_validate_origin_fails():
    bad = YoungFunction((Piece(0, "affine", {"slope": 1.0, "intercept": 1.0}),))
    rep = validate(bad)
    assert "origin" in rep.failed_axioms()


def test_validate_decreasing_fails():
    bad = YoungFunction((
        Piece(0, "affine", {"slope": 1.0, "intercept": 0.0}),
        Piece(1, "affine", {"slope": -0.5, "intercept": 1.5}),
    ))
    rep = validate(bad)
    assert not rep.passed


def test_validate_flags_degenerate_step():
    rep = validate(fn.step(1.0))
    assert rep.passed
    assert "degenerate_two_valued" in rep.flags


def test_validate_or_raise():
    validate_or_raise(fn.power(2))
    with pytest.raises(ValidationError):
        validate_or_raise(YoungFunction((Piece(0, "power", {"c": 1.0, "p": 0.5}),)))


def test_delta2_square_constant_four():
    rep = delta2(fn.power(2), "large")
    assert rep.satisfied
    assert rep.constant == pytest.approx(4.0, rel=1e-9)
    rep_small = delta2(fn.power(2), "small")
    assert rep_small.satisfied and rep_small.constant == pytest.approx(4.0, rel=1e-9)


def test_delta2_exponential_violated():
    rep = delta2(fn.exp_minus_one(), "large", span=(1.0, 200.0))
    assert not rep.satisfied
    assert rep.sups[2] > rep.sups[0]
    assert rep.witnesses


def test_delta2_domain_checks():
    with pytest.raises(DomainError):
        delta2(fn.truncated_linear(2.0), "large")
    with pytest.raises(DomainError):
        delta2(fn.hinge(1.0), "small")  # a_phi = 1 != 0


def test_json_round_trip():
    for phi in Y1_FUNCS + Y2_FUNCS + Y3_FUNCS:
        back = from_json_dict(to_json_dict(phi))
        for u in (0.0, 0.3, 1.0, 1.7, 5.0):
            expect, got = phi(u), back(u)
            if is_inf(expect):
                assert is_inf(got)
            else:
                assert float(got) == pytest.approx(float(expect), rel=1e-12, abs=1e-15)


def test_json_malformed_rejected():
    with pytest.raises(ValidationError):
        from_json_dict({"pieces": [{"kind": "power"}]})


def test_young_from_samples_recovers_affine():
    us = np.linspace(0.1, 10.0, 50)
    phi = fn.hinge(1.0)
    rebuilt = young_from_samples(us, [float(phi(u)) for u in us])
    for u in (0.5, 2.0, 7.0):
        assert float(rebuilt(u)) == pytest.approx(float(phi(u)), abs=1e-9)


def test_young_from_samples_truncates_on_inf():
    rebuilt = young_from_samples([0.5, 1.0, 2.0], [0.25, 1.0, INF])
    assert not is_inf(rebuilt.b)
    assert is_inf(rebuilt(3.0))


def test_eval_array_matches_scalar():
    for phi in Y1_FUNCS + Y2_FUNCS + Y3_FUNCS:
        us = np.array([0.0, 0.2, 0.9, 1.0, 1.5, 3.0])
        arr = phi.eval_array(us)
        for u, v in zip(us, arr):
            expect = phi(float(u))
            if is_inf(expect):
                assert is_inf(v)
            else:
                assert v == pytest.approx(float(expect), rel=1e-12, abs=1e-15)
