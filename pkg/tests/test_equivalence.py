"""Multiplicative inverse relations, constant extension, degeneracy links."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from youngcalc import equivalence as eq
from youngcalc import functions as fn
from youngcalc import pathology as path
from youngcalc.errors import DomainError


def test_holder_triple_exact_constants():
    """u^p, u^{p'} conjugate exponents against u: C = D = 1."""
    phi1, phi2, phi = fn.power(2), fn.power(2), fn.power(1)
    left = eq.check_product_relation(phi1, phi2, phi, "left")
    right = eq.check_product_relation(phi1, phi2, phi, "right")
    assert left.holds and right.holds
    assert left.constant == pytest.approx(1.0, rel=1e-9)
    assert right.constant == pytest.approx(1.0, rel=1e-9)


def test_holder_triple_general_exponents():
    p = 3.0
    q = p / (p - 1.0)
    left = eq.check_product_relation(fn.power(p), fn.power(q), fn.power(1), "left")
    assert left.holds and left.constant == pytest.approx(1.0, rel=1e-8)


def test_square_against_linear_refuted():
    """phi = u^2 with phi1 = phi2 = u: the left relation needs the inverse
    ratio bounded below, but it decays like u^{-3/2}."""
    rep = eq.check_product_relation(fn.power(1), fn.power(1), fn.power(2),
                                    "left", eq.ArgRange("large"))
    assert rep.refuted
    assert rep.extremal_trace[-1] < rep.extremal_trace[0] / 100


def test_right_direction_divergence_refuted():
    # near zero phi^{-1}/product = sqrt(u)/u^2 blows up like u^{-3/2}:
    # no constant D can exist for small arguments
    rep = eq.check_product_relation(fn.power(1), fn.power(1), fn.power(2),
                                    "right", eq.ArgRange("small"))
    assert rep.refuted


def test_gap_function_pair_left_holds():
    """The gap function against u^2/2 with the 0/inf step as partner:
    step^{-1} == 1 so the relation compares psi^{-1} with phi^{-1} directly."""
    psi = path.build_psi(path.build_gap_sequence(12)).young
    left = eq.check_product_relation(psi, fn.step(1.0), fn.quadratic_half(),
                                     "left", eq.ArgRange("large"))
    assert left.holds
    assert left.constant == pytest.approx(1.0, rel=1e-3)


def test_gap_function_unbounded_inverse_ratio():
    """The right-direction constant for the gap pair cannot exist: along the
    doubled-breakpoint subsequence the ratio phi^{-1}/psi^{-1} grows without
    bound (too slowly for the two-decade refutation standard, so the witness
    is checked on the subsequence itself)."""
    build = path.build_psi(path.build_gap_sequence(14))
    psi, phi = build.young, fn.quadratic_half()
    ratios = []
    for uk in build.seq.u[:12]:
        w = float(build.psi_exact(2 * uk))
        ratios.append(phi.inverse(w) / psi.inverse(w))
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    # the squared ratio is 1 + 2a_{n+1}/u_n up to a factor, growing linearly
    assert ratios[-1] ** 2 > 3.0 * ratios[0] ** 2


def test_step_partner_is_identity_element():
    """With phi2 = 0/inf step at 1, the product relation reduces to comparing
    phi1^{-1} with phi^{-1} exactly."""
    step = fn.step(1.0)
    for v in (0.1, 1.0, 7.0, 1e5):
        assert step.inverse(v) == 1.0
    left = eq.check_product_relation(fn.power(2), step, fn.power(2), "left")
    right = eq.check_product_relation(fn.power(2), step, fn.power(2), "right")
    assert left.holds and right.holds
    assert left.constant == pytest.approx(1.0, rel=1e-9)
    assert right.constant == pytest.approx(1.0, rel=1e-9)


def test_extend_constants_power_triple():
    rng = eq.ArgRange("large", 1.0)
    rep = eq.check_product_relation(fn.power(2), fn.power(2), fn.power(1), "left", rng)
    extended = eq.extend_constants(fn.power(2), fn.power(2), fn.power(1),
                                   rep, 0.01)
    assert extended.constant == pytest.approx(1.0, rel=1e-9)
    assert extended.arg_range.threshold == 0.01


def test_extend_constants_direction_guard():
    rng = eq.ArgRange("large", 1.0)
    rep = eq.check_product_relation(fn.power(2), fn.power(2), fn.power(1), "left", rng)
    with pytest.raises(DomainError):
        eq.extend_constants(fn.power(2), fn.power(2), fn.power(1), rep, 10.0)


def test_degeneracy_links_consistent_holder():
    rep = eq.degeneracy_links(fn.power(2), fn.power(2), fn.power(1),
                              eq.ArgRange("all"))
    assert rep.consistent


def test_degeneracy_links_detect_b_mismatch():
    """A finite-b partner under a claimed large-argument equivalence forces
    b_phi < inf; with b_phi = inf the link flags the inconsistency."""
    rep = eq.degeneracy_links(fn.truncated_linear(2.0), fn.reciprocal(1.0),
                              fn.power(2), eq.ArgRange("large"))
    assert rep.b_link_applicable and not rep.b_link_consistent
    assert not rep.consistent


def test_degeneracy_links_a_zero_rule():
    # a_phi = 0 iff a_phi1 = 0 or a_phi2 = 0
    rep = eq.degeneracy_links(fn.hinge(1.0), fn.hinge(1.0), fn.power(2),
                              eq.ArgRange("small"))
    assert rep.a_link_applicable and not rep.a_link_consistent


def test_bridge_product_sum_holder():
    rep = eq.bridge_product_sum(fn.power(2), fn.power(2), fn.power(1), 1.0)
    assert rep.sum_holds
    assert rep.product_holds
    assert rep.product_constant == 0.5


def test_bridge_detects_inflated_constant():
    rep = eq.bridge_product_sum(fn.power(2), fn.power(2), fn.power(1), 10.0)
    assert not rep.sum_holds
    assert rep.sum_counterexample is not None


def test_skipped_fraction_recorded():
    # generalized inverses are positive at positive arguments, so no point on
    # the positive geometric grid degenerates to 0/0 for catalog functions
    rep = eq.check_product_relation(fn.hinge(1.0), fn.hinge(1.0), fn.hinge(1.0),
                                    "left", eq.ArgRange("small"))
    assert rep.skipped_fraction == 0.0


def test_range_for_model():
    assert eq.range_for_model("counting(8)").kind == "small"
    assert eq.range_for_model("grid01").kind == "large"


def test_multiplier_inclusion_predicate_equality():
    verdict = eq.multiplier_inclusion_predicate("grid01", fn.power(2),
                                                fn.power(2), fn.power(1))
    assert verdict.verdict == "equality"


@settings(max_examples=15, deadline=None)
@given(p=st.floats(1.0, 4.0))
def test_conjugate_exponent_pairs_always_equal(p):
    q = p / (p - 1.0) if p > 1.0 else None
    if q is None or q > 64:
        return
    left = eq.check_product_relation(fn.power(p), fn.power(q), fn.power(1),
                                     "left", n=2000)
    right = eq.check_product_relation(fn.power(p), fn.power(q), fn.power(1),
                                      "right", n=2000)
    assert left.holds and right.holds
    assert left.constant == pytest.approx(1.0, rel=1e-6)
    assert right.constant == pytest.approx(1.0, rel=1e-6)
