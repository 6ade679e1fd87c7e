"""Multiplicative comparison of phi^{-1} with phi1^{-1} * phi2^{-1}.

Direction "left" is the relation C*phi1^{-1}(u)*phi2^{-1}(u) <= phi^{-1}(u),
direction "right" is phi^{-1}(u) <= D*phi1^{-1}(u)*phi2^{-1}(u), each over a
range of arguments (all / large / small).  Checks are sampled on geometric
grids; an asymptotic failure is declared only when the extremal ratio keeps
moving across decade extensions of the span.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .extreal import INF, is_inf
from .young import YoungFunction

_REFUTE_FACTOR = 1e2
_SKIP_CAP = 0.01


@dataclass(frozen=True)
class ArgRange:
    kind: str = "all"  # all | large | small
    threshold: float = 1.0

    def __post_init__(self):
        if self.kind not in ("all", "large", "small"):
            raise DomainError(f"unknown range kind {self.kind!r}")
        if self.threshold <= 0:
            raise DomainError("range threshold must be positive")

    def span(self):
        if self.kind == "all":
            return (1e-6, 1e6)
        if self.kind == "large":
            return (self.threshold, 1e6)
        return (1e-6, self.threshold)


@dataclass
class RelationReport:
    direction: str
    arg_range: ArgRange
    constant: float | None     # best constant when the relation holds
    sampled_min_ratio: float
    sampled_max_ratio: float
    refuted: bool
    extremal_trace: list       # extremal ratio across base grid + extensions
    skipped_fraction: float
    grid: dict
    witnesses: list            # extreme sample points (u, ratio)

    @property
    def holds(self) -> bool:
        return not self.refuted


def _ratios(phi1, phi2, phi, us):
    """phi^{-1}(u) / (phi1^{-1}(u)*phi2^{-1}(u)) with 0/0 points skipped."""
    num = np.array([phi.inverse(u) for u in us])
    den = np.array([phi1.inverse(u) * phi2.inverse(u) for u in us])
    skip = (num == 0) & (den == 0)
    keep = ~skip & np.isfinite(num) & np.isfinite(den)
    with np.errstate(divide="ignore"):
        r = np.where(den[keep] > 0, num[keep] / np.where(den[keep] > 0, den[keep], 1.0), INF)
        r = np.where((den[keep] == 0) & (num[keep] > 0), INF, r)
    return us[keep], r, int(skip.sum())


def check_product_relation(phi1: YoungFunction, phi2: YoungFunction,
                           phi: YoungFunction, direction: str,
                           arg_range: ArgRange = ArgRange(),
                           n: int = 10_000) -> RelationReport:
    if direction not in ("left", "right"):
        raise DomainError(f"direction must be 'left' or 'right', got {direction!r}")
    lo, hi = arg_range.span()
    spans = [(lo, hi)]
    # asymptotic extensions: two decades toward the claim's limit
    if arg_range.kind in ("all", "large"):
        spans += [(hi, hi * 10), (hi * 10, hi * 100)]
    if arg_range.kind in ("all", "small"):
        spans += [(lo / 10, lo), (lo / 100, lo / 10)]

    extremal_trace = []
    skipped_total = 0
    total = 0
    base_min = base_max = None
    witnesses = []
    refuted = False
    for i, (a, b) in enumerate(spans):
        m = n if i == 0 else max(n // 10, 500)
        us = np.geomspace(a, b, m)
        kept, r, skipped = _ratios(phi1, phi2, phi, us)
        skipped_total += skipped
        total += m
        if len(r) == 0:
            continue
        if direction == "left":
            ext = float(np.min(r))
        else:
            ext = float(np.max(r)) if not np.isinf(r).any() else INF
        extremal_trace.append(ext)
        if i == 0:
            base_min = float(np.min(r))
            base_max = float(np.max(r[np.isfinite(r)])) if np.isfinite(r).any() else INF
            order = np.argsort(r)
            picks = list(order[:3]) + list(order[-3:])
            witnesses = [(float(kept[j]), float(r[j])) for j in picks]

    if total and skipped_total / total > _SKIP_CAP:
        raise DomainError(
            f"{skipped_total}/{total} sample points were 0/0-degenerate (cap 1%)")

    base = extremal_trace[0]
    for ext in extremal_trace[1:]:
        if direction == "left" and ext < base / _REFUTE_FACTOR:
            refuted = True
        if direction == "right" and (is_inf(ext) or ext > base * _REFUTE_FACTOR):
            refuted = True
    if direction == "right" and is_inf(base):
        refuted = True

    if refuted:
        constant = None
    else:
        constant = min(extremal_trace) if direction == "left" else max(extremal_trace)
    return RelationReport(direction, arg_range, constant, base_min, base_max,
                          refuted, extremal_trace, skipped_total / max(total, 1),
                          {"n": n, "span": (lo, hi)}, witnesses)


def extend_constants(phi1, phi2, phi, report: RelationReport,
                     new_threshold: float, n: int = 1000) -> RelationReport:
    """Extend a large/small-range constant across the bridging interval.

    The new constant is the min (left) or max (right) of the old constant and
    the ratio extremum over the compact interval between the thresholds.
    """
    rng = report.arg_range
    if rng.kind == "large":
        if not new_threshold < rng.threshold:
            raise DomainError("new threshold must extend the range downward")
        bridge = (new_threshold, rng.threshold)
    elif rng.kind == "small":
        if not new_threshold > rng.threshold:
            raise DomainError("new threshold must extend the range upward")
        bridge = (rng.threshold, new_threshold)
    else:
        raise DomainError("only large/small ranges can be threshold-extended")
    if report.constant is None:
        raise DomainError("cannot extend a refuted relation")

    us = np.geomspace(bridge[0], bridge[1], n)
    kept, r, skipped = _ratios(phi1, phi2, phi, us)
    new_range = ArgRange(rng.kind, new_threshold)
    if len(r) == 0 or np.isinf(r).any() or (r == 0).any() \
            or (report.direction == "left" and float(np.min(r)) == 0.0):
        return RelationReport(report.direction, new_range, None,
                              float(np.min(r)) if len(r) else 0.0,
                              float(np.max(r)) if len(r) else INF,
                              True, [0.0], skipped / n,
                              {"n": n, "span": bridge}, [])
    if report.direction == "left":
        constant = min(report.constant, float(np.min(r)))
    else:
        constant = max(report.constant, float(np.max(r)))
    return RelationReport(report.direction, new_range, constant,
                          float(np.min(r)), float(np.max(r)), False,
                          [constant], skipped / n, {"n": n, "span": bridge}, [])


@dataclass
class DegeneracyReport:
    b_link_applicable: bool
    b_link_consistent: bool
    a_link_applicable: bool
    a_link_consistent: bool
    characteristics: dict

    @property
    def consistent(self) -> bool:
        ok = True
        if self.b_link_applicable:
            ok = ok and self.b_link_consistent
        if self.a_link_applicable:
            ok = ok and self.a_link_consistent
        return ok


def degeneracy_links(phi1, phi2, phi, claimed_range: ArgRange) -> DegeneracyReport:
    """Consistency of the finiteness/zero links under a claimed equivalence.

    Under a large-argument equivalence: b_phi finite iff both b_phi1 and
    b_phi2 finite.  Under a small-argument equivalence: a_phi = 0 iff
    a_phi1 = 0 or a_phi2 = 0.  Range 'all' activates both.
    """
    chars = {
        "phi": phi.characteristics(), "phi1": phi1.characteristics(),
        "phi2": phi2.characteristics(),
    }
    b_app = claimed_range.kind in ("all", "large")
    a_app = claimed_range.kind in ("all", "small")
    b_fin = not is_inf(phi.b)
    b_fin_12 = (not is_inf(phi1.b)) and (not is_inf(phi2.b))
    b_ok = (b_fin == b_fin_12)
    a_zero = phi.a_phi == 0
    a_zero_12 = phi1.a_phi == 0 or phi2.a_phi == 0
    a_ok = (a_zero == a_zero_12)
    return DegeneracyReport(b_app, b_ok, a_app, a_ok,
                            {k: v.__dict__ for k, v in chars.items()})


@dataclass
class BridgeReport:
    sum_holds: bool
    sum_counterexample: tuple | None   # (u, v, lhs, rhs)
    product_constant: float            # C/2 used for the return direction
    product_holds: bool
    product_counterexample: tuple | None

    @property
    def passed(self) -> bool:
        return self.sum_holds and self.product_holds


def bridge_product_sum(phi1, phi2, phi, C: float,
                       arg_range: ArgRange = ArgRange(),
                       n: int = 100) -> BridgeReport:
    """Round trip between the product inequality and the sum inequality.

    (a) assuming C*phi1^{-1}*phi2^{-1} <= phi^{-1} on the range, check
    phi(C*u*v) <= phi1(u) + phi2(v) on a (u, v) grid; (b) assuming the sum
    inequality with C, check the product inequality with constant C/2.
    """
    if C <= 0:
        raise DomainError("C must be positive")
    lo, hi = arg_range.span()
    us = np.geomspace(1e-3, 1e3, n)
    vs = np.geomspace(1e-3, 1e3, n)
    sum_ok, sum_bad = True, None
    p1u = np.array([float(phi1(u)) if not is_inf(phi1(u)) else INF for u in us])
    p2v = np.array([float(phi2(v)) if not is_inf(phi2(v)) else INF for v in vs])
    for i, u in enumerate(us):
        if is_inf(p1u[i]):
            continue
        rhs = p1u[i] + p2v
        lhs = phi.eval_array(C * u * vs)
        w_in = (rhs >= lo) & (rhs <= hi) & np.isfinite(rhs)
        bad = w_in & (lhs > rhs * (1 + 1e-9) + 1e-12)
        if bad.any():
            j = int(np.argmax(bad))
            sum_ok, sum_bad = False, (float(u), float(vs[j]), float(lhs[j]), float(rhs[j]))
            break

    half = C / 2.0
    ws = np.geomspace(lo, hi, 2000)
    prod_ok, prod_bad = True, None
    for w in ws:
        left = half * phi1.inverse(w) * phi2.inverse(w)
        right = phi.inverse(w)
        if left > right * (1 + 1e-9) + 1e-12:
            prod_ok, prod_bad = False, (float(w), float(left), float(right))
            break
    return BridgeReport(sum_ok, sum_bad, half, prod_ok, prod_bad)


@dataclass
class InclusionVerdict:
    range_used: ArgRange
    left: RelationReport
    right: RelationReport
    verdict: str  # equality | inclusion | reverse-inclusion | neither


def range_for_model(label: str) -> ArgRange:
    """The argument range dictated by the model's relation to L^inf.

    Finite-measure grids embed L^inf, so only large arguments matter;
    counting models embed into l^inf, so only small arguments matter.
    """
    if label.startswith("counting"):
        return ArgRange("small")
    return ArgRange("large")


def multiplier_inclusion_predicate(model_label: str, phi1, phi2, phi) -> InclusionVerdict:
    rng = range_for_model(model_label)
    left = check_product_relation(phi1, phi2, phi, "left", rng)
    right = check_product_relation(phi1, phi2, phi, "right", rng)
    if left.holds and right.holds:
        verdict = "equality"
    elif left.holds:
        verdict = "inclusion"
    elif right.holds:
        verdict = "reverse-inclusion"
    else:
        verdict = "neither"
    return InclusionVerdict(rng, left, right, verdict)
