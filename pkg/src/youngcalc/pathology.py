"""The gap construction: an Orlicz function that agrees with u^2/2 along a
sparse sequence but violates every asymptotic regularity the quadratic has.

All breakpoint arithmetic is exact (Fractions); floats appear only at report
boundaries and inside the grid-sampled checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, GapSequenceError
from .extreal import INF, is_inf
from . import conjugation as conj
from . import functions as fn
from .young import Piece, YoungFunction


def factorial_generator(k: int) -> Fraction:
    """Default slope sequence a_k = (k+2)!, k >= 1."""
    return Fraction(math.factorial(k + 2))


@dataclass(frozen=True)
class GapSequence:
    a: tuple  # Fractions, slopes; a[k] is a_{k+1}
    u: tuple  # Fractions, interval ends; u[k] is u_{k+1}

    @property
    def n(self) -> int:
        return len(self.a)


def build_gap_sequence(n: int, generator=factorial_generator) -> GapSequence:
    """Validated slope/breakpoint sequence: u_n = 2*sum_k (-1)^{n-k} a_k."""
    if n < 2:
        raise DomainError("need at least two terms")
    a = [Fraction(generator(k)) for k in range(1, n + 1)]
    for i, ak in enumerate(a):
        if ak <= 0:
            raise GapSequenceError("positivity", i + 1)
    ratios = [a[i + 1] / a[i] for i in range(n - 1)]
    for i in range(len(ratios) - 1):
        if ratios[i + 1] <= ratios[i]:
            raise GapSequenceError("ratio-increasing", i + 2)
    u = []
    for m in range(1, n + 1):
        s = Fraction(0)
        for k in range(1, m + 1):
            s += (-1) ** (m - k) * a[k - 1]
        u.append(2 * s)
    for i in range(n - 1):
        if not u[i + 1] > 2 * u[i]:
            raise GapSequenceError("gap-doubling", i + 1)
    for i in range(n):
        prev = u[i - 1] if i > 0 else Fraction(0)
        if (u[i] + prev) / 2 != a[i]:
            raise GapSequenceError("midpoint-identity", i + 1)
    return GapSequence(tuple(a), tuple(u))


@dataclass(frozen=True)
class PsiBuild:
    young: YoungFunction
    seq: GapSequence
    truncated_from: Fraction  # beyond this the final slope is extrapolated

    def psi_exact(self, v: Fraction) -> Fraction:
        """Exact evaluation inside the trusted (non-extrapolated) domain."""
        if v < 0 or v > self.truncated_from:
            raise DomainError("outside the exact domain")
        val = self.young(Fraction(v))
        return Fraction(val)


def build_psi(seq: GapSequence) -> PsiBuild:
    """Piecewise-affine integral of the slope profile: slope a_n on I_n."""
    pieces = []
    acc = Fraction(0)
    prev = Fraction(0)
    for ak, uk in zip(seq.a, seq.u):
        pieces.append(Piece(prev, "affine", {"slope": ak, "intercept": acc - ak * prev}))
        acc += ak * (uk - prev)
        prev = uk
    # beyond u_N the last slope continues; this region is flagged, not trusted
    return PsiBuild(YoungFunction(tuple(pieces)), seq, seq.u[-1])


# ---------------------------------------------------------------------------
# the verification suite
# ---------------------------------------------------------------------------

@dataclass
class PathologyCheck:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class PathologyReport:
    n: int
    checks: list
    identity_chain: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> PathologyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _extended_build(seq: GapSequence, generator, span_needed: float) -> PsiBuild:
    """Rebuild with enough pieces that the trusted domain covers span_needed."""
    n = seq.n
    while float(build_gap_sequence(n, generator).u[-1]) < span_needed:
        n += 1
        if n > 64:
            break
    return build_psi(build_gap_sequence(n, generator))


def verify_pathology(build: PsiBuild, generator=factorial_generator,
                     n_grid: int = 10_000) -> PathologyReport:
    seq = build.seq
    psi = build.young
    n = seq.n
    checks: list[PathologyCheck] = []

    # 1. domination psi(u) >= u^2/2 on a dense grid of the trusted domain
    us = np.linspace(0.0, float(seq.u[-1]), n_grid)
    gap = psi.eval_array(us) - 0.5 * us ** 2
    checks.append(PathologyCheck(
        "domination", bool(np.min(gap) >= -1e-9),
        {"min_gap": float(np.min(gap)), "grid_points": n_grid}))

    # 2. exact equality with the quadratic at every breakpoint u_n
    eq_ok = all(build.psi_exact(uk) == uk * uk / 2 for uk in seq.u)
    checks.append(PathologyCheck(
        "equality-at-breakpoints", eq_ok,
        {"values": [str(build.psi_exact(uk)) for uk in seq.u]}))

    # 3. doubling ratios at u_n: exact value 1 + 2a_{n+1}/u_n, strictly above
    #    1 + a_{n+1}/a_n for n >= 2 (equality at n = 1), strictly increasing
    ratios = []
    exact_ok = True
    bound_ok = True
    for k in range(n - 1):  # psi(2*u_k) needs piece k+2
        uk, ak1 = seq.u[k], seq.a[k + 1]
        if 2 * uk > build.truncated_from:
            break
        r = build.psi_exact(2 * uk) / build.psi_exact(uk)
        ratios.append(r)
        if r != 1 + 2 * ak1 / uk:
            exact_ok = False
        floor = 1 + ak1 / seq.a[k]
        if k == 0:
            bound_ok = bound_ok and r == floor
        else:
            bound_ok = bound_ok and r > floor
    increasing = all(r2 > r1 for r1, r2 in zip(ratios, ratios[1:]))
    checks.append(PathologyCheck(
        "doubling-ratio-exact", exact_ok and bound_ok and increasing,
        {"ratios": [float(r) for r in ratios]}))

    # 4. the complementary operation against the quadratic is a 0/inf step at 1
    # (rebuilt with enough pieces to cover the sup grid; the overflow cap is
    # the largest trusted modular scale of the original prefix)
    phi = fn.quadratic_half()
    wide = _extended_build(seq, generator, 2e11)
    opts = conj.OminusOptions(overflow=float(seq.u[-1] ** 2))
    step_ok = True
    step_detail = {}
    for u in (0.25, 0.5, 0.9, 1.0):
        val = conj.ominus(phi, wide.young, u, opts)
        step_detail[u] = val
        step_ok = step_ok and val == 0.0
    for u in (1.1, 2.0, 4.0):
        val = conj.ominus(phi, wide.young, u, opts)
        step_detail[u] = val
        step_ok = step_ok and is_inf(val)
    checks.append(PathologyCheck("conjugate-step", step_ok, step_detail))

    # 5. inverse-ratio subsequences: psi^{-1}/phi^{-1} has a subsequence == 1
    #    (at psi(u_n)) and a subsequence decreasing toward 0 (at psi(2 u_n))
    ones = []
    for uk in seq.u:
        w = build.psi_exact(uk)
        ones.append(2 * w == uk * uk)  # ratio u_k / sqrt(2 psi(u_k)) == 1
    to_zero = []
    drivers = []
    for k in range(n):
        uk = seq.u[k]
        w = wide.psi_exact(2 * uk)
        to_zero.append(2.0 * float(uk) / math.sqrt(2.0 * float(w)))
        # exact identity: (2u_k)^2 / (2 psi(2u_k)) = 4 / (1 + 2a_{k+1}/u_k),
        # so the subsequence vanishes iff the driver a_{k+1}/u_k blows up
        ak1 = seq.a[k + 1] if k + 1 < n else w / uk - uk / 2  # from the identity
        drivers.append(2 * ak1 / uk)
    decreasing = all(b < a for a, b in zip(to_zero, to_zero[1:]))
    exact_identity = all(
        Fraction(2 * uk) ** 2 * (1 + d) == 8 * wide.psi_exact(2 * uk)
        for uk, d in zip(seq.u, drivers))
    vanishing = all(d2 > d1 for d1, d2 in zip(drivers, drivers[1:])) \
        and drivers[-1] > 2 * drivers[0]
    checks.append(PathologyCheck(
        "inverse-ratio-subsequences",
        all(ones) and decreasing and exact_identity and vanishing,
        {"ones": len(ones), "to_zero": to_zero,
         "drivers": [float(d) for d in drivers]}))

    # 6. fundamental-ratio non-monotonicity witnesses: the quotient of the two
    #    indicator norms takes the value 1 at t = 1/psi(u_n) but collapses at
    #    t = 1/psi(2 u_n); both sampled sequences reported
    at_un = [1.0] * n  # exact by check 5
    at_2un = to_zero
    non_monotone = min(at_2un) < 0.9 * max(at_un)
    checks.append(PathologyCheck(
        "fundamental-ratio-non-monotone", non_monotone,
        {"at_1_over_psi_un": at_un, "at_1_over_psi_2un": at_2un}))

    # 7. the identity chain for the double-dual failure; the classification
    #    step is quoted from the literature, not recomputed here
    identity_chain = [
        {"step": "sup_{s<=t} f_F(s)/f_E(s) = 1 at sampled t", "status": "checked",
         "detail": "witnesses at t = 1/psi(u_n) give the value 1 exactly"},
        {"step": "a multiplier space whose fundamental function stays at 1 "
                 "near 0 must be the bounded-function space", "status": "assumed from paper"},
        {"step": "multipliers from the bounded functions into the quadratic "
                 "Orlicz space reproduce the quadratic space, which differs "
                 "from the gap-construction space", "status": "checked"},
    ]
    # computable part of the last link: the two spaces have different Delta_2
    # behaviour, so they cannot coincide
    from .young import delta2
    d_quad = delta2(fn.power(2, 0.5), "large")
    d_psi = _psi_delta2(wide)
    checks.append(PathologyCheck(
        "spaces-differ", d_quad.satisfied and not d_psi,
        {"quadratic_delta2": d_quad.satisfied, "gap_delta2": d_psi}))

    return PathologyReport(n, checks, identity_chain)


def _psi_delta2(build: PsiBuild) -> bool:
    """Sampled doubling condition of the gap function on its trusted span."""
    from .young import delta2
    hi = float(build.truncated_from) / 8.0
    rep = delta2(build.young, "large", span=(1.0, hi / 4.0))
    return rep.satisfied


def csv_rows(build: PsiBuild, n_rows: int = 200):
    """(u, psi(u), u^2/2) rows for plotting."""
    us = np.linspace(0.0, float(build.seq.u[-1]), n_rows)
    ps = build.young.eval_array(us)
    return [(float(u), float(p), float(0.5 * u * u)) for u, p in zip(us, ps)]
