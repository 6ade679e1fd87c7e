"""The complementary operation (phi ominus phi1)(u) = sup_v [phi(uv) - phi1(v)].

The supremum is computed on a dense geometric grid with local golden-section
refinement around the grid argmax, plus divergence detection across decade
extensions of the grid span.  A small closed-form catalog reproduces the
worked examples exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .extreal import INF, is_inf
from . import functions as fn
from .young import Piece, YoungFunction, young_from_samples

_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OminusOptions:
    v_min: float = 1e-9
    v_max: float = 1e9
    n_grid: int = 20_001
    refine_iters: int = 200
    growth_factor: float = 1e3
    overflow: float = 1e300
    extend: bool = True  # decade extensions for divergence detection


DEFAULT_OPTS = OminusOptions()


@dataclass
class OminusValue:
    value: float  # may be INF
    maximizer: float | None
    diverged: bool
    extension_sups: list = field(default_factory=list)


@dataclass
class ConjugationResult:
    us: list
    values: list
    maximizers: list
    closed_form: YoungFunction | None
    diverged: list


def _check_pair(phi: YoungFunction, phi1: YoungFunction):
    if not is_inf(phi.b) and not is_inf(phi1.b):
        raise DomainError(
            "both functions jump to infinity at finite points; "
            "the complementary operation is undefined (inf - inf)")


def _objective_scalar(phi, phi1, u, v):
    p1 = phi1(v)
    if is_inf(p1):
        return -INF
    pv = phi(u * v)
    if is_inf(pv):
        return INF
    return pv - p1


def _grid_sup(phi, phi1, u, vs: np.ndarray):
    """Max of the objective over candidate points; INF on an infinite hit."""
    pv = phi.eval_array(u * vs)
    p1 = phi1.eval_array(vs)
    inf_hit = np.isinf(pv) & ~np.isinf(p1)
    if inf_hit.any():
        return INF, float(vs[np.argmax(inf_hit)])
    ok = ~np.isinf(p1) & ~np.isinf(pv)
    if not ok.any():
        return 0.0, None
    obj = pv[ok] - p1[ok]
    j = int(np.argmax(obj))
    return float(obj[j]), float(vs[ok][j])


def _refine(phi, phi1, u, lo, hi, iters):
    """Golden-section maximization of the (locally unimodal) objective."""
    f = lambda v: _objective_scalar(phi, phi1, u, v)
    a, b = lo, hi
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc, fd = f(c), f(d)
    if is_inf(fc) or is_inf(fd):
        return INF, c if is_inf(fc) else d
    for _ in range(iters):
        if b - a <= 1e-13 * max(1.0, a):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = f(d)
        if is_inf(fc) or is_inf(fd):
            return INF, c if is_inf(fc) else d
    v = c if fc >= fd else d
    return max(fc, fd), v


def _candidates(phi, phi1, u, v_lo, v_hi, n):
    vs = [np.geomspace(v_lo, v_hi, n)]
    extra = [b for b in phi1.breakpoints if v_lo < b <= v_hi]
    extra += [b / u for b in phi.breakpoints if u > 0 and v_lo < b / u <= v_hi]
    if extra:
        vs.append(np.array(extra))
    return np.unique(np.concatenate(vs))


def ominus_detail(phi: YoungFunction, phi1: YoungFunction, u: float,
                  opts: OminusOptions = DEFAULT_OPTS) -> OminusValue:
    _check_pair(phi, phi1)
    if u < 0:
        raise DomainError("u must be non-negative")
    if u == 0:
        return OminusValue(0.0, None, False)
    if not is_inf(phi.b):
        # phi jumps to +inf while phi1 stays finite: the supremum is +inf
        return OminusValue(INF, None, True)

    v_hi = opts.v_max
    if not is_inf(phi1.b):
        v_hi = min(v_hi, float(phi1.b))
    vs = _candidates(phi, phi1, u, opts.v_min, v_hi, opts.n_grid)
    best, v_best = _grid_sup(phi, phi1, u, vs)
    if is_inf(best):
        return OminusValue(INF, v_best, True)

    # local refinement around the argmax bracket
    if v_best is not None:
        j = int(np.searchsorted(vs, v_best))
        lo = vs[max(j - 1, 0)]
        hi = vs[min(j + 1, len(vs) - 1)]
        ref, v_ref = _refine(phi, phi1, u, lo, hi, opts.refine_iters)
        if is_inf(ref):
            return OminusValue(INF, v_ref, True)
        if ref > best:
            best, v_best = ref, v_ref

    ext_sups = []
    if opts.extend and is_inf(phi1.b):
        run = max(best, 0.0)
        base = max(run, 1e-9)
        for k in (1, 2):
            ext = np.geomspace(v_hi * 10 ** (k - 1), v_hi * 10 ** k, 2000)
            s, _ = _grid_sup(phi, phi1, u, ext)
            if is_inf(s):
                return OminusValue(INF, None, True, ext_sups)
            run = max(run, s)
            ext_sups.append(run)
        if ext_sups[-1] > base * opts.growth_factor:
            return OminusValue(INF, None, True, ext_sups)
        best = max(best, run)
    if best > opts.overflow:
        return OminusValue(INF, v_best, True, ext_sups)
    return OminusValue(max(best, 0.0), v_best, False, ext_sups)


def ominus(phi: YoungFunction, phi1: YoungFunction, u: float,
           opts: OminusOptions = DEFAULT_OPTS) -> float:
    return ominus_detail(phi, phi1, u, opts).value


def ominus_zero_detail(phi: YoungFunction, phi1: YoungFunction, u: float,
                       opts: OminusOptions = DEFAULT_OPTS) -> OminusValue:
    """Small-argument variant: the supremum restricted to v in [0, 1]."""
    if u < 0:
        raise DomainError("u must be non-negative")
    if u == 0:
        return OminusValue(0.0, None, False)
    v_hi = 1.0
    if not is_inf(phi1.b):
        v_hi = min(v_hi, float(phi1.b))
    vs = _candidates(phi, phi1, u, 1e-12, v_hi, opts.n_grid)
    vs = np.unique(np.append(vs, v_hi))
    best, v_best = _grid_sup(phi, phi1, u, vs)
    if is_inf(best):
        return OminusValue(INF, v_best, True)
    if v_best is not None:
        j = int(np.searchsorted(vs, v_best))
        lo = vs[max(j - 1, 0)]
        hi = vs[min(j + 1, len(vs) - 1)]
        ref, v_ref = _refine(phi, phi1, u, lo, hi, opts.refine_iters)
        if is_inf(ref):
            return OminusValue(INF, v_ref, True)
        if ref > best:
            best, v_best = ref, v_ref
    return OminusValue(max(best, 0.0), v_best, False)


def ominus_zero(phi, phi1, u, opts: OminusOptions = DEFAULT_OPTS) -> float:
    return ominus_zero_detail(phi, phi1, u, opts).value


def ominus_table(phi, phi1, us, opts: OminusOptions = DEFAULT_OPTS,
                 zero: bool = False) -> ConjugationResult:
    closed = catalog_closed_form_zero(phi, phi1) if zero else catalog_closed_form(phi, phi1)
    values, maximizers, diverged = [], [], []
    compute = ominus_zero_detail if zero else ominus_detail
    for u in us:
        r = compute(phi, phi1, float(u), opts)
        values.append(r.value)
        maximizers.append(r.maximizer)
        diverged.append(r.diverged)
    return ConjugationResult(list(map(float, us)), values, maximizers, closed, diverged)


# ---------------------------------------------------------------------------
# closed-form catalog
# ---------------------------------------------------------------------------

def _single_piece(phi: YoungFunction, kind: str):
    if len(phi.pieces) == 1 and is_inf(phi.b) and phi.pieces[0].kind == kind \
            and float(phi.pieces[0].start) == 0.0:
        return phi.pieces[0].params
    return None


def _power_power(c, p, c1, p1):
    """Exact result for single-power pairs c*u^p vs c1*u^p1."""
    if p < p1:
        p2 = p * p1 / (p1 - p)
        v1 = (c * p / (c1 * p1)) ** (1.0 / (p1 - p))
        amp = c * v1 ** p - c1 * v1 ** p1  # value at u = 1
        return fn.power(p2, amp)
    if p == p1 and c == c1:
        return fn.step(1.0)
    return None  # p > p1: identically +inf on (0, inf), not a Young function


def catalog_closed_form(phi: YoungFunction, phi1: YoungFunction):
    """Exact piecewise result when the pair matches a known pattern."""
    # identical finite Young functions: the 0/inf step at 1
    if is_inf(phi.b) and phi == phi1:
        return fn.step(1.0)

    sp = _single_piece(phi, "power")
    sp1 = _single_piece(phi1, "power")
    if sp and sp1:
        return _power_power(float(sp["c"]), float(sp["p"]),
                            float(sp1["c"]), float(sp1["p"]))

    # doubled square-root composition: phi(u) = 2*phi1(sqrt(u)) gives phi1 back
    pe, pe1 = _single_piece(phi, "powerexp"), _single_piece(phi1, "powerexp")
    if pe and pe1 and float(pe["c"]) == 2 * float(pe1["c"]) \
            and float(pe["k"]) == float(pe1["k"]) \
            and float(pe["p"]) == float(pe1["p"]) / 2:
        return phi1

    if phi == fn.example7_phi():
        if phi1 == fn.example7_phi1():
            return fn.example7_phi2()
        if phi1 == fn.example7_phi2():
            return fn.example7_phi3()
        if phi1 == fn.example7_phi3():
            return fn.example7_phi2()

    if phi == fn.example11_phi():
        p = _example11_exponent(phi1)
        if p is not None:
            return fn.example11_theta()
        if phi1 == fn.example11_theta():
            return fn.example11_phi2()
    return None


def _example11_exponent(phi1: YoungFunction):
    if len(phi1.pieces) == 2 and is_inf(phi1.b):
        a, b = phi1.pieces
        if a.kind == "power" and b.kind == "power" \
                and float(a.start) == 0.0 and float(b.start) == 1.0 \
                and float(a.params["c"]) == 1.0 and float(b.params["c"]) == 1.0 \
                and float(b.params["p"]) == 4.0:
            p = float(a.params["p"])
            if 1.0 <= p <= 2.0:
                return p
    return None


def catalog_closed_form_zero(phi: YoungFunction, phi1: YoungFunction):
    """Closed forms for the v-restricted variant (power pairs only)."""
    sp = _single_piece(phi, "power")
    sp1 = _single_piece(phi1, "power")
    if not (sp and sp1):
        return None
    c, p = float(sp["c"]), float(sp["p"])
    c1, p1 = float(sp1["c"]), float(sp1["p"])
    if p < p1:
        full = _power_power(c, p, c1, p1)
        amp = float(full.pieces[0].params["c"])
        p2 = float(full.pieces[0].params["p"])
        u_split = (c1 * p1 / (c * p)) ** (1.0 / p)
        return YoungFunction((
            Piece(0, "power", {"c": amp, "p": p2}),
            Piece(u_split, "powaffine", {"c": c, "p": p, "d": -c1}),
        ))
    if p == p1 and c == c1:
        return YoungFunction((
            Piece(0, "affine", {"slope": 0, "intercept": 0}),
            Piece(1, "powaffine", {"c": c, "p": p, "d": -c}),
        ))
    # p > p1: zero until c*u^p = c1, then c*u^p - c1
    u_split = (c1 / c) ** (1.0 / p)
    return YoungFunction((
        Piece(0, "affine", {"slope": 0, "intercept": 0}),
        Piece(u_split, "powaffine", {"c": c, "p": p, "d": -c1}),
    ))


# ---------------------------------------------------------------------------
# iterated operation
# ---------------------------------------------------------------------------

@dataclass
class DoubleOminusReport:
    us: list
    iterate: list       # phi ominus (phi ominus phi1) at each u
    target: list        # phi1 at each u
    agree: list
    first_disagreement: float | None
    inner_closed_form: YoungFunction | None

    @property
    def all_agree(self) -> bool:
        return all(self.agree)


def double_ominus_check(phi: YoungFunction, phi1: YoungFunction,
                        us=None, opts: OminusOptions = DEFAULT_OPTS,
                        rel_tol: float = 1e-6) -> DoubleOminusReport:
    """Tabulate phi ominus (phi ominus phi1) against phi1 on a grid."""
    _check_pair(phi, phi1)
    if us is None:
        us = np.unique(np.concatenate([np.geomspace(1e-2, 1e2, 81), [1.0]]))
    inner = catalog_closed_form(phi, phi1)
    inner_closed = inner
    if inner is None:
        ws = np.geomspace(1e-6, 1e6, 481)
        wvals = [ominus(phi, phi1, float(w), opts) for w in ws]
        inner = young_from_samples(ws, wvals)

    outer_closed = catalog_closed_form(phi, inner)
    iterate, target, agree = [], [], []
    for u in us:
        u = float(u)
        val = outer_closed(u) if outer_closed is not None else ominus(phi, inner, u, opts)
        tgt = phi1(u)
        if is_inf(val) or is_inf(tgt):
            ok = is_inf(val) and is_inf(tgt)
        elif float(tgt) == 0.0:
            ok = abs(float(val)) <= 1e-9
        else:
            ok = abs(float(val) - float(tgt)) <= rel_tol * abs(float(tgt))
        iterate.append(val)
        target.append(tgt)
        agree.append(bool(ok))
    first = None
    for u, ok in zip(us, agree):
        if not ok:
            first = float(u)
            break
    return DoubleOminusReport(list(map(float, us)), iterate, target, agree,
                              first, inner_closed)
