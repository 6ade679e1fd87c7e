"""Pointwise-multiplier norms on finite models and related predictors.

The multiplier norm sup{||x*y||_F : ||y||_E <= 1} is estimated by projected
coordinate ascent from multiple deterministic starts; for pairs in the
analytic identity catalog (power-type spaces, weighted L^inf) the exact value
is attached as a certificate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import DomainError
from .extreal import INF, is_inf
from . import conjugation as conj
from . import functions as fn
from .spaces import (CL, FuncProfile, Linf, Lorentz, Lp, Marcinkiewicz,
                     MeasureModel, PowerProfile, StepFunction, fundamental_profile,
                     is_symmetric, luxemburg_norm, norm, profile_call,
                     rearrange, representable_atom_count)
from .young import YoungFunction, young_from_samples


# ---------------------------------------------------------------------------
# analytic certificate catalog
# ---------------------------------------------------------------------------

def _effective_power(space):
    """(p, scale) such that ||x||_space = scale * ||x||_{L^p(mu)}, or None."""
    if isinstance(space, Lp) and space.weight is None:
        return (space.p, 1.0)
    if isinstance(space, Linf) and space.weight is None:
        return (INF, 1.0)
    if isinstance(space, CL):
        base = _effective_power(space.base)
        if base is None:
            return None
        pieces = space.phi.pieces
        if len(pieces) == 1 and pieces[0].kind == "power" and is_inf(space.phi.b):
            c = float(pieces[0].params["c"])
            p = float(pieces[0].params["p"])
            q, s = base
            if is_inf(q):
                return (INF, (c * 1.0) ** (1.0 / p) * s ** (1.0 / p))
            return (p * q, (c * s) ** (1.0 / p))
    return None


def _lr_norm(model: MeasureModel, x_arr: np.ndarray, r: float) -> float:
    if is_inf(r):
        return float(np.max(x_arr))
    return float(np.sum(x_arr ** r * model.weight_array) ** (1.0 / r))


def certificate_value(E, F, x: StepFunction):
    """Exact multiplier norm when the pair sits in the identity catalog."""
    if E == F:
        if isinstance(E, Linf) and E.weight is not None:
            return float(np.max(x.array))
        return float(np.max(x.array))  # M(E, E) carries the sup norm
    if isinstance(E, Linf) and isinstance(F, Linf) \
            and E.weight is not None and F.weight is not None:
        w1 = np.array(E.weight, dtype=float)
        w2 = np.array(F.weight, dtype=float)
        return float(np.max(w2 / w1 * x.array))
    eE = _effective_power(E)
    eF = _effective_power(F)
    if eE is not None and eF is not None:
        pE, sE = eE
        pF, sF = eF
        if pF <= pE or is_inf(pE):
            if is_inf(pE) and is_inf(pF):
                r = INF
            elif is_inf(pE):
                r = pF
            elif pF == pE:
                r = INF
            else:
                r = 1.0 / (1.0 / pF - 1.0 / pE)
            return (sF / sE) * _lr_norm(x.model, x.array, r)
    return None


# ---------------------------------------------------------------------------
# coordinate-ascent estimate
# ---------------------------------------------------------------------------

@dataclass
class MultiplierEstimate:
    value: float
    optimizer: StepFunction
    certificate: float | None
    gap: float | None
    n_starts: int
    trace: dict = field(default_factory=dict)


def _objective(E, F, x_arr: np.ndarray, model, y_arr: np.ndarray) -> float:
    y = StepFunction.from_array(model, y_arr)
    ny = norm(E, y)
    if ny == 0:
        return 0.0
    xy = StepFunction.from_array(model, x_arr * y_arr)
    return norm(F, xy) / ny


def _sorted_like(y: np.ndarray, x_arr: np.ndarray) -> np.ndarray:
    """Rearrange y decreasingly along the decreasing order of |x|."""
    order = np.argsort(-x_arr, kind="stable")
    out = np.empty_like(y)
    out[order] = np.sort(y)[::-1]
    return out


def _starts(x_arr: np.ndarray, model, n_starts: int, seed: int):
    n = len(x_arr)
    cands = []
    supp = x_arr > 0
    if supp.any():
        cands.append(x_arr.copy())
        cands.append(supp.astype(float))
        for alpha in (0.5, 2.0, 3.0):
            y = np.where(supp, x_arr, 0.0) ** alpha
            cands.append(y)
    cands.append(np.ones(n))
    cands.append(1.0 / np.sqrt(model.weight_array))
    top = np.argsort(-x_arr)[: min(8, n)]
    for i in top:
        e = np.zeros(n)
        e[i] = 1.0
        cands.append(e)
    rng = np.random.default_rng(seed)
    while len(cands) < n_starts:
        cands.append(rng.random(n) + 1e-3)
    return cands[:n_starts]


_FACTORS = (0.0, 0.25, 0.5, 0.8, 1.25, 2.0, 4.0)


def _ascend(E, F, x_arr, model, y0, max_sweeps):
    y = y0.copy()
    mx = y.max()
    if mx > 0:
        y /= mx
    best = _objective(E, F, x_arr, model, y)
    order = np.argsort(-x_arr)
    for _ in range(max_sweeps):
        improved = False
        for i in order:
            base_val = y[i]
            cands = [base_val * f for f in _FACTORS] if base_val > 0 \
                else [0.5 * max(y.max(), 1e-6), max(y.max(), 1e-6)]
            for c in cands:
                if c == base_val:
                    continue
                y[i] = c
                val = _objective(E, F, x_arr, model, y)
                if val > best * (1 + 1e-12):
                    best = val
                    base_val = c
                    improved = True
                else:
                    y[i] = base_val
        mx = y.max()
        if mx > 0:
            y /= mx
        if not improved:
            break
    return best, y


def multiplier_norm(E, F, x: StepFunction, n_starts: int = 16, seed: int = 0,
                    max_sweeps: int = 40) -> MultiplierEstimate:
    model = x.model
    x_arr = x.array
    cert = certificate_value(E, F, x)
    symmetric_pair = is_symmetric(E) and is_symmetric(F)

    # keep the search cheap when the answer is certified on a big model
    if cert is not None and model.n > 64:
        n_starts = min(n_starts, 3)
        max_sweeps = min(max_sweeps, 3)

    best, y_best = 0.0, np.ones(model.n)
    for y0 in _starts(x_arr, model, n_starts, seed):
        if symmetric_pair:
            y0 = _sorted_like(y0, x_arr)
        val, y = _ascend(E, F, x_arr, model, y0, max_sweeps)
        if symmetric_pair:
            y = _sorted_like(y, x_arr)
            val = max(val, _objective(E, F, x_arr, model, y))
        if val > best:
            best, y_best = val, y

    ny = norm(E, StepFunction.from_array(model, y_best))
    if ny > 0:
        y_best = y_best / ny
    optimizer = StepFunction.from_array(model, y_best)
    value = cert if cert is not None else best
    gap = (cert - best) if cert is not None else None
    return MultiplierEstimate(value, optimizer, cert, gap, n_starts,
                              {"ascent_value": best})


@dataclass
class HolderReport:
    n_samples: int
    max_ratio: float         # max of ||xy||_F / (value * ||y||_E)
    passed: bool
    estimate_exceeded: bool  # a sample beat a non-certified lower bound


def holder_check(E, F, x: StepFunction, estimate: MultiplierEstimate,
                 n_samples: int = 100, seed: int = 1) -> HolderReport:
    rng = np.random.default_rng(seed)
    model = x.model
    worst = 0.0
    for _ in range(n_samples):
        y_arr = rng.random(model.n)
        y = StepFunction.from_array(model, y_arr)
        ny = norm(E, y)
        if ny == 0:
            continue
        nxy = norm(F, StepFunction.from_array(model, x.array * y_arr))
        if estimate.value > 0:
            worst = max(worst, nxy / (estimate.value * ny))
    passed = worst <= 1 + 1e-9
    exceeded = (not passed) and estimate.certificate is None
    return HolderReport(n_samples, worst, passed or exceeded, exceeded)


# ---------------------------------------------------------------------------
# fundamental-function bounds
# ---------------------------------------------------------------------------

@dataclass
class FundamentalBounds:
    t: float
    lower: float
    upper: float | None
    upper_valid: bool
    sandwich: float | None       # (1/a) * lower when the hypothesis holds
    sandwich_hypothesis_ok: bool | None


def fundamental_bounds(E, F, model: MeasureModel, t: float,
                       a: float | None = None) -> FundamentalBounds:
    ts, fE = fundamental_profile(E, model)
    _, fF = fundamental_profile(F, model)
    k = representable_atom_count(model, t)
    lower = float(np.max(fF[:k] / fE[:k]))

    # upper bound needs f_F concave with f_F(0+) = 0: sampled check
    incr = np.diff(np.concatenate([[0.0], fF[:k]]))
    slopes = incr / np.diff(np.concatenate([[0.0], ts[:k]]))
    concave = np.all(np.diff(slopes) <= 1e-9 * np.maximum(1.0, np.abs(slopes[:-1])))
    upper = float(np.sum(incr / fE[:k])) if concave else None

    sandwich = None
    hyp_ok = None
    if a is not None:
        if not 0 < a:
            raise DomainError("sandwich exponent a must be positive")
        g = fF[:k] / (fE[:k] * ts[:k] ** a)
        hyp_ok = bool(np.all(np.diff(g) >= -1e-9 * np.abs(g[:-1])))
        if hyp_ok:
            sandwich = lower / a
    return FundamentalBounds(t, lower, upper, bool(concave), sandwich, hyp_ok)


# ---------------------------------------------------------------------------
# the Lorentz-target construction eta(t) = int_0^t psi'(s) phi'(s) ds
# ---------------------------------------------------------------------------

@dataclass
class EtaResult:
    divergent: bool
    C: float
    ts: np.ndarray | None
    eta: np.ndarray | None
    tail_probe: tuple | None

    def eta_at(self, t: float) -> float:
        if self.divergent:
            return INF
        return float(np.interp(t, self.ts, self.eta))


def eta_construction(psi, phi, end: float = 1.0, n_grid: int = 1024) -> EtaResult:
    integrand = lambda s: psi.deriv(s) * phi.deriv(s)
    i1 = quad(integrand, 1e-8, end, limit=200)[0]
    i2 = quad(integrand, 1e-12, end, limit=200)[0]
    if i2 - i1 > 0.01 * (1.0 + abs(i1)):
        return EtaResult(True, INF, None, None, (i1, i2))
    ts = np.concatenate([[0.0], np.geomspace(end * 1e-10, end, n_grid)])
    vals = [0.0]
    acc = 0.0
    prev = 0.0
    for t in ts[1:]:
        acc += quad(integrand, prev, t, limit=200)[0]
        vals.append(acc)
        prev = t
    return EtaResult(False, float(acc), ts, np.array(vals), (i1, i2))


@dataclass
class EtaEmbeddingReport:
    C: float
    n_samples: int
    max_ratio: float        # max ||x||_Lorentz / ||x||_Marcinkiewicz over batch
    extremal_ratio: float   # ratio at the discretized extremal profile
    passed: bool


def verify_eta_embedding(psi, phi, model: MeasureModel, n_samples: int = 100,
                         seed: int = 0) -> EtaEmbeddingReport:
    """Check ||x||_{Lambda_phi} <= C ||x||_{M_phi1} with phi1(t) = t/psi(t)."""
    eta = eta_construction(psi, phi, end=model.total)
    if eta.divergent:
        raise DomainError("divergent construction: no finite embedding constant")
    C = eta.C
    phi1 = FuncProfile(lambda t: 0.0 if t == 0 else t / psi(t))
    M = Marcinkiewicz(phi1)
    L = Lorentz(phi)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        x = StepFunction.from_array(model, rng.random(model.n) * 3.0)
        nm = norm(M, x)
        if nm == 0:
            continue
        worst = max(worst, norm(L, x) / nm)
    # the extremal profile: x* = psi' discretized by exact cell averages
    # (psi(t_k) - psi(t_{k-1})) / w_k, the maximizer of the Lorentz norm
    # among step functions with x**(t_k) <= psi(t_k)/t_k at all breakpoints
    cum = np.concatenate([[0.0], model.cumulative])
    incs = np.array([profile_call(psi, t) for t in cum])
    avg = np.diff(incs) / model.weight_array
    ext = StepFunction.from_array(model, np.sort(avg)[::-1])
    nm = norm(M, ext)
    ext_ratio = norm(L, ext) / nm if nm > 0 else 0.0
    return EtaEmbeddingReport(C, n_samples, worst, ext_ratio,
                              worst <= C * (1 + 1e-9))


# ---------------------------------------------------------------------------
# growth trichotomy for the multiplier space of a pair of Orlicz functions
# ---------------------------------------------------------------------------

@dataclass
class Trichotomy:
    case: str            # "i" | "ii" | "iii"
    space: str           # descriptor of the predicted multiplier space
    phi2: YoungFunction | None
    ratio_trace: dict    # per-v list of sampled sup ratios across u-decades
    side_conditions: dict | None


def predict_multiplier_space(phi1: YoungFunction, phi: YoungFunction) -> Trichotomy:
    if phi.a_phi != 0 or phi1.a_phi != 0 or not is_inf(phi.b) or not is_inf(phi1.b):
        raise DomainError("the trichotomy needs a = 0 and b = inf for both functions")
    vs = np.geomspace(1e-2, 1e2, 9)
    Us = [1e3, 1e4, 1e5, 1e6]
    trace = {}
    verdicts = []
    for v in vs:
        sups = []
        for U in Us:
            us = np.geomspace(U, 10 * U, 200)
            num = phi.eval_array(us * v)
            den = phi1.eval_array(us)
            ok = np.isfinite(num) & np.isfinite(den) & (den > 0)
            sups.append(float(np.max(num[ok] / den[ok])) if ok.any() else INF)
        trace[float(v)] = sups
        if sups[-1] < sups[0] / 1e2:
            verdicts.append("zero")
        elif sups[-1] > sups[0] * 1e2 or is_inf(sups[-1]):
            verdicts.append("inf")
        else:
            verdicts.append("finite")

    if all(v == "zero" for v in verdicts):
        case = "i"
    elif all(v == "inf" for v in verdicts):
        case = "iii"
    else:
        case = "ii"

    phi2 = None
    side = None
    if case == "i":
        phi2 = conj.catalog_closed_form(phi, phi1)
        side = {
            "ratio_monotone_nonincreasing": _ratio_monotone(phi, phi1, vs),
            "inverse_ratio_nondecreasing": _inverse_ratio_monotone(phi, phi1),
            "delta2_of_conjugate": _delta2_of_conjugate(phi, phi1, phi2),
        }
        space = "E_phi2"
    elif case == "ii":
        space = "Linf"
    else:
        space = "zero"
    return Trichotomy(case, space, phi2, trace, side)


def _ratio_monotone(phi, phi1, vs) -> bool:
    us = np.geomspace(1.0, 1e6, 400)
    for v in vs:
        num = phi.eval_array(us * v)
        den = phi1.eval_array(us)
        ok = np.isfinite(num) & np.isfinite(den) & (den > 0)
        r = num[ok] / den[ok]
        if np.any(np.diff(r) > 1e-9 * np.abs(r[:-1])):
            return False
    return True


def _inverse_ratio_monotone(phi, phi1) -> bool:
    us = np.geomspace(1.0, 1e6, 400)
    r = np.array([phi.inverse(u) / phi1.inverse(u) for u in us])
    return bool(np.all(np.diff(r) >= -1e-9 * np.abs(r[:-1])))


def _delta2_of_conjugate(phi, phi1, phi2) -> bool | None:
    from .young import delta2
    if phi2 is None or not is_inf(phi2.b):
        return None
    try:
        return bool(delta2(phi2, "large").satisfied)
    except DomainError:
        return None


# ---------------------------------------------------------------------------
# empirical probe of the conjectured identity
# ---------------------------------------------------------------------------

@dataclass
class ConjectureReport:
    n_batch: int
    max_factor: float        # worst two-sided discrepancy over the batch
    factors: list
    phi2_closed: bool


def conjecture_probe(model: MeasureModel, phi1: YoungFunction,
                     phi: YoungFunction, n_batch: int = 50, seed: int = 0,
                     use_zero: bool = False) -> ConjectureReport:
    phi2 = (conj.catalog_closed_form_zero(phi, phi1) if use_zero
            else conj.catalog_closed_form(phi, phi1))
    closed = phi2 is not None
    if phi2 is None:
        us = np.geomspace(1e-6, 1e6, 241)
        compute = conj.ominus_zero if use_zero else conj.ominus
        vals = [compute(phi, phi1, float(u)) for u in us]
        phi2 = young_from_samples(us, vals)
    base = Lp(1.0)
    E = CL(base, phi1)
    F = CL(base, phi)
    rng = np.random.default_rng(seed)
    factors = []
    for _ in range(n_batch):
        x = StepFunction.from_array(model, rng.random(model.n) * 3.0)
        m = multiplier_norm(E, F, x).value
        l = luxemburg_norm(base, phi2, x)
        if m == 0 or l == 0 or is_inf(m) or is_inf(l):
            continue
        factors.append(max(m / l, l / m))
    return ConjectureReport(n_batch, max(factors) if factors else INF,
                            factors, closed)


# ---------------------------------------------------------------------------
# refinement divergence (weighted L^inf pair with no finite continuum value)
# ---------------------------------------------------------------------------

@dataclass
class RefinementReport:
    ns: list
    values: list
    growth_rates: list
    diverging: bool


def weighted_linf_refinement(ns=(64, 256, 1024)) -> RefinementReport:
    """M(Linf(t), Linf(sqrt t)) on refining [0,1] grids: sup sqrt(t)/t blows up."""
    values = []
    for n in ns:
        model = MeasureModel.grid01(n)
        mids = (np.arange(n) + 0.5) / n
        E = Linf(weight=tuple(mids))
        F = Linf(weight=tuple(np.sqrt(mids)))
        x = StepFunction.from_array(model, np.ones(n))
        values.append(certificate_value(E, F, x))
    rates = [values[i + 1] / values[i] for i in range(len(values) - 1)]
    return RefinementReport(list(ns), values, rates,
                            all(r > 1.5 for r in rates))
