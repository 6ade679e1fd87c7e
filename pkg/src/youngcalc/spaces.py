"""Finite measure models, step functions, rearrangements, and norms.

Non-atomic intervals are modeled by finite atomic grids; every norm reduces
to a finite sum or a sup over breakpoints (with per-interval refinement for
the Marcinkiewicz sup).  Spaces covered: weighted L^p and L^infty, Lorentz,
Marcinkiewicz, and the composed space built from a base norm and a Young
function via the modular ||phi o |x|/lambda||_base.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, NumericError
from .extreal import INF, is_inf
from .young import YoungFunction

_LUX_REL_TOL = 1e-10


# ---------------------------------------------------------------------------
# measure models and step functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasureModel:
    weights: tuple
    label: str

    def __post_init__(self):
        if not self.weights or any(w <= 0 for w in self.weights):
            raise DomainError("all atom weights must be positive")

    @property
    def n(self) -> int:
        return len(self.weights)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)

    @cached_property
    def total(self) -> float:
        return float(self.weight_array.sum())

    @cached_property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.weight_array)

    @staticmethod
    def grid01(n: int = 512) -> "MeasureModel":
        return MeasureModel(tuple([1.0 / n] * n), "grid01")

    @staticmethod
    def half_line(T: float = 2.0 ** 16, n: int = 1024) -> "MeasureModel":
        # geometric breakpoints from 2^-16 up to T, first cell [0, t_1]
        t_min = T / 2.0 ** 32
        bps = np.concatenate([[0.0], np.geomspace(t_min, T, n)])
        return MeasureModel(tuple(np.diff(bps)), "gridHalfLine")

    @staticmethod
    def counting(n: int) -> "MeasureModel":
        return MeasureModel(tuple([1.0] * n), f"counting({n})")

    def to_json_dict(self) -> dict:
        return {"label": self.label, "weights": list(self.weights)}


@dataclass(frozen=True)
class StepFunction:
    model: MeasureModel
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.model.n:
            raise DomainError("value count must match the atom count")
        if any(v < 0 or not math.isfinite(v) for v in self.values):
            raise DomainError("step function values must be finite and non-negative")

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    @staticmethod
    def from_array(model: MeasureModel, arr) -> "StepFunction":
        return StepFunction(model, tuple(float(v) for v in arr))

    def to_json_dict(self) -> dict:
        return {"model": self.model.to_json_dict(), "values": list(self.values)}


def indicator(model: MeasureModel, n_atoms: int) -> StepFunction:
    vals = [1.0] * n_atoms + [0.0] * (model.n - n_atoms)
    return StepFunction(model, tuple(vals))


# ---------------------------------------------------------------------------
# decreasing rearrangement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rearrangement:
    """x* as a right-continuous non-increasing step profile.

    values[k] on [t[k], t[k+1]) with t[0] = 0; zero beyond the support.
    """
    values: tuple
    breaks: tuple  # t[0]=0 < t[1] < ... < t[m] = total support measure

    @cached_property
    def _vals(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    @cached_property
    def _breaks(self) -> np.ndarray:
        return np.array(self.breaks, dtype=float)

    @cached_property
    def _cumint(self) -> np.ndarray:
        widths = np.diff(self._breaks)
        return np.concatenate([[0.0], np.cumsum(self._vals * widths)])

    def star(self, t: float) -> float:
        if t < 0:
            raise DomainError("t must be non-negative")
        if t >= self._breaks[-1]:
            return 0.0
        k = int(np.searchsorted(self._breaks, t, side="right")) - 1
        return float(self._vals[min(k, len(self.values) - 1)])

    def integral(self, t: float) -> float:
        """int_0^t x*(s) ds, piecewise linear in t."""
        b = self._breaks
        if t >= b[-1]:
            return float(self._cumint[-1])
        k = int(np.searchsorted(b, t, side="right")) - 1
        return float(self._cumint[k] + self._vals[k] * (t - b[k]))

    def double_star(self, t: float) -> float:
        if t <= 0:
            raise DomainError("x** needs t > 0")
        return self.integral(t) / t


def rearrange(x: StepFunction) -> Rearrangement:
    order = np.argsort(-x.array, kind="stable")
    vals = x.array[order]
    ws = x.model.weight_array[order]
    support = vals > 0
    vals, ws = vals[support], ws[support]
    if len(vals) == 0:
        return Rearrangement((0.0,), (0.0, x.model.total))
    # merge equal consecutive values
    out_v, out_w = [float(vals[0])], [float(ws[0])]
    for v, w in zip(vals[1:], ws[1:]):
        if v == out_v[-1]:
            out_w[-1] += float(w)
        else:
            out_v.append(float(v))
            out_w.append(float(w))
    breaks = [0.0]
    for w in out_w:
        breaks.append(breaks[-1] + w)
    return Rearrangement(tuple(out_v), tuple(breaks))


# ---------------------------------------------------------------------------
# fundamental-function profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerProfile:
    """c * t^alpha with its exact derivative; concave for 0 < alpha <= 1."""
    c: float = 1.0
    alpha: float = 1.0

    def __call__(self, t: float) -> float:
        if t == 0:
            return 0.0
        return self.c * t ** self.alpha

    def deriv(self, t: float) -> float:
        return self.c * self.alpha * t ** (self.alpha - 1.0)


@dataclass(frozen=True)
class FuncProfile:
    fn: object
    dfn: object = None

    def __call__(self, t: float) -> float:
        return float(self.fn(t))

    def deriv(self, t: float) -> float:
        if self.dfn is not None:
            return float(self.dfn(t))
        h = max(t, 1e-8) * 1e-6
        return (self.fn(t + h) - self.fn(max(t - h, 0.0))) / (h + min(t, h))


def profile_call(profile, t: float) -> float:
    return float(profile(t))


# ---------------------------------------------------------------------------
# space models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lp:
    p: float
    weight: tuple | None = None

    def __post_init__(self):
        if self.p < 1:
            raise DomainError("Lp needs p >= 1")


@dataclass(frozen=True)
class Linf:
    weight: tuple | None = None


@dataclass(frozen=True)
class Lorentz:
    profile: object  # concave fundamental function with profile(0+) allowed > 0


@dataclass(frozen=True)
class Marcinkiewicz:
    profile: object  # quasi-concave


@dataclass(frozen=True)
class CL:
    base: object
    phi: YoungFunction


def is_symmetric(space) -> bool:
    if isinstance(space, (Lorentz, Marcinkiewicz)):
        return True
    if isinstance(space, (Lp, Linf)):
        return space.weight is None
    if isinstance(space, CL):
        return is_symmetric(space.base)
    return False


def _weight_array(space, model: MeasureModel) -> np.ndarray:
    if space.weight is None:
        return np.ones(model.n)
    w = np.array(space.weight, dtype=float)
    if len(w) != model.n:
        raise DomainError("weight length must match the atom count")
    return w


def norm(space, x: StepFunction) -> float:
    m = x.model
    if isinstance(space, Lp):
        w = _weight_array(space, m)
        return float(np.sum((x.array * w) ** space.p * m.weight_array) ** (1.0 / space.p))
    if isinstance(space, Linf):
        w = _weight_array(space, m)
        return float(np.max(x.array * w)) if m.n else 0.0
    if isinstance(space, Lorentz):
        r = rearrange(x)
        f = space.profile
        total = 0.0
        prev = profile_call(f, 0.0) if r.breaks[0] == 0.0 else 0.0
        for v, t in zip(r.values, r.breaks[1:]):
            cur = profile_call(f, t)
            total += v * (cur - prev)
            prev = cur
        return total
    if isinstance(space, Marcinkiewicz):
        return _marcinkiewicz_norm(space.profile, x)
    if isinstance(space, CL):
        return luxemburg_norm(space.base, space.phi, x)
    raise DomainError(f"unknown space model {space!r}")


def _marcinkiewicz_norm(profile, x: StepFunction, per_interval: int = 33) -> float:
    r = rearrange(x)
    if r.values == (0.0,):
        return 0.0
    best = 0.0
    breaks = list(r.breaks)
    # beyond the support x** keeps decaying like A/t; include the full domain
    if breaks[-1] < x.model.total:
        breaks.append(x.model.total)
    for a, b in zip(breaks[:-1], breaks[1:]):
        lo = max(a, 1e-12 * max(b, 1.0))
        ts = np.geomspace(lo, b, per_interval) if lo < b else np.array([b])
        for t in ts:
            best = max(best, profile_call(profile, float(t)) * r.double_star(float(t)))
    return float(best)


# ---------------------------------------------------------------------------
# composed-space modular and Luxemburg norm
# ---------------------------------------------------------------------------

def cl_modular(base, phi: YoungFunction, x: StepFunction):
    """||phi o |x| ||_base, or +inf when some value leaves the finiteness domain."""
    vals = []
    for v in x.values:
        pv = phi(v)
        if is_inf(pv):
            return INF
        vals.append(float(pv))
    return norm(base, StepFunction.from_array(x.model, vals))


def luxemburg_norm(base, phi: YoungFunction, x: StepFunction,
                   rel_tol: float = _LUX_REL_TOL) -> float:
    """inf{lambda > 0 : ||phi(|x|/lambda)||_base <= 1} by monotone bisection."""
    mx = float(np.max(x.array)) if x.model.n else 0.0
    if mx == 0.0:
        return 0.0
    if phi.is_degenerate_step:
        # modular is 0 or +inf: the norm is exactly max|x| / a_phi
        return mx / float(phi.a_phi)

    def feasible(lam: float) -> bool:
        mod = cl_modular(base, phi, StepFunction.from_array(x.model, x.array / lam))
        return (not is_inf(mod)) and mod <= 1.0

    a = float(phi.a_phi)
    hi = mx / a if a > 0 else mx
    hi = max(hi, 1e-300)
    guard = 0
    while not feasible(hi):
        hi *= 2.0
        guard += 1
        if guard > 200:
            raise NumericError("Luxemburg bracket: no feasible lambda found")
    lo = hi / 2.0
    guard = 0
    while feasible(lo):
        hi = lo
        lo /= 2.0
        guard += 1
        if guard > 2000:
            return 0.0  # norm numerically zero
    for _ in range(200):
        if hi - lo <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# fundamental functions
# ---------------------------------------------------------------------------

def representable_atom_count(model: MeasureModel, t: float) -> int:
    if t <= 0 or t > model.total * (1 + 1e-12):
        raise DomainError(f"t={t} not within (0, total measure]")
    cum = model.cumulative
    k = int(np.argmin(np.abs(cum - t)))
    if abs(cum[k] - t) > 1e-9 * max(1.0, t):
        raise DomainError(f"t={t} is not breakpoint-representable on {model.label}")
    return k + 1


def fundamental_function(space, model: MeasureModel, t: float) -> float:
    """||chi_A|| for a set of measure t (t must hit a grid breakpoint)."""
    if t == 0:
        return 0.0
    k = representable_atom_count(model, t)
    return norm(space, indicator(model, k))


def fundamental_profile(space, model: MeasureModel):
    """Sampled fundamental function at all grid breakpoints."""
    ts, fs = [], []
    for k in range(1, model.n + 1):
        ts.append(float(model.cumulative[k - 1]))
        fs.append(norm(space, indicator(model, k)))
    return np.array(ts), np.array(fs)
