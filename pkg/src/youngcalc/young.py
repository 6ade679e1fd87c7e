"""Piecewise representation of Young functions.

A Young function phi : [0, inf) -> [0, inf] is stored as an ordered list of
closed-form pieces on [start_i, start_{i+1}) plus an optional infinite tail:
phi(u) = +inf for u > b.  All pieces come from a fixed kind catalog so that
evaluation, inversion and validation stay analyzable.  Scalar evaluation
preserves exact types (int / Fraction) whenever the piece parameters allow it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DomainError, NumericError, ValidationError
from .extreal import INF, check_nonneg, is_inf, number_from_json, number_to_json

_BISECT_TOL = 1e-12
_BISECT_MAX_ITER = 300


# ---------------------------------------------------------------------------
# piece kind catalog
# ---------------------------------------------------------------------------

def _pow(u, p):
    # keep exactness for integer exponents on Fractions/ints
    if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
        return u ** int(p)
    return float(u) ** float(p)


def _kind_eval(kind: str, params: dict, u):
    """Evaluate one piece at scalar u >= 0; may return math.inf on overflow."""
    try:
        if kind == "power":
            return params["c"] * _pow(u, params["p"])
        if kind == "powaffine":
            return params["c"] * _pow(u, params["p"]) + params["d"]
        if kind == "affine":
            return params["slope"] * u + params["intercept"]
        if kind == "exp":
            return params["c"] * math.expm1(params["k"] * float(u))
        if kind == "powerexp":
            return params["c"] * math.expm1(params["k"] * float(u) ** float(params["p"]))
        if kind == "logpow":
            uf = float(u)
            return params["c"] * uf ** float(params["p"]) * math.log1p(params["s"] * uf) ** float(params["q"])
        if kind == "recip":
            den = params["pole"] - u
            if den <= 0:
                return INF
            return params["c"] * u / den
    except OverflowError:
        return INF
    except ZeroDivisionError:
        return INF
    raise DomainError(f"unknown piece kind {kind!r}")


def _kind_eval_array(kind: str, params: dict, u: np.ndarray) -> np.ndarray:
    p = {k: float(v) for k, v in params.items()}
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if kind == "power":
            return p["c"] * u ** p["p"]
        if kind == "powaffine":
            return p["c"] * u ** p["p"] + p["d"]
        if kind == "affine":
            return p["slope"] * u + p["intercept"]
        if kind == "exp":
            return p["c"] * np.expm1(p["k"] * u)
        if kind == "powerexp":
            return p["c"] * np.expm1(p["k"] * u ** p["p"])
        if kind == "logpow":
            return p["c"] * u ** p["p"] * np.log1p(p["s"] * u) ** p["q"]
        if kind == "recip":
            den = p["pole"] - u
            out = np.where(den > 0, p["c"] * u / np.where(den > 0, den, 1.0), INF)
            return out
    raise DomainError(f"unknown piece kind {kind!r}")


def _kind_invert(kind: str, params: dict, v: float):
    """Solve piece(u) == v analytically for a strictly increasing piece.

    Returns None when no closed-form inverse is available (then the caller
    bisects).  The result may fall outside the piece domain; callers clamp.
    """
    c = params.get("c")
    if kind == "power":
        return (v / c) ** (1.0 / float(params["p"]))
    if kind == "powaffine":
        return ((v - params["d"]) / c) ** (1.0 / float(params["p"]))
    if kind == "affine":
        s = params["slope"]
        if s == 0:
            return None
        return (v - params["intercept"]) / s
    if kind == "exp":
        return math.log1p(v / c) / params["k"]
    if kind == "powerexp":
        return (math.log1p(v / c) / params["k"]) ** (1.0 / float(params["p"]))
    if kind == "recip":
        # c*u/(pole-u) = v  =>  u = v*pole/(c+v)
        return v * params["pole"] / (c + v)
    return None  # logpow


def _kind_is_constant(kind: str, params: dict) -> bool:
    if kind == "affine":
        return params["slope"] == 0
    if kind in ("power", "powaffine", "logpow"):
        return params["c"] == 0
    return False


def _kind_scale_arg(kind: str, params: dict, c):
    """Parameters of u -> piece(c*u), same kind."""
    if kind == "power":
        return {"c": params["c"] * _pow(c, params["p"]), "p": params["p"]}
    if kind == "powaffine":
        return {"c": params["c"] * _pow(c, params["p"]), "p": params["p"], "d": params["d"]}
    if kind == "affine":
        return {"slope": params["slope"] * c, "intercept": params["intercept"]}
    if kind == "exp":
        return {"c": params["c"], "k": params["k"] * c}
    if kind == "powerexp":
        return {"c": params["c"], "k": params["k"] * _pow(c, params["p"]), "p": params["p"]}
    if kind == "logpow":
        return {"c": params["c"] * _pow(c, params["p"]), "p": params["p"],
                "q": params["q"], "s": params["s"] * c}
    if kind == "recip":
        return {"c": params["c"], "pole": params["pole"] / c}
    raise DomainError(f"unknown piece kind {kind!r}")


# ---------------------------------------------------------------------------
# the function object
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    start: object  # number: float, int or Fraction
    kind: str
    params: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Piece):
            return NotImplemented
        return (self.kind == other.kind and self.start == other.start
                and self.params == other.params)


@dataclass(frozen=True, eq=False)
class YoungFunction:
    """phi given by `pieces` on [0, b); phi(u) = +inf for u > b."""

    pieces: tuple
    b: object = INF

    def __post_init__(self):
        if not self.pieces:
            raise ValidationError("a Young function needs at least one piece")
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def __eq__(self, other):
        if not isinstance(other, YoungFunction):
            return NotImplemented
        return self.b == other.b and list(self.pieces) == list(other.pieces)

    # -- evaluation ---------------------------------------------------------

    def _piece_at(self, u) -> Piece:
        chosen = self.pieces[0]
        for piece in self.pieces:
            if piece.start <= u:
                chosen = piece
            else:
                break
        return chosen

    def __call__(self, u):
        check_nonneg(u, "u")
        if u > self.b:
            return INF
        if u == self.b and not is_inf(self.b):
            return self.value_at_b
        piece = self._piece_at(u)
        return _kind_eval(piece.kind, piece.params, u)

    def eval_array(self, us: np.ndarray) -> np.ndarray:
        us = np.asarray(us, dtype=float)
        out = np.empty_like(us)
        starts = np.array([float(p.start) for p in self.pieces])
        idx = np.searchsorted(starts, us, side="right") - 1
        idx = np.clip(idx, 0, len(self.pieces) - 1)
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] = _kind_eval_array(piece.kind, piece.params, us[mask])
        if not is_inf(self.b):
            bf = float(self.b)
            out[us > bf] = INF
            at_b = us == bf
            if at_b.any():
                out[at_b] = float(self.value_at_b)
        out = np.where(np.isnan(out), INF, out)
        return out

    # -- characteristics ----------------------------------------------------

    def _piece_end(self, i: int):
        return self.pieces[i + 1].start if i + 1 < len(self.pieces) else self.b

    def _piece_sup(self, i: int):
        """Left limit of phi at the right end of piece i."""
        piece = self.pieces[i]
        end = self._piece_end(i)
        if is_inf(end):
            if _kind_is_constant(piece.kind, piece.params):
                return _kind_eval(piece.kind, piece.params, piece.start)
            return INF
        return _kind_eval(piece.kind, piece.params, end)

    @cached_property
    def value_at_b(self):
        """phi(b) = the left limit at b (left-continuity); INF when b = inf."""
        if is_inf(self.b):
            return INF
        return self._piece_sup(len(self.pieces) - 1)

    @cached_property
    def a_phi(self):
        return self.inverse(0)

    @property
    def class_tag(self) -> str:
        if is_inf(self.b):
            return "Y1"
        return "Y2" if is_inf(self.value_at_b) else "Y3"

    @property
    def u0(self):
        """inf{u > 0 : inverse(u) = b}; finite only for class Y3."""
        if self.class_tag == "Y3":
            return self.value_at_b
        return INF

    @property
    def is_degenerate_step(self) -> bool:
        return self.class_tag == "Y3" and self.a_phi == float(self.b)

    def characteristics(self) -> "Characteristics":
        return Characteristics(
            a_phi=self.a_phi,
            b_phi=float(self.b) if not is_inf(self.b) else INF,
            value_at_b=self.value_at_b,
            class_tag=self.class_tag,
            u0=self.u0,
            degenerate_step=self.is_degenerate_step,
        )

    @property
    def breakpoints(self):
        bps = [float(p.start) for p in self.pieces]
        if not is_inf(self.b):
            bps.append(float(self.b))
        return bps

    # -- generalized inverse ------------------------------------------------

    def inverse(self, v) -> float:
        """inf{u >= 0 : phi(u) > v}; inverse(inf) = b (the limit value)."""
        if is_inf(v):
            return float(self.b) if not is_inf(self.b) else INF
        check_nonneg(v, "v")
        v = float(v)
        if not is_inf(self.b) and not is_inf(self.value_at_b) and float(self.value_at_b) <= v:
            return float(self.b)
        for i, piece in enumerate(self.pieces):
            sup = self._piece_sup(i)
            if sup > v:
                return self._invert_in_piece(i, v)
        return float(self.b) if not is_inf(self.b) else INF

    def _invert_in_piece(self, i: int, v: float) -> float:
        piece = self.pieces[i]
        start = float(piece.start)
        if not _kind_is_constant(piece.kind, piece.params):
            u = _kind_invert(piece.kind, piece.params, v)
            if u is not None:
                return max(u, start)
        # monotone bisection on the piece for kinds without analytic inverse
        end = self._piece_end(i)
        if is_inf(end):
            hi = max(start, 1.0)
            guard = 0
            while _kind_eval(piece.kind, piece.params, hi) <= v:
                hi *= 2.0
                guard += 1
                if guard > 4000:
                    raise NumericError("bisection bracket not found")
        else:
            hi = float(end)
        lo = start
        it = 0
        while hi - lo > _BISECT_TOL * max(1.0, lo) and it < _BISECT_MAX_ITER:
            mid = 0.5 * (lo + hi)
            if _kind_eval(piece.kind, piece.params, mid) <= v:
                lo = mid
            else:
                hi = mid
            it += 1
        return 0.5 * (lo + hi)

    # -- transforms ---------------------------------------------------------

    def scale_arg(self, c) -> "YoungFunction":
        """The Young function u -> phi(c*u) for c > 0."""
        if not c > 0:
            raise DomainError("scale factor must be positive")
        pieces = tuple(
            Piece(p.start / c, p.kind, _kind_scale_arg(p.kind, p.params, c))
            for p in self.pieces
        )
        b = self.b if is_inf(self.b) else self.b / c
        return YoungFunction(pieces, b)


@dataclass(frozen=True)
class Characteristics:
    a_phi: float
    b_phi: float
    value_at_b: float
    class_tag: str
    u0: float
    degenerate_step: bool = False


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: dict | None = None


@dataclass
class ValidationReport:
    checks: list
    flags: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_axioms(self):
        return [c.name for c in self.checks if not c.passed]


def _sample_in(lo: float, hi: float, n: int) -> np.ndarray:
    """Deterministic mix of linear and geometric points in (lo, hi)."""
    lin = np.linspace(lo, hi, n // 2 + 2)[1:-1]
    g_lo = max(lo, hi * 1e-9, 1e-12)
    geo = np.geomspace(g_lo, hi, n - len(lin) + 2)[1:-1]
    pts = np.unique(np.concatenate([lin, geo]))
    return pts[(pts > lo) & (pts < hi)]


def validate(phi: YoungFunction, triples_per_piece: int = 1000) -> ValidationReport:
    """Check the Young-function axioms on deterministic samples."""
    checks: list[AxiomCheck] = []
    flags: list[str] = []

    # structural sanity
    starts = [float(p.start) for p in phi.pieces]
    structural = (
        starts[0] == 0.0
        and all(s1 < s2 for s1, s2 in zip(starts, starts[1:]))
        and (is_inf(phi.b) or float(phi.b) > starts[-1])
        and (is_inf(phi.b) or float(phi.b) > 0)
    )
    checks.append(AxiomCheck("structure", structural,
                             None if structural else {"starts": starts, "b": float(phi.b) if not is_inf(phi.b) else None}))
    if not structural:
        return ValidationReport(checks, flags)

    b_cap = float(phi.b) if not is_inf(phi.b) else max(starts[-1] * 4 + 4, 1e3)

    v0 = phi(0.0)
    checks.append(AxiomCheck("origin", v0 == 0, None if v0 == 0 else {"phi(0)": v0}))

    grid = np.unique(np.concatenate([_sample_in(0.0, b_cap, 2000), np.array(starts)]))
    vals = phi.eval_array(grid)

    neg = vals < -1e-12
    checks.append(AxiomCheck("non-negative", not neg.any(),
                             None if not neg.any() else {"u": float(grid[neg][0]), "phi": float(vals[neg][0])}))

    finite = ~np.isinf(vals)
    fv = vals[finite]
    fg = grid[finite]
    diffs = np.diff(fv)
    tol = 1e-10 * np.maximum(1.0, np.abs(fv[:-1]))
    dec = diffs < -tol
    checks.append(AxiomCheck("non-decreasing", not dec.any(),
                             None if not dec.any() else {"u": float(fg[:-1][dec][0]), "drop": float(diffs[dec][0])}))

    # midpoint convexity, sampled per piece plus cross-piece triples
    rng = np.random.default_rng(20240817)
    witness = None
    for i, piece in enumerate(phi.pieces):
        lo = float(piece.start)
        hi = min(float(phi._piece_end(i)) if not is_inf(phi._piece_end(i)) else b_cap, b_cap)
        if hi <= lo:
            continue
        u = rng.uniform(lo, hi, triples_per_piece)
        w = rng.uniform(lo, hi, triples_per_piece)
        mid = 0.5 * (u + w)
        lhs = phi.eval_array(mid)
        rhs = 0.5 * (phi.eval_array(u) + phi.eval_array(w))
        slack = 1e-9 * np.maximum(1.0, np.abs(rhs))
        bad = (lhs > rhs + slack) & ~np.isinf(rhs)
        if bad.any() and witness is None:
            j = int(np.argmax(bad))
            witness = {"u": float(u[j]), "w": float(w[j]),
                       "phi(mid)": float(lhs[j]), "mean": float(rhs[j])}
    # cross-piece triples
    u = rng.uniform(0.0, b_cap, triples_per_piece)
    w = rng.uniform(0.0, b_cap, triples_per_piece)
    lhs = phi.eval_array(0.5 * (u + w))
    rhs = 0.5 * (phi.eval_array(u) + phi.eval_array(w))
    slack = 1e-9 * np.maximum(1.0, np.abs(rhs))
    bad = (lhs > rhs + slack) & ~np.isinf(rhs)
    if bad.any() and witness is None:
        j = int(np.argmax(bad))
        witness = {"u": float(u[j]), "w": float(w[j]),
                   "phi(mid)": float(lhs[j]), "mean": float(rhs[j])}
    checks.append(AxiomCheck("midpoint-convexity", witness is None, witness))

    # continuity at interior junctions
    cont_witness = None
    for i in range(1, len(phi.pieces)):
        s = phi.pieces[i].start
        left = phi._piece_sup(i - 1)
        right = _kind_eval(phi.pieces[i].kind, phi.pieces[i].params, s)
        if is_inf(left) or is_inf(right):
            if left != right:
                cont_witness = {"at": float(s), "left": left, "right": right}
                break
            continue
        if abs(float(left) - float(right)) > 1e-9 * max(1.0, abs(float(right))):
            cont_witness = {"at": float(s), "left": float(left), "right": float(right)}
            break
    checks.append(AxiomCheck("junction-continuity", cont_witness is None, cont_witness))

    # left-continuity at b
    if not is_inf(phi.b):
        bf = float(phi.b)
        vb = phi.value_at_b
        if is_inf(vb):
            near = phi(bf * (1 - 1e-9)) if bf > 0 else 0.0
            far = phi(bf * (1 - 1e-3)) if bf > 0 else 0.0
            ok = is_inf(near) or (far == 0 and near == 0) or (far > 0 and near / max(far, 1e-300) > 10)
            checks.append(AxiomCheck("left-continuity-at-b", bool(ok),
                                     None if ok else {"phi(b-)": near, "phi(b)": "inf"}))
        else:
            near = phi(bf * (1 - 1e-9))
            ok = abs(float(near) - float(vb)) <= 1e-6 * max(1.0, abs(float(vb)))
            checks.append(AxiomCheck("left-continuity-at-b", bool(ok),
                                     None if ok else {"phi(b-)": float(near), "phi(b)": float(vb)}))

    # not identically zero on (0, inf)
    nontrivial = (not is_inf(phi.b)) or float(phi.eval_array(np.array([b_cap]))[0]) > 0
    checks.append(AxiomCheck("not-identically-zero", bool(nontrivial), None))

    if phi.is_degenerate_step:
        flags.append("degenerate_two_valued")
    return ValidationReport(checks, flags)


def validate_or_raise(phi: YoungFunction) -> YoungFunction:
    report = validate(phi)
    if not report.passed:
        raise ValidationError(f"Young axioms failed: {report.failed_axioms()}")
    return phi


# ---------------------------------------------------------------------------
# Delta_2 condition
# ---------------------------------------------------------------------------

@dataclass
class Delta2Report:
    range_kind: str
    span: tuple
    n_points: int
    sups: list  # sampled sup of phi(2u)/phi(u) for base span and two extensions
    satisfied: bool
    constant: float | None
    witnesses: list  # (u, ratio) with the largest ratios on the widest span


def delta2(phi: YoungFunction, range_kind: str = "large",
           span: tuple | None = None, n: int = 10_000) -> Delta2Report:
    """Sampled check of phi(2u) <= C*phi(u) on large or small arguments."""
    if range_kind == "large":
        if not is_inf(phi.b):
            raise DomainError("large-argument Delta_2 needs b_phi = inf")
        span = span or (1.0, 1e4)
        spans = [span, (span[0], span[1] * 2), (span[0], span[1] * 4)]
    elif range_kind == "small":
        if phi.a_phi != 0:
            raise DomainError("small-argument Delta_2 needs a_phi = 0")
        span = span or (1e-4, 1.0)
        spans = [span, (span[0] / 2, span[1]), (span[0] / 4, span[1])]
    else:
        raise DomainError(f"unknown range {range_kind!r}")

    sups = []
    last_us = last_ratios = None
    for lo, hi in spans:
        us = np.geomspace(lo, hi, n)
        num = phi.eval_array(2.0 * us)
        den = phi.eval_array(us)
        ok = (den > 0) & np.isfinite(num) & np.isfinite(den)
        ratios = num[ok] / den[ok]
        if len(ratios) == 0:
            raise DomainError("Delta_2 sample entirely degenerate on the span")
        sups.append(float(np.max(ratios)))
        last_us, last_ratios = us[ok], ratios
    satisfied = sups[2] <= sups[0] * 1.01
    order = np.argsort(last_ratios)[::-1][:8]
    witnesses = [(float(last_us[j]), float(last_ratios[j])) for j in order]
    return Delta2Report(range_kind, span, n, sups, satisfied,
                        sups[2] if satisfied else None, witnesses)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def to_json_dict(phi: YoungFunction) -> dict:
    return {
        "pieces": [
            {"from": number_to_json(p.start), "kind": p.kind,
             "params": {k: number_to_json(v) for k, v in p.params.items()}}
            for p in phi.pieces
        ],
        "tail": "none" if is_inf(phi.b) else "infinite",
        "b": number_to_json(phi.b),
    }


def from_json_dict(doc: dict) -> YoungFunction:
    try:
        pieces = tuple(
            Piece(number_from_json(p["from"]), p["kind"],
                  {k: number_from_json(v) for k, v in p.get("params", {}).items()})
            for p in doc["pieces"]
        )
        b = number_from_json(doc.get("b", "inf"))
        if doc.get("tail") == "none":
            b = INF
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed Young descriptor: {exc}") from exc
    return YoungFunction(pieces, b)


def young_from_samples(us, vals) -> YoungFunction:
    """Convex piecewise-affine interpolant of sampled (u, phi(u)) points.

    Infinite sampled values truncate the finite domain (b = last finite u).
    Slopes are forced non-decreasing by a lower convex hull pass.
    """
    us = [float(u) for u in us]
    vals = [float(v) for v in vals]
    pts = [(0.0, 0.0)]
    b = INF
    for u, v in sorted(zip(us, vals)):
        if u <= 0:
            continue
        if is_inf(v):
            b = u
            break
        pts.append((u, max(v, 0.0)))
    # lower convex hull (Andrew monotone chain on the finite graph)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) <= (p[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(p)
    pieces = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y2 - y1) / (x2 - x1)
        pieces.append(Piece(x1, "affine", {"slope": slope, "intercept": y1 - slope * x1}))
    if not pieces:
        pieces = [Piece(0.0, "affine", {"slope": 0.0, "intercept": 0.0})]
    return YoungFunction(tuple(pieces), b)
