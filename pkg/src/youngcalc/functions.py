"""Ready-made Young functions used throughout the tests and the CLI."""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .extreal import INF
from .young import Piece, YoungFunction


def power(p: float, c: float = 1.0) -> YoungFunction:
    """c * u^p on [0, inf)."""
    if p < 1 or c <= 0:
        raise DomainError("power Young function needs p >= 1, c > 0")
    return YoungFunction((Piece(0, "power", {"c": c, "p": p}),))


def power_over_p(p: float) -> YoungFunction:
    """u^p / p, the normalization used by the conjugation closed forms."""
    return power(p, 1.0 / p)


def hinge(a: float = 1.0) -> YoungFunction:
    """max(u - a, 0)."""
    if a <= 0:
        raise DomainError("hinge offset must be positive")
    return YoungFunction((
        Piece(0, "affine", {"slope": 0, "intercept": 0}),
        Piece(a, "affine", {"slope": 1, "intercept": -a}),
    ))


def step(a: float = 1.0) -> YoungFunction:
    """The two-valued function: 0 on [0, a], +inf beyond (class Y3, u0 = 0)."""
    if a <= 0:
        raise DomainError("step location must be positive")
    return YoungFunction((Piece(0, "affine", {"slope": 0, "intercept": 0}),), b=a)


def truncated_linear(b: float = 2.0) -> YoungFunction:
    """u on [0, b], +inf beyond: the canonical non-degenerate Y3 instance."""
    return YoungFunction((Piece(0, "affine", {"slope": 1, "intercept": 0}),), b=b)


def reciprocal(pole: float = 1.0, c: float = 1.0) -> YoungFunction:
    """c*u/(pole - u) on [0, pole), +inf beyond: class Y2."""
    return YoungFunction((Piece(0, "recip", {"c": c, "pole": pole}),), b=pole)


def exp_minus_one(k: float = 1.0, c: float = 1.0) -> YoungFunction:
    """c*(e^{k u} - 1)."""
    return YoungFunction((Piece(0, "exp", {"c": c, "k": k}),))


def power_exp(p: float, k: float = 1.0, c: float = 1.0) -> YoungFunction:
    """c*(e^{k u^p} - 1) for p >= 1."""
    if p < 1:
        raise DomainError("power_exp needs p >= 1 for convexity")
    return YoungFunction((Piece(0, "powerexp", {"c": c, "k": k, "p": p}),))


def log_power(p: float, q: float = 1.0, c: float = 1.0, s: float = 1.0) -> YoungFunction:
    """c * u^p * log(1 + s*u)^q (convex for p >= 1, q >= 0... validated)."""
    return YoungFunction((Piece(0, "logpow", {"c": c, "p": p, "q": q, "s": s}),))


# -- worked-example functions ------------------------------------------------

def example7_phi() -> YoungFunction:
    return hinge(1.0)


def example7_phi1() -> YoungFunction:
    return power(2)


def example7_phi2() -> YoungFunction:
    """0 on [0,2]; u^2/4 - 1 for u >= 2."""
    return YoungFunction((
        Piece(0, "affine", {"slope": 0, "intercept": 0}),
        Piece(2, "powaffine", {"c": 0.25, "p": 2, "d": -1.0}),
    ))


def example7_phi3() -> YoungFunction:
    """0 on [0,1/2]; 2u-1 on [1/2,1]; u^2 for u >= 1."""
    return YoungFunction((
        Piece(0, "affine", {"slope": 0, "intercept": 0}),
        Piece(0.5, "affine", {"slope": 2, "intercept": -1}),
        Piece(1, "power", {"c": 1, "p": 2}),
    ))


def example11_phi() -> YoungFunction:
    return power(2)


def example11_phi_p(p: float) -> YoungFunction:
    """u^p on [0,1]; u^4 for u >= 1 (1 <= p <= 2)."""
    if not 1 <= p <= 2:
        raise DomainError("example11 exponent must satisfy 1 <= p <= 2")
    return YoungFunction((
        Piece(0, "power", {"c": 1, "p": p}),
        Piece(1, "power", {"c": 1, "p": 4}),
    ))


def example11_theta() -> YoungFunction:
    """0 on [0,1]; u^2-1 on [1,sqrt(2)]; u^4/4 beyond."""
    return YoungFunction((
        Piece(0, "affine", {"slope": 0, "intercept": 0}),
        Piece(1, "powaffine", {"c": 1.0, "p": 2, "d": -1.0}),
        Piece(math.sqrt(2.0), "power", {"c": 0.25, "p": 4}),
    ))


def example11_phi2() -> YoungFunction:
    """u^2 on [0,1]; u^4 beyond."""
    return YoungFunction((
        Piece(0, "power", {"c": 1, "p": 2}),
        Piece(1, "power", {"c": 1, "p": 4}),
    ))


def quadratic_half() -> YoungFunction:
    """u^2/2, the comparison function of the gap construction."""
    return power(2, 0.5)


NAMED = {
    "example7_phi": example7_phi,
    "example7_phi1": example7_phi1,
    "example7_phi2": example7_phi2,
    "example7_phi3": example7_phi3,
    "example11_phi": example11_phi,
    "example11_theta": example11_theta,
    "example11_phi2": example11_phi2,
    "quadratic_half": quadratic_half,
}
