"""Special means of two positive numbers.

The closed forms below accept any ``a != b`` (order irrelevant); the
:class:`Interval` type is the validated entry point used everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "Interval", "MeanSet", "arithmetic", "geometric", "harmonic",
    "logarithmic", "identric", "gen_log", "mean_set",
]

# within these distances of p = 0 and p = -1 the closed form is replaced
_NEAR_ZERO = 1e-2
_NEAR_MINUS_ONE = 1e-6
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b) and 0 < a < b):
            raise ValueError(f"require 0 < a < b, got a={self.a!r}, b={self.b!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __iter__(self):
        yield self.a
        yield self.b

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def mid(self) -> float:
        return (self.a + self.b) / 2


def arithmetic(a: float, b: float) -> float:
    return (a + b) / 2


def geometric(a: float, b: float) -> float:
    return math.sqrt(a * b)


def harmonic(a: float, b: float) -> float:
    return 2 * a * b / (a + b)


def _log_ratio(a: float, b: float) -> float:
    # ln(b/a) without losing digits when b is close to a
    return math.log1p((b - a) / a)


def logarithmic(a: float, b: float) -> float:
    return (b - a) / _log_ratio(a, b)


def identric(a: float, b: float) -> float:
    """``(1/e) (b^b / a^a)^(1/(b-a))`` evaluated as ``a exp(b ln(b/a)/(b-a) - 1)``."""
    return a * math.exp(b * _log_ratio(a, b) / (b - a) - 1)


def _log_power_mean_small(a: float, b: float, p: float) -> float:
    """``ln L_p`` for small ``|p|`` without cancellation.

    With ``m = ln I = E[ln X]`` (X uniform on [a, b]),
    ``ln L_p = m + log1p(E[expm1(p (ln X - m))]) / p``; the expectation is
    taken by Gauss-Legendre in ``y = ln x`` where the integrand is entire.
    """
    m = math.log(identric(a, b))
    lo, hi = math.log(a), math.log(b)
    half = (hi - lo) / 2
    y = lo + half * (_GL_NODES + 1)
    excess = half * np.dot(_GL_WEIGHTS, np.exp(y) * np.expm1(p * (y - m))) / (b - a)
    return m + math.log1p(excess) / p


def gen_log(iv, p: float, extend: bool = False) -> float:
    """Generalised logarithmic mean ``L_p(a, b)``.

    ``p = 0`` and ``p = -1`` are excluded by definition; with ``extend=True``
    they map to the limiting values ``I(a, b)`` and ``L(a, b)``.
    """
    a, b = iv
    p = float(p)
    if p in (0.0, -1.0) and not extend:
        raise ValueError(f"L_p undefined for p={p:g}; pass extend=True for the limit")
    if p == 0.0:
        return identric(a, b)
    if p == 1.0:
        # (b^2 - a^2) / (2(b - a)) reduces to A exactly
        return arithmetic(a, b)
    if abs(p) < _NEAR_ZERO:
        return math.exp(_log_power_mean_small(a, b, p))
    s = p + 1
    r = _log_ratio(a, b)
    # (b^s - a^s) / s = a^s expm1(s r) / s, finite as s -> 0
    if abs(s) < _NEAR_MINUS_ONE:
        z = s * r
        ratio = r * (1 + z / 2 + z * z / 6)
    else:
        ratio = math.expm1(s * r) / s
    log_mean_p = s * math.log(a) + math.log(ratio) - math.log(b - a)
    return math.exp(log_mean_p / p)


@dataclass(frozen=True)
class MeanSet:
    A: float
    G: float
    H: float
    L: float
    I: float  # noqa: E741
    Lp: Optional[float] = None
    p: Optional[float] = None

    def as_dict(self) -> dict:
        out = {"A": self.A, "G": self.G, "H": self.H, "L": self.L, "I": self.I}
        if self.Lp is not None:
            out["Lp"] = self.Lp
            out["p"] = self.p
        return out


def mean_set(iv, p: Optional[float] = None, extend: bool = False) -> MeanSet:
    if not isinstance(iv, Interval):
        iv = Interval(*iv)
    a, b = iv
    lp = None if p is None else gen_log(iv, p, extend=extend)
    return MeanSet(
        A=arithmetic(a, b),
        G=geometric(a, b),
        H=harmonic(a, b),
        L=logarithmic(a, b),
        I=identric(a, b),
        Lp=lp,
        p=None if p is None else float(p),
    )
