"""Deviation functional, its integral representation and the Hadamard-type bounds.

For ``0 < a < b`` the deviation of ``f`` is

    D(f) = (1/(b-a)) int_a^b f + (a f(b) - b f(a)) / (2(b-a)) - f((a+b)/2) / 2

and it also equals a pair of weighted integrals of ``f'`` over ``t in [0, 1]``
(see :func:`lemma_rhs`). Three upper bounds on ``|D(f)|`` are provided
(``T1``, ``T2``, ``T3``) together with four classical bounds on the trapezoid
deviation ``(f(a)+f(b))/2 - mean(f)`` (``DA11``, ``PP12``, ``PP13``, ``ADK14``).

Every bound carries the shape check of its hypothesis. A failed hypothesis
makes the bound *not applicable*; it never blocks the computation.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .exprdsl import (
    SHAPE_GRID, SHAPE_TOL, FuncExpr, ShapeReport, check_shape, differentiate,
    evaluate, evaluate_array,
)
from .means import Interval, gen_log
from .quad import REL_TOL, QuadResult, WeightedIntegrand, integrate

__all__ = [
    "Config", "Estimate", "BoundParams", "Bound", "HadamardResult",
    "BoundReport", "QuadratureError", "deviation", "lemma_rhs",
    "trapezoid_deviation", "bound_theorem1", "bound_theorem2",
    "bound_theorem3", "bound_da", "bound_pp", "bound_pp_concave", "bound_adk",
    "hadamard_check", "bound_report", "abs_derivative_power", "slack",
]

_EPS = sys.float_info.epsilon
# allowance for evaluation/rounding error of the closed-form terms, in ulps
_ROUNDING_ULPS = 16


@dataclass(frozen=True)
class Config:
    rel_tol: float = REL_TOL
    slack_floor: float = 1e-9
    shape_tol: float = SHAPE_TOL
    shape_grid: int = SHAPE_GRID

    def as_dict(self) -> dict:
        return {
            "rel_tol": self.rel_tol,
            "slack_floor": self.slack_floor,
            "shape_tol": self.shape_tol,
            "shape_grid": self.shape_grid,
        }


DEFAULT = Config()


class QuadratureError(RuntimeError):
    def __init__(self, result: QuadResult, what: str):
        super().__init__(
            f"quadrature for {what} did not converge "
            f"(err {result.err_estimate:.3g} after {result.evals} evaluations)"
        )
        self.result = result


@dataclass(frozen=True)
class Estimate:
    """A computed value with an absolute error bound."""

    value: float
    err: float

    def __abs__(self) -> float:
        return abs(self.value)


def slack(err: float, config: Config = DEFAULT) -> float:
    return max(config.slack_floor, 10 * err)


def _interval(iv) -> Interval:
    return iv if isinstance(iv, Interval) else Interval(*iv)


def _quad(g, lo, hi, config, what) -> QuadResult:
    res = integrate(g, lo, hi, rel_tol=config.rel_tol)
    if not res.converged:
        raise QuadratureError(res, what)
    return res


# --------------------------------------------------------------------------
# the functional and its integral form


def deviation(f: FuncExpr, iv, config: Config = DEFAULT) -> Estimate:
    iv = _interval(iv)
    a, b = iv
    w = b - a
    res = _quad(f, a, b, config, "int f")
    fa, fb, fm = evaluate(f, a), evaluate(f, b), evaluate(f, iv.mid)
    mean = res.value / w
    cross = (a * fb - b * fa) / (2 * w)
    value = mean + cross - fm / 2
    rounding = _ROUNDING_ULPS * _EPS * (
        (abs(a * fb) + abs(b * fa)) / (2 * w) + abs(mean) + abs(fm) / 2
    )
    return Estimate(value, res.err_estimate / w + rounding)


def lemma_integrands(f: FuncExpr, iv) -> tuple[WeightedIntegrand, WeightedIntegrand]:
    """The two weighted integrands of ``f'`` over ``t in [0, 1]``.

    First:  (t b + (1-t) a) f'((1-t)/2 b + (1+t)/2 a)
    Second: (t a + (1-t) b) f'((1-t)/2 a + (1+t)/2 b)
    """
    a, b = _interval(iv)
    fp = differentiate(f)
    mid = (a + b) / 2
    first = WeightedIntegrand(fp, w0=a, w1=b - a, c0=mid, c1=(a - b) / 2)
    second = WeightedIntegrand(fp, w0=b, w1=a - b, c0=mid, c1=(b - a) / 2)
    return first, second


def lemma_rhs(f: FuncExpr, iv, config: Config = DEFAULT) -> Estimate:
    first, second = lemma_integrands(f, iv)
    r1 = _quad(first, 0.0, 1.0, config, "first weighted integral")
    r2 = _quad(second, 0.0, 1.0, config, "second weighted integral")
    value = (r1.value + r2.value) / 4
    rounding = _ROUNDING_ULPS * _EPS * (abs(r1.value) + abs(r2.value)) / 4
    return Estimate(value, (r1.err_estimate + r2.err_estimate) / 4 + rounding)


def trapezoid_deviation(f: FuncExpr, iv, config: Config = DEFAULT) -> Estimate:
    iv = _interval(iv)
    a, b = iv
    res = _quad(f, a, b, config, "int f")
    fa, fb = evaluate(f, a), evaluate(f, b)
    mean = res.value / iv.width
    value = (fa + fb) / 2 - mean
    rounding = _ROUNDING_ULPS * _EPS * ((abs(fa) + abs(fb)) / 2 + abs(mean))
    return Estimate(value, res.err_estimate / iv.width + rounding)


# --------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundParams:
    q: float
    p: Optional[float] = None

    @classmethod
    def holder(cls, q: float) -> "BoundParams":
        q = float(q)
        if not q > 1:
            raise ValueError(f"Hölder form needs q > 1, got {q:g}")
        return cls(q, q / (q - 1))

    @classmethod
    def power(cls, q: float) -> "BoundParams":
        q = float(q)
        if not q >= 1:
            raise ValueError(f"power-mean form needs q >= 1, got {q:g}")
        return cls(q)


@dataclass(frozen=True)
class Bound:
    label: str
    value: float
    precondition: ShapeReport
    q: Optional[float] = None
    target: str = "deviation"  # or "trapezoid"

    @property
    def applicable(self) -> bool:
        return self.precondition.passed


def abs_derivative_power(f: FuncExpr, q: float = 1.0) -> Callable[[np.ndarray], np.ndarray]:
    """Pointwise ``|f'(x)|^q`` as a vectorised callable."""
    fp = differentiate(f)

    def g(xs):
        d = np.abs(evaluate_array(fp, xs))
        return d if q == 1 else d ** q

    return g


def _shape(f, iv, q, mode, config) -> ShapeReport:
    return check_shape(
        abs_derivative_power(f, q), iv, mode, grid=config.shape_grid, tol=config.shape_tol,
    )


def _endpoint_slopes(f, a, b) -> tuple[float, float]:
    fp = differentiate(f)
    return abs(evaluate(fp, a)), abs(evaluate(fp, b))


def bound_theorem1(f: FuncExpr, iv, config: Config = DEFAULT) -> Bound:
    a, b = _interval(iv)
    da, db = _endpoint_slopes(f, a, b)
    value = (5 * a / 48 + 7 * b / 48) * da + (7 * a / 48 + 5 * b / 48) * db
    return Bound("T1", value, _shape(f, (a, b), 1.0, "convex", config))


def bound_theorem2(f: FuncExpr, iv, params, config: Config = DEFAULT) -> Bound:
    if not isinstance(params, BoundParams):
        params = BoundParams.holder(params)
    elif params.p is None:
        params = BoundParams.holder(params.q)
    q, p = params.q, params.p
    iv = _interval(iv)
    a, b = iv
    da, db = _endpoint_slopes(f, a, b)
    dq_a, dq_b = da ** q, db ** q
    brackets = (dq_b + 3 * dq_a) ** (1 / q) + (dq_a + 3 * dq_b) ** (1 / q)
    value = gen_log(iv, p) * brackets / 4 ** (1 + 1 / q)
    return Bound("T2", value, _shape(f, iv, q, "convex", config), q=q)


def bound_theorem3(f: FuncExpr, iv, params=1.0, config: Config = DEFAULT) -> Bound:
    q = params.q if isinstance(params, BoundParams) else BoundParams.power(params).q
    if q < 1:
        raise ValueError(f"power-mean form needs q >= 1, got {q:g}")
    iv = _interval(iv)
    a, b = iv
    da, db = _endpoint_slopes(f, a, b)
    dq_a, dq_b = da ** q, db ** q
    first = (dq_b * (2 * a + b) + dq_a * (4 * a + 5 * b)) ** (1 / q)
    second = (dq_a * (a + 2 * b) + dq_b * (5 * a + 4 * b)) ** (1 / q)
    value = iv.mid ** (1 - 1 / q) / (4 * 12 ** (1 / q)) * (first + second)
    return Bound("T3", value, _shape(f, iv, q, "convex", config), q=q)


def bound_da(f: FuncExpr, iv, config: Config = DEFAULT) -> Bound:
    iv = _interval(iv)
    a, b = iv
    da, db = _endpoint_slopes(f, a, b)
    value = (b - a) / 8 * (da + db)
    return Bound("DA11", value, _shape(f, iv, 1.0, "convex", config), target="trapezoid")


def bound_pp(f: FuncExpr, iv, q: float = 1.0, config: Config = DEFAULT) -> Bound:
    q = BoundParams.power(q).q
    iv = _interval(iv)
    a, b = iv
    da, db = _endpoint_slopes(f, a, b)
    value = (b - a) / 4 * ((da ** q + db ** q) / 2) ** (1 / q)
    return Bound("PP12", value, _shape(f, iv, q, "convex", config), q=q, target="trapezoid")


def bound_pp_concave(f: FuncExpr, iv, config: Config = DEFAULT) -> Bound:
    """Midpoint-slope bound; gated on ``|f'|`` concave.

    Concavity of ``|f'|^q`` for any ``q >= 1`` implies concavity of ``|f'|``,
    so the ``q = 1`` check is the weakest sufficient gate.
    """
    iv = _interval(iv)
    a, b = iv
    dm = abs(evaluate(differentiate(f), iv.mid))
    value = (b - a) / 4 * dm
    return Bound("PP13", value, _shape(f, iv, 1.0, "concave", config), target="trapezoid")


def bound_adk(f: FuncExpr, iv, q: float = 1.0, config: Config = DEFAULT) -> Bound:
    q = BoundParams.power(q).q
    iv = _interval(iv)
    a, b = iv
    fp = differentiate(f)
    d1 = abs(evaluate(fp, (3 * a + b) / 4))
    d3 = abs(evaluate(fp, (a + 3 * b) / 4))
    # at q = 1 the prefactor is 0^0, taken as 1
    factor = 1.0 if q == 1 else ((q - 1) / (2 * q - 1)) ** (1 - 1 / q)
    value = (b - a) / 4 * factor * (d1 + d3)
    return Bound("ADK14", value, _shape(f, iv, q, "concave", config), q=q, target="trapezoid")


# --------------------------------------------------------------------------
# Hermite-Hadamard double inequality


@dataclass(frozen=True)
class HadamardResult:
    midpoint: float
    mean: Estimate
    endpoints: float
    shape: str  # convex, concave or neither
    holds: Optional[bool]

    @property
    def direction(self) -> str:
        return {"convex": "forward", "concave": "reversed"}.get(self.shape, "none")

    @property
    def margin(self) -> Optional[float]:
        """Smaller of the two gaps in the expected direction."""
        lo, mid, hi = self.midpoint, self.mean.value, self.endpoints
        if self.shape == "convex":
            gap = min(mid - lo, hi - mid)
        elif self.shape == "concave":
            gap = min(lo - mid, mid - hi)
        else:
            return None
        return max(gap, 0.0) if self.holds else gap


def hadamard_check(f: FuncExpr, iv, config: Config = DEFAULT) -> HadamardResult:
    """``f(A) <= mean(f) <= (f(a)+f(b))/2`` for convex ``f``, reversed for concave."""
    iv = _interval(iv)
    a, b = iv
    res = _quad(f, a, b, config, "int f")
    mean = res.value / iv.width
    mid = evaluate(f, iv.mid)
    ends = (evaluate(f, a) + evaluate(f, b)) / 2
    err = res.err_estimate / iv.width + _ROUNDING_ULPS * _EPS * (abs(mean) + abs(mid) + abs(ends))
    s = slack(err, config)
    kw = dict(grid=config.shape_grid, tol=config.shape_tol)
    if check_shape(f, iv, "convex", **kw).passed:
        shape, holds = "convex", mid <= mean + s and mean <= ends + s
    elif check_shape(f, iv, "concave", **kw).passed:
        shape, holds = "concave", mid >= mean - s and mean >= ends - s
    else:
        shape, holds = "neither", None
    return HadamardResult(mid, Estimate(mean, err), ends, shape, holds)


# --------------------------------------------------------------------------
# aggregated report


@dataclass(frozen=True)
class BoundCheck:
    bound: Bound
    lhs: float  # |deviation| or |trapezoid deviation|
    slack: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.bound.value + self.slack

    @property
    def margin(self) -> float:
        """``value - lhs``; a negative gap inside the slack counts as equality."""
        gap = self.bound.value - self.lhs
        return max(gap, 0.0) if self.holds else gap

    @property
    def status(self) -> str:
        if not self.bound.applicable:
            return "not_applicable"
        return "holds" if self.holds else "violated"


@dataclass
class BoundReport:
    f: str
    a: float
    b: float
    deviation: Estimate
    lemma_rhs: Estimate
    lemma_holds: bool
    trapezoid: Optional[Estimate]
    checks: list = field(default_factory=list)
    hadamard: Optional[HadamardResult] = None

    @property
    def violations(self) -> list:
        return [c for c in self.checks if c.status == "violated"]

    def as_dict(self) -> dict:
        def est(e):
            return None if e is None else {"value": e.value, "err": e.err}

        out = {
            "f": self.f,
            "a": self.a,
            "b": self.b,
            "deviation": est(self.deviation),
            "lemma_rhs": est(self.lemma_rhs),
            "lemma_residual": self.deviation.value - self.lemma_rhs.value,
            "lemma_holds": self.lemma_holds,
            "trapezoid_deviation": est(self.trapezoid),
            "bounds": [
                {
                    "label": c.bound.label,
                    "q": c.bound.q,
                    "target": c.bound.target,
                    "value": c.bound.value,
                    "lhs": c.lhs,
                    "slack": c.slack,
                    "margin": c.margin,
                    "holds": c.holds,
                    "status": c.status,
                    "precondition": {
                        "mode": c.bound.precondition.mode,
                        "grid_size": c.bound.precondition.grid_size,
                        "max_violation": c.bound.precondition.max_violation,
                        "passed": c.bound.precondition.passed,
                    },
                }
                for c in self.checks
            ],
            "hadamard": None,
        }
        if self.hadamard is not None:
            h = self.hadamard
            out["hadamard"] = {
                "midpoint": h.midpoint,
                "mean": h.mean.value,
                "endpoints": h.endpoints,
                "shape": h.shape,
                "direction": h.direction,
                "holds": h.holds,
                "margin": h.margin,
            }
        return out


def bound_report(
    f: FuncExpr,
    iv,
    qs: Iterable[float] = (),
    classical: bool = False,
    hadamard: bool = True,
    config: Config = DEFAULT,
) -> BoundReport:
    """Evaluate every requested bound against the matching deviation.

    ``T1`` always runs; ``T2`` for each ``q > 1`` in ``qs``; ``T3`` for each
    ``q >= 1`` in ``qs``. With ``classical`` the four trapezoid bounds run
    too, ``PP12``/``ADK14`` for each ``q >= 1`` in ``qs`` (or ``q = 1`` alone).
    """
    iv = _interval(iv)
    qs = sorted(set(float(q) for q in qs))
    dev = deviation(f, iv, config)
    rhs = lemma_rhs(f, iv, config)
    lemma_ok = abs(dev.value - rhs.value) <= slack(dev.err + rhs.err, config)
    dev_slack = slack(dev.err, config)
    checks = [BoundCheck(bound_theorem1(f, iv, config), abs(dev.value), dev_slack)]
    for q in qs:
        if q > 1:
            checks.append(BoundCheck(bound_theorem2(f, iv, q, config), abs(dev.value), dev_slack))
    for q in qs:
        if q >= 1:
            checks.append(BoundCheck(bound_theorem3(f, iv, q, config), abs(dev.value), dev_slack))
    trap = None
    if classical:
        trap = trapezoid_deviation(f, iv, config)
        lhs, s = abs(trap.value), slack(trap.err, config)
        classical_qs = [q for q in qs if q >= 1] or [1.0]
        checks.append(BoundCheck(bound_da(f, iv, config), lhs, s))
        for q in classical_qs:
            checks.append(BoundCheck(bound_pp(f, iv, q, config), lhs, s))
        checks.append(BoundCheck(bound_pp_concave(f, iv, config), lhs, s))
        for q in classical_qs:
            checks.append(BoundCheck(bound_adk(f, iv, q, config), lhs, s))
    hh = hadamard_check(f, iv, config) if hadamard else None
    return BoundReport(f.text, iv.a, iv.b, dev, rhs, lemma_ok, trap, checks, hh)
