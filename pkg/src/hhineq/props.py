"""Special-means propositions: printed closed forms against generic substitution.

Each proposition instantiates one of the three deviation bounds with a fixed
function (``1/x``, ``x^n`` or ``-ln x``). The printed left and right sides are
evaluated exactly as printed; the generic sides come from :mod:`hhcore` on the
same function, so the theorem constants are never re-typed here.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import hhcore
from .exprdsl import FuncExpr, parse
from .means import Interval, arithmetic, gen_log, geometric, harmonic, identric, logarithmic

__all__ = ["PropParams", "PropReport", "Sweep", "proposition", "prop_sweep", "instantiating_function"]

NEEDS_N = (2, 5, 8)
NEEDS_Q = (4, 5, 6, 7, 8, 9)
THEOREM_OF = {k: (k - 1) // 3 + 1 for k in range(1, 10)}


def _discrepant(printed: float, generic: float) -> bool:
    return abs(printed - generic) > 1e-8 * (1 + abs(generic))


@dataclass(frozen=True)
class PropParams:
    k: int
    iv: Interval
    n: Optional[int] = None
    q: Optional[float] = None

    def __post_init__(self):
        if self.k not in range(1, 10):
            raise ValueError(f"proposition index must be 1..9, got {self.k}")
        if not isinstance(self.iv, Interval):
            object.__setattr__(self, "iv", Interval(*self.iv))
        if self.k in NEEDS_N:
            if self.n is None or int(self.n) != self.n or self.n < 2:
                raise ValueError(f"proposition {self.k} needs an integer n >= 2")
            object.__setattr__(self, "n", int(self.n))
        if self.k in NEEDS_Q:
            if self.q is None:
                raise ValueError(f"proposition {self.k} needs q")
            q = float(self.q)
            if self.k <= 6 and not q > 1:
                raise ValueError(f"proposition {self.k} needs q > 1")
            if not q >= 1:
                raise ValueError(f"proposition {self.k} needs q >= 1")
            object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class PropReport:
    params: PropParams
    function: str
    lhs_paper: float
    lhs_true: hhcore.Estimate
    rhs_paper: float
    rhs_generic: float
    lhs_discrepancy: bool
    rhs_discrepancy: bool
    holds_generic: bool

    def as_dict(self) -> dict:
        p = self.params
        return {
            "k": p.k,
            "a": p.iv.a,
            "b": p.iv.b,
            "n": p.n,
            "q": p.q,
            "function": self.function,
            "lhs_paper": self.lhs_paper,
            "lhs_true": self.lhs_true.value,
            "lhs_true_err": self.lhs_true.err,
            "rhs_paper": self.rhs_paper,
            "rhs_generic": self.rhs_generic,
            "lhs_discrepancy": self.lhs_discrepancy,
            "rhs_discrepancy": self.rhs_discrepancy,
            "holds_generic": self.holds_generic,
        }


def instantiating_function(k: int, n: Optional[int] = None) -> FuncExpr:
    if k in (1, 4, 7):
        return parse("1/x")
    if k in NEEDS_N:
        return parse(f"x^{int(n)}")
    return parse("-ln(x)")


# --------------------------------------------------------------------------
# printed forms


def _printed_lhs(k: int, iv: Interval, n: Optional[int]) -> float:
    a, b = iv
    A = arithmetic(a, b)
    if k in (1, 4, 7):
        return abs(1 / logarithmic(a, b) - 1 / harmonic(a, b) - 1 / (2 * A))
    if k in NEEDS_N:
        Ln = gen_log(iv, n) ** n
        Ln1 = gen_log(iv, n - 1) ** (n - 1)
        G2 = geometric(a, b) ** 2
        return abs(Ln + (n - 1) * G2 * Ln1 / 2 - A ** n / 2)
    # ln(a^b / b^a) taken as b ln a - a ln b so large endpoints cannot overflow
    log_ratio = b * math.log(a) - a * math.log(b)
    return abs(-math.log(identric(a, b)) + log_ratio / (2 * (b - a)) + math.log(A) / 2)


def _printed_rhs(k: int, iv: Interval, n: Optional[int], q: Optional[float]) -> float:
    a, b = iv
    if k == 1:
        return (5 * a / 48 + 7 * b / 48) / a ** 2 + (7 * a / 48 + 5 * b / 48) / b ** 2
    if k == 2:
        return 5 * n / 24 * arithmetic(a ** n, b ** n) + 7 * n / 24 * arithmetic(
            b * a ** (n - 1), a * b ** (n - 1))
    if k == 3:
        return 12 / 48 + 7 * b / (48 * a) + 5 * a / (48 * b)
    if k in (4, 5, 6):
        lp = gen_log(iv, q / (q - 1))
        pre = lp / 4 ** (1 + 1 / q)
        if k == 4:
            u, v = b ** (-2 * q), a ** (-2 * q)
            return pre * ((u + 3 * v) ** (1 / q) + (v + 3 * u) ** (1 / q))
        if k == 5:
            u, v = b ** ((n - 1) * q), a ** ((n - 1) * q)
            return pre * ((n * u + 3 * n * v) ** (1 / q) + (n * v + 3 * n * u) ** (1 / q))
        u, v = b ** (-q), a ** (-q)
        return pre * ((u + 3 * v) ** (1 / q) + (v + 3 * u) ** (1 / q))
    pre = arithmetic(a, b) ** (1 - 1 / q) / (4 * 12 ** (1 / q))
    if k == 7:
        u, v = b ** (-2 * q), a ** (-2 * q)
    elif k == 8:
        u, v = (n * b ** (n - 1)) ** q, (n * a ** (n - 1)) ** q
    else:
        u, v = b ** (-q), a ** (-q)
    return pre * ((u * (2 * a + b) + v * (4 * a + 5 * b)) ** (1 / q)
                  + (v * (a + 2 * b) + u * (5 * a + 4 * b)) ** (1 / q))


# --------------------------------------------------------------------------


def proposition(params: PropParams, config: hhcore.Config = hhcore.DEFAULT) -> PropReport:
    k, iv = params.k, params.iv
    f = instantiating_function(k, params.n)
    dev = hhcore.deviation(f, iv, config)
    lhs_true = hhcore.Estimate(abs(dev.value), dev.err)
    theorem = THEOREM_OF[k]
    if theorem == 1:
        bound = hhcore.bound_theorem1(f, iv, config)
    elif theorem == 2:
        bound = hhcore.bound_theorem2(f, iv, hhcore.BoundParams.holder(params.q), config)
    else:
        bound = hhcore.bound_theorem3(f, iv, hhcore.BoundParams.power(params.q), config)
    lhs_paper = _printed_lhs(k, iv, params.n)
    rhs_paper = _printed_rhs(k, iv, params.n, params.q)
    return PropReport(
        params=params,
        function=f.text,
        lhs_paper=lhs_paper,
        lhs_true=lhs_true,
        rhs_paper=rhs_paper,
        rhs_generic=bound.value,
        lhs_discrepancy=_discrepant(lhs_paper, lhs_true.value),
        rhs_discrepancy=_discrepant(rhs_paper, bound.value),
        holds_generic=lhs_true.value <= bound.value + hhcore.slack(dev.err, config),
    )


@dataclass
class Sweep:
    reports: list = field(default_factory=list)

    def discrepancy_counts(self) -> dict:
        """Per proposition: (cells, lhs discrepancies, rhs discrepancies, generic failures)."""
        counts: dict = {}
        for r in self.reports:
            c = counts.setdefault(r.params.k, Counter())
            c["cells"] += 1
            c["lhs_discrepancy"] += r.lhs_discrepancy
            c["rhs_discrepancy"] += r.rhs_discrepancy
            c["generic_failures"] += not r.holds_generic
        return {k: dict(v) for k, v in sorted(counts.items())}

    def __iter__(self):
        return iter(self.reports)

    def __len__(self):
        return len(self.reports)


def prop_sweep(
    iv_list: Iterable,
    n_list: Sequence[int] = (2,),
    q_list: Sequence[float] = (),
    ks: Iterable[int] = range(1, 10),
    config: hhcore.Config = hhcore.DEFAULT,
) -> Sweep:
    """Every valid (interval, k, n, q) cell in that nesting order.

    Cells whose parameters violate a proposition's constraint are skipped,
    so ``q = 1`` reaches k = 7..9 but not k = 4..6, and an empty ``q_list``
    restricts the sweep to k = 1..3.
    """
    ks = sorted(set(ks))
    sweep = Sweep()
    for iv in iv_list:
        iv = iv if isinstance(iv, Interval) else Interval(*iv)
        for k in ks:
            ns = n_list if k in NEEDS_N else [None]
            qs = q_list if k in NEEDS_Q else [None]
            for n, q in itertools.product(ns, qs):
                if q is not None and (q < 1 or (k <= 6 and q <= 1)):
                    continue
                sweep.reports.append(proposition(PropParams(k, iv, n, q), config))
    return sweep
