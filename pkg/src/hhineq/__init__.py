"""Numerical checks of Hadamard-type bounds on the midpoint-trapezoid deviation."""

__version__ = "0.1.0"

from .exprdsl import FuncExpr, check_shape, differentiate, evaluate, parse
from .hhcore import (
    BoundParams, Config, Estimate, bound_adk, bound_da, bound_pp, bound_pp_concave,
    bound_report, bound_theorem1, bound_theorem2, bound_theorem3, deviation,
    hadamard_check, lemma_rhs, trapezoid_deviation,
)
from .means import Interval, MeanSet, gen_log, mean_set
from .props import PropParams, PropReport, prop_sweep, proposition
from .quad import QuadResult, WeightedIntegrand, integrate
from .verify import CorpusCase, SuiteReport, gen_corpus, run_suite

__all__ = [
    "FuncExpr", "parse", "evaluate", "differentiate", "check_shape",
    "Interval", "MeanSet", "mean_set", "gen_log",
    "QuadResult", "WeightedIntegrand", "integrate",
    "Config", "Estimate", "BoundParams", "deviation", "lemma_rhs",
    "trapezoid_deviation", "bound_theorem1", "bound_theorem2", "bound_theorem3",
    "bound_da", "bound_pp", "bound_pp_concave", "bound_adk", "hadamard_check",
    "bound_report", "PropParams", "PropReport", "proposition", "prop_sweep",
    "CorpusCase", "SuiteReport", "gen_corpus", "run_suite",
]
