"""Seeded corpus of convex test functions and the full inequality suite."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import hhcore
from .exprdsl import DomainError, FuncExpr, check_shape, parse
from .jsonio import dumps
from .means import Interval

__all__ = [
    "CorpusCase", "Corpus", "SuiteReport", "DEFAULT_Q_LIST", "admit",
    "build_corpus", "gen_corpus", "random_expression", "run_suite", "config_digest",
]

DEFAULT_Q_LIST = (1.0, 1.5, 2.0, 3.0, 5.0)
# redraw budget per requested case before giving up
_MAX_ATTEMPTS = 50


@dataclass(frozen=True)
class CorpusCase:
    f: FuncExpr
    iv: Interval
    tags: dict

    def as_dict(self) -> dict:
        return {"f": self.f.text, "a": self.iv.a, "b": self.iv.b, "tags": dict(self.tags)}


class Corpus(list):
    """List of admitted cases; ``rejected`` keeps (f, a, b, reason) of the others."""

    def __init__(self, cases=(), rejected=()):
        super().__init__(cases)
        self.rejected = list(rejected)


def _tag(q: float, mode: str) -> str:
    return f"{mode}_q={q:g}"


def admit(
    f, iv, q_list: Sequence[float] = DEFAULT_Q_LIST, config: hhcore.Config = hhcore.DEFAULT,
) -> tuple[Optional[CorpusCase], str]:
    """Shape-gate one candidate. Returns ``(case, "")`` or ``(None, reason)``.

    A candidate is admitted when ``f`` is convex on the interval and at least
    one derivative gate (``|f'|^q`` convex or concave) passes.
    """
    f = parse(f) if isinstance(f, str) else f
    iv = iv if isinstance(iv, Interval) else Interval(*iv)
    kw = dict(grid=config.shape_grid, tol=config.shape_tol)
    try:
        if not check_shape(f, iv, "convex", **kw).passed:
            return None, "f not convex"
        tags = {"f_convex": True}
        for q in sorted(set([1.0, *map(float, q_list)])):
            g = hhcore.abs_derivative_power(f, q)
            tags[_tag(q, "convex")] = check_shape(g, iv, "convex", **kw).passed
            tags[_tag(q, "concave")] = check_shape(g, iv, "concave", **kw).passed
    except DomainError as exc:
        return None, f"domain error: {exc}"
    if not any(v for k, v in tags.items() if k != "f_convex"):
        return None, "no derivative shape gate passes"
    return CorpusCase(f, iv, tags), ""


def build_corpus(pairs: Iterable, q_list=DEFAULT_Q_LIST, config=hhcore.DEFAULT) -> Corpus:
    """Corpus from explicit ``(expression, interval)`` pairs, gated like generated ones."""
    corpus = Corpus()
    for f, iv in pairs:
        case, reason = admit(f, iv, q_list, config)
        if case is None:
            iv = iv if isinstance(iv, Interval) else Interval(*iv)
            corpus.rejected.append((str(f), iv.a, iv.b, reason))
        else:
            corpus.append(case)
    return corpus


def _coef(rng, lo, hi) -> float:
    return round(float(rng.uniform(lo, hi)), 3)


_TERMS = {
    "power": lambda rng: f"x^{int(rng.integers(2, 6))}",
    "exp": lambda rng: f"exp({_coef(rng, 0.2, 1.0)!r}*x)",
    "recip": lambda rng: "1/x",
    "neglog": lambda rng: "(-ln(x))",
    "xlogx": lambda rng: "x*ln(x)",
}
# (probability, admissible terms, slope range); the slope sign of the two
# monotone families keeps f' away from zero so |f'| stays convex, the mixed
# family is free and supplies the concave-|f'| cases
_FAMILIES = (
    (0.45, ("power", "exp"), (0.0, 2.0)),
    (0.25, ("recip", "neglog"), (-2.0, 0.0)),
    (0.30, ("power", "exp", "recip", "neglog", "xlogx"), (-2.0, 2.0)),
)


def random_expression(rng) -> str:
    """One expression from the generator families; no shape gate applied."""
    weights = [fam[0] for fam in _FAMILIES]
    _, kinds, (s_lo, s_hi) = _FAMILIES[int(rng.choice(len(_FAMILIES), p=weights))]
    size = int(rng.integers(1, min(3, len(kinds)) + 1))
    chosen = sorted(rng.choice(len(kinds), size=size, replace=False))
    terms = [f"{_coef(rng, 0.1, 2.0)!r}*{_TERMS[kinds[i]](rng)}" for i in chosen]
    slope, shift = _coef(rng, s_lo, s_hi), _coef(rng, -1.0, 1.0)
    text = " + ".join(terms)
    text += f" - {-slope!r}*x" if slope < 0 else f" + {slope!r}*x"
    text += f" - {-shift!r}" if shift < 0 else f" + {shift!r}"
    return text


def gen_corpus(
    seed: int,
    count: int,
    range_: tuple[float, float] = (0.1, 10.0),
    q_list: Sequence[float] = DEFAULT_Q_LIST,
    config: hhcore.Config = hhcore.DEFAULT,
) -> Corpus:
    """``count`` admitted cases drawn deterministically from ``seed``.

    Functions are positive combinations of up to three terms from
    ``x^n (n=2..5), 1/x, -ln x, exp(c x) (c in [0.2, 1]), x ln x`` plus an
    affine part, drawn from the families in ``_FAMILIES``; intervals are
    uniform in ``range_``. Rejected draws are
    recorded on the returned corpus and replaced.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    lo, hi = map(float, range_)
    if not 0 < lo < hi:
        raise ValueError(f"range must satisfy 0 < lo < hi, got {range_!r}")
    rng = np.random.default_rng(seed)
    corpus = Corpus()
    attempts = 0
    while len(corpus) < count:
        attempts += 1
        if attempts > _MAX_ATTEMPTS * count:
            raise RuntimeError(f"only {len(corpus)} of {count} cases admitted")
        text = random_expression(rng)
        a, b = sorted(float(v) for v in rng.uniform(lo, hi, size=2))
        if not a < b:
            continue
        case, reason = admit(text, (a, b), q_list, config)
        if case is None:
            corpus.rejected.append((text, a, b, reason))
        else:
            corpus.append(case)
    return corpus


# --------------------------------------------------------------------------


@dataclass
class SuiteReport:
    seed: Optional[int]
    config: dict
    cases: int = 0
    checks: int = 0
    violations: list = field(default_factory=list)
    skips: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    rejected: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def digest(self) -> str:
        return config_digest(self.config)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "config_digest": self.digest,
            "passed": self.passed,
            "cases": self.cases,
            "checks": self.checks,
            "rejected": self.rejected,
            "stats": {k: dict(v) for k, v in sorted(self.stats.items())},
            "violations": list(self.violations),
            "skips": list(self.skips),
        }


def config_digest(config: dict) -> str:
    return hashlib.sha256(dumps(config).encode()).hexdigest()


def _count(stats, label, status):
    entry = stats.setdefault(label, {"holds": 0, "violated": 0, "not_applicable": 0})
    entry[status] += 1


def run_suite(
    corpus: Sequence[CorpusCase],
    q_list: Sequence[float] = DEFAULT_Q_LIST,
    config: hhcore.Config = hhcore.DEFAULT,
    seed: Optional[int] = None,
    extra_config: Optional[dict] = None,
) -> SuiteReport:
    """Lemma identity, the seven bounds and the Hadamard check on every case.

    Shape gates are re-evaluated for every ``q``. ``T3``, ``PP12`` and
    ``ADK14`` always run at ``q = 1`` in addition to ``q_list``; ``T2`` only
    for ``q > 1``.
    """
    if not corpus:
        raise ValueError("corpus is empty")
    qs = sorted(set([1.0, *map(float, q_list)]))
    t2_qs = [q for q in map(float, q_list) if q > 1]
    cfg = {"q_list": sorted(set(map(float, q_list))), **config.as_dict(), **(extra_config or {})}
    report = SuiteReport(seed=seed, config=cfg, rejected=len(getattr(corpus, "rejected", ())))
    for index, case in enumerate(corpus):
        report.cases += 1
        where = {"case": index, "f": case.f.text, "a": case.iv.a, "b": case.iv.b}
        try:
            br = hhcore.bound_report(case.f, case.iv, qs, classical=True, config=config)
        except (DomainError, hhcore.QuadratureError) as exc:
            report.skips.append({**where, "reason": str(exc)})
            continue
        report.checks += 1
        status = "holds" if br.lemma_holds else "violated"
        _count(report.stats, "lemma", status)
        if not br.lemma_holds:
            report.violations.append({
                **where, "check": "lemma", "q": None, "lhs": br.deviation.value,
                "bound": br.lemma_rhs.value,
                "margin": -abs(br.deviation.value - br.lemma_rhs.value),
            })
        for c in br.checks:
            label = c.bound.label
            if label == "T2" and c.bound.q not in t2_qs:
                continue
            key = label if c.bound.q is None else f"{label}(q={c.bound.q:g})"
            _count(report.stats, key, c.status)
            if c.status == "not_applicable":
                continue
            report.checks += 1
            if c.status == "violated":
                report.violations.append({
                    **where, "check": label, "q": c.bound.q, "lhs": c.lhs,
                    "bound": c.bound.value, "margin": c.margin,
                })
        h = br.hadamard
        if h.holds is None:
            _count(report.stats, "HH", "not_applicable")
        else:
            report.checks += 1
            _count(report.stats, "HH", "holds" if h.holds else "violated")
            if not h.holds:
                report.violations.append({
                    **where, "check": "HH", "q": None, "lhs": h.midpoint,
                    "bound": h.endpoints, "margin": h.margin,
                })
    return report
