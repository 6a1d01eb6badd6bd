"""Executable experiments around the equivalence of summation methods.

Every outcome is a structured report; divergence and failed hypotheses are
results, not exceptions.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .conditions import ConditionReport, check_hl, check_ratio, check_szasz, check_T1, check_rho
from .limits import LimitEstimate, SumConfig, summate
from .series import MethodInapplicableError, SeriesSpec
from .summators import Method

DEFAULT_TOL = 1e-3
KAPPAS = (1, 2, 3)
BETAS = (1, 2)

EQUIVALENT = "equivalent-within-tol"
VIOLATED = "hypothesis-violated"
DISAGREE = "disagreement"


def _finite(x):
    return x if isinstance(x, (int, str, bool)) or x is None or math.isfinite(x) else None


def jsonable(obj):
    """JSON-safe copy: complex -> [re, im], non-finite floats -> None."""
    if isinstance(obj, complex):
        return [_finite(obj.real), _finite(obj.imag)]
    if isinstance(obj, float):
        return _finite(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def estimate_dict(est: LimitEstimate) -> dict:
    return jsonable(est.to_dict())


def condition_dict(rep: ConditionReport) -> dict:
    return jsonable(rep.to_dict())


def theorem4_methods(series: SeriesSpec, kappas=KAPPAS, betas=BETAS) -> list:
    ms = [Method("lebesgue")]
    ms += [Method("gamma", float(k)) for k in kappas]
    ms += [Method("riesz", float(b)) for b in betas]
    if series.nodes.is_integers:
        ms += [Method("cesaro", float(b)) for b in betas]
    ms.append(Method("abel"))
    return ms


def _estimates(series, methods, config, workers=1):
    run = lambda m: summate(series, m, config)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, methods))
    else:
        results = [run(m) for m in methods]
    return {m.label: e for m, e in zip(methods, results)}


@dataclass
class EquivalenceReport:
    series: str
    estimates: dict
    conditions: list
    agreement_matrix: dict
    verdict: str
    tol: float
    detail: str = ""

    @property
    def max_disagreement(self) -> float:
        vals = [d for row in self.agreement_matrix.values() for d in row.values()]
        return max(vals, default=0.0)

    def to_dict(self) -> dict:
        return jsonable({
            "series": self.series,
            "tol": self.tol,
            "verdict": self.verdict,
            "detail": self.detail,
            "estimates": {k: e.to_dict() for k, e in self.estimates.items()},
            "conditions": [c.to_dict() for c in self.conditions],
            "agreement_matrix": self.agreement_matrix,
        })


def agreement(estimates: dict) -> dict:
    """Pairwise |difference| among converged estimates, keyed by method label."""
    conv = [(k, e.value) for k, e in estimates.items() if e.converged]
    return {a: {b: float(abs(va - vb)) for b, vb in conv if b != a} for a, va in conv}


def run_theorem4(series: SeriesSpec, config: Optional[SumConfig] = None, tol: float = DEFAULT_TOL,
                 kappas=KAPPAS, betas=BETAS, workers: int = 1) -> EquivalenceReport:
    """All methods of the six-way equivalence, the T1 check and a verdict.

    hypothesis-violated: the T1 condition does not hold, so no agreement is
    promised.  equivalent-within-tol: it holds, every method converged and
    all pairs agree within ``tol``.  Otherwise: disagreement.
    """
    t1 = check_T1(series)
    est = _estimates(series, theorem4_methods(series, kappas, betas), config, workers)
    mat = agreement(est)
    worst = max((d for row in mat.values() for d in row.values()), default=0.0)
    n_conv = sum(e.converged for e in est.values())
    if t1.verdict != "holds":
        verdict, detail = VIOLATED, f"T1 condition verdict: {t1.verdict}"
    elif n_conv == len(est) and worst <= tol:
        verdict, detail = EQUIVALENT, ""
    else:
        bad = [k for k, e in est.items() if not e.converged]
        verdict = DISAGREE
        detail = f"max pairwise difference {worst:.3g}; not converged: {bad}"
    return EquivalenceReport(series.name, est, [t1], mat, verdict, tol, detail)


@dataclass
class ExperimentReport:
    """Outcome of one implication test: pass | fail | not-applicable."""

    experiment: str
    series: str
    outcome: str
    estimates: dict
    conditions: list = field(default_factory=list)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.outcome != "fail"

    def to_dict(self) -> dict:
        return jsonable({
            "experiment": self.experiment,
            "series": self.series,
            "outcome": self.outcome,
            "detail": self.detail,
            "estimates": {k: e.to_dict() for k, e in self.estimates.items()},
            "conditions": [c.to_dict() for c in self.conditions],
        })


def _agree(a: LimitEstimate, b: LimitEstimate, tol: float) -> bool:
    return a.converged and b.converged and abs(a.value - b.value) <= tol


def run_prop1(series: SeriesSpec, tol: float = DEFAULT_TOL,
              config: Optional[SumConfig] = None) -> ExperimentReport:
    """Lebesgue mean against the kappa = 1 Young mean.

    Under the T1 condition both must converge to one value and the side
    condition must be certified analytically.
    """
    t1 = check_T1(series)
    conds = [t1]
    if series.trig is not None:
        conds += list(check_rho(series.trig))
    est = _estimates(series, [Method("lebesgue"), Method("gamma", 1.0)], config)
    L, G = est["lebesgue"], est["gamma[1]"]
    if t1.verdict != "holds":
        return ExperimentReport("prop1", series.name, "not-applicable", est, conds,
                                f"T1 condition verdict: {t1.verdict}")
    ok = _agree(L, G, tol) and bool(L.side_certified)
    detail = f"|L - gamma1| = {abs(L.value - G.value):.3g}; side certified: {L.side_certified}"
    return ExperimentReport("prop1", series.name, "pass" if ok else "fail", est, conds, detail)


def run_claim_monotone(series: SeriesSpec, kappa: float, tau: float, tol: float = DEFAULT_TOL,
                       config: Optional[SumConfig] = None) -> ExperimentReport:
    """A converged Young mean of order kappa forces the same limit at order tau > kappa."""
    if not 1 <= kappa < tau:
        raise ValueError("need 1 <= kappa < tau")
    t1 = check_T1(series)
    mk, mt = Method("gamma", float(kappa)), Method("gamma", float(tau))
    est = _estimates(series, [mk, mt], config)
    a, b = est[mk.label], est[mt.label]
    if t1.verdict != "holds" or not a.converged:
        why = f"T1 verdict {t1.verdict}" if t1.verdict != "holds" else f"{mk.label} not converged"
        return ExperimentReport("claim_monotone", series.name, "not-applicable", est, [t1], why)
    ok = _agree(a, b, tol)
    return ExperimentReport("claim_monotone", series.name, "pass" if ok else "fail", est, [t1],
                            f"|{mk.label} - {mt.label}| = {abs(a.value - b.value):.3g}")


def run_cesaro_riesz(series: SeriesSpec, beta: float, tol: float = DEFAULT_TOL,
                     config: Optional[SumConfig] = None) -> ExperimentReport:
    """(C, beta) and (R, n, beta) converge together and to the same value."""
    if not series.nodes.is_integers:
        raise MethodInapplicableError("Cesaro means need the nodes lambda_n = n")
    if not beta > 0:
        raise ValueError("beta must be positive")
    mc, mr = Method("cesaro", float(beta)), Method("riesz", float(beta))
    est = _estimates(series, [mc, mr], config)
    c, r = est[mc.label], est[mr.label]
    if c.converged != r.converged:
        outcome, detail = "fail", "only one of the two means converged"
    elif not c.converged:
        outcome, detail = "pass", "neither mean converged"
    else:
        d = abs(c.value - r.value)
        outcome, detail = ("pass" if d <= tol else "fail"), f"|C - R| = {d:.3g}"
    return ExperimentReport("cesaro_riesz", series.name, outcome, est, [], detail)


def run_tauberian(series: SeriesSpec, tol: float = DEFAULT_TOL, p: float = 2.0,
                  config: Optional[SumConfig] = None) -> ExperimentReport:
    """Young summability plus a Tauberian condition forces convergence.

    Partial sums are traced as Riesz means of order 0.  When one of the
    ratio, power-series (hl) or averaged power (szasz) conditions holds and the kappa = 1
    Young mean converges, the partial sums must converge to the same value,
    and so must the Lebesgue mean.
    """
    conds = [check_ratio(series), check_hl(series, p), check_szasz(series, p)]
    ms = [Method("gamma", 1.0), Method("lebesgue"), Method("riesz", 0.0)]
    est = _estimates(series, ms, config)
    G, L, S = est["gamma[1]"], est["lebesgue"], est["riesz[0]"]
    held = [c.condition_id for c in conds if c.verdict == "holds"]
    if not held or not G.converged:
        why = "no Tauberian condition holds" if not held else "gamma[1] not converged"
        return ExperimentReport("tauberian", series.name, "not-applicable", est, conds, why)
    ok = _agree(G, S, tol) and _agree(L, S, tol)
    detail = (f"conditions holding: {held}; |gamma1 - S| = {abs(G.value - S.value):.3g}; "
              f"|L - S| = {abs(L.value - S.value):.3g}")
    return ExperimentReport("tauberian", series.name, "pass" if ok else "fail", est, conds, detail)


CSV_HEADER = ["series", "method", "value_re", "value_im", "error_estimate", "converged",
              "certified", "accelerator", "n_samples", "T1_verdict", "T1_exponent", "verdict"]


def corpus_rows(reports) -> list:
    """Flat rows (one per series and method) for the corpus summary table."""
    rows = []
    for rep in reports:
        t1 = rep.conditions[0]
        for label, e in rep.estimates.items():
            rows.append([rep.series, label, e.value.real, e.value.imag, e.error_estimate,
                         e.converged, e.certified, e.accelerator, e.n_samples_used,
                         t1.verdict, t1.fitted_exponent, rep.verdict])
    return rows
