"""Empirical checks of the growth and Tauberian conditions.

Big-O statements cannot be decided on a finite range, so every check
returns a verdict with the evidence behind it:

* ``measured_constant``: the supremum of the normalised quantity over the
  probe range.  Step quantities normalised by x attain their supremum at
  breakpoints, so suprema are taken over the nodes themselves.
* ``fitted_exponent``: least-squares slope of log(normalised quantity)
  against log(scale) over the last two decades of a 40-per-decade grid
  (per-cell maxima, empty or zero cells skipped).  A bounded quantity has
  slope <= 0, so the critical exponent is 0 for every condition.

Verdict: ``holds`` if the slope is at most ``slack``, ``fails`` if it
exceeds it, ``inconclusive`` when the data cannot support either.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .series import SeriesSpec, TrigSeries

SLACK = 0.15
GRID_PER_DECADE = 40
DEFAULT_XMAX = 1e5


@dataclass(frozen=True)
class ConditionReport:
    condition_id: str
    measured_constant: float
    fitted_exponent: float
    verdict: str
    probe_range: tuple
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _default_xmax(series: SeriesSpec, x_max) -> float:
    if x_max is not None:
        return float(x_max)
    if series.terminates:
        # two decades past the last node, where cumulative quantities are flat
        lam, _ = series.head(series.horizon)
        return 100.0 * max(float(lam[-1]), 1.0)
    # the last node itself is off limits: the sum beyond it is unknown
    below_last = float(series.nodes(np.array([max(series.horizon - 2, 0)]))[0])
    return float(min(DEFAULT_XMAX, below_last))


def _abs_terms(series: SeriesSpec, x_max: float):
    lam, c = series.terms_upto(x_max)
    return np.asarray(lam), np.abs(c)


def _grid(x_min, x_max):
    decades = max(math.log10(x_max / x_min), 1e-9)
    n = max(2, int(math.ceil(decades * GRID_PER_DECADE)) + 1)
    return np.logspace(math.log10(x_min), math.log10(x_max), n)


def fit_exponent(x, q, x_min, x_max, decades: float = 2.0) -> float:
    """Slope of log q versus log x using per-cell maxima over the top decades.

    Returns 0.0 for an identically zero quantity and nan when fewer than
    three non-empty cells are available.
    """
    x = np.asarray(x, dtype=float)
    q = np.asarray(q, dtype=float)
    inside = (x >= x_min) & (x <= x_max)
    x, q = x[inside], q[inside]
    if x.size == 0 or not np.any(q > 0):
        return 0.0
    lo = max(x_min, x_max / 10**decades)
    edges = _grid(lo, x_max) if x_max > lo else np.array([lo, x_max])
    # cell i is [edges[i-1], edges[i]); the top edge joins the last cell
    cell = np.clip(np.searchsorted(edges, x, side="right"), 1, edges.size - 1)
    keep = (x >= lo) & (q > 0)
    xs, qs, cs = x[keep], q[keep], cell[keep]
    if xs.size == 0:
        return 0.0
    uniq = np.unique(cs)
    if uniq.size < 3:
        return math.nan
    cx = np.empty(uniq.size)
    cq = np.empty(uniq.size)
    for i, u in enumerate(uniq):
        sel = cs == u
        j = np.argmax(qs[sel])
        cx[i] = xs[sel][j]
        cq[i] = qs[sel][j]
    slope, _ = np.polyfit(np.log(cx), np.log(cq), 1)
    return float(slope)


def _verdict(constant, exponent, slack) -> str:
    if not math.isfinite(constant):
        return "inconclusive"
    if constant == 0:
        return "holds"
    if not math.isfinite(exponent):
        return "inconclusive"
    return "holds" if exponent <= slack else "fails"


def _report(cid, x, q, x_min, x_max, slack, detail=""):
    inside = (x >= x_min) & (x <= x_max)
    constant = float(np.max(q[inside])) if np.any(inside) else 0.0
    exponent = fit_exponent(x, q, x_min, x_max)
    return ConditionReport(cid, constant, exponent, _verdict(constant, exponent, slack),
                           (float(x_min), float(x_max)), detail)


def _plateau(series, x, q, total, x_max):
    """Append total/x beyond the last node of a terminating series."""
    if not series.terminates or x.size == 0 or x[-1] >= x_max:
        return x, q
    xe = np.geomspace(max(x[-1], 1e-300) * (1 + 1e-9), x_max, 2 * GRID_PER_DECADE + 1)
    return np.concatenate([x, xe]), np.concatenate([q, total / xe])


def _positive_min(lam, default=1.0):
    pos = lam[lam > 0]
    return float(pos[0]) if pos.size else default


def check_T1(series: SeriesSpec, X_max: Optional[float] = None, x_min: Optional[float] = None,
             slack: float = SLACK) -> ConditionReport:
    """T1(x)/x with T1(x) = sum_{lambda_n <= x} lambda_n |c_n|."""
    x_max = _default_xmax(series, X_max)
    lam, a = _abs_terms(series, x_max)
    t1 = np.cumsum(lam * a)
    lo = _positive_min(lam) if x_min is None else float(x_min)
    pos = lam > 0
    x, q = lam[pos], t1[pos] / lam[pos]
    # value at the left end of the probe range when it is not a node
    k = np.searchsorted(lam, lo, side="right")
    left = t1[k - 1] / lo if k > 0 and lo > 0 else 0.0
    x = np.concatenate([[lo], x])
    q = np.concatenate([[left], q])
    x, q = _plateau(series, x, q, t1[-1] if t1.size else 0.0, x_max)
    return _report("T1_2_6", x, q, lo, x_max, slack)


def _tail_beyond(lam, w):
    """Estimate sum of w beyond the last node from geometric decay of octave masses.

    Returns (estimate, ok); ok is False when the masses do not decay.
    """
    top = lam[-1]
    masses = []
    for j in range(4):
        hi, lo = top / 2**j, top / 2 ** (j + 1)
        masses.append(float(np.sum(w[(lam > lo) & (lam <= hi)])))
    if masses[0] == 0 and masses[1] == 0:
        return 0.0, True
    ratios = [masses[i] / masses[i + 1] for i in range(3) if masses[i + 1] > 0]
    if not ratios:
        return 0.0, True
    r = max(ratios[:2])
    if r >= 0.95:
        return math.inf, False
    return masses[0] * r / (1 - r), True


def check_T2(series: SeriesSpec, X_max: Optional[float] = None, x_min: float = 1.0,
             slack: float = SLACK) -> ConditionReport:
    """x T2(x) with T2(x) = sum_{lambda_n >= x} |c_n| / lambda_n.

    The tail beyond the horizon is extrapolated from octave masses; a
    non-decaying tail makes the report inconclusive.
    """
    x_max = _default_xmax(series, X_max)
    lam, c = series.head(series.horizon)
    a = np.abs(c)
    pos = lam > 0
    lam, a = lam[pos], a[pos]
    if lam.size == 0:
        return ConditionReport("T2_2_7", 0.0, 0.0, "holds", (x_min, x_max))
    w = a / lam
    extra, ok = (0.0, True) if series.terminates else _tail_beyond(lam, w)
    if not ok:
        return ConditionReport("T2_2_7", math.inf, math.nan, "inconclusive", (x_min, x_max),
                               "tail sum does not stabilise within the horizon")
    t2 = np.cumsum(w[::-1])[::-1] + extra  # inclusive tail at each node
    # sup of x T2(x) on (lambda_{k-1}, lambda_k] is lambda_k T2(lambda_k)
    x, q = lam, lam * t2
    k = np.searchsorted(lam, x_min, side="left")
    left = x_min * (t2[k] if k < lam.size else extra)
    x = np.concatenate([[x_min], x])
    q = np.concatenate([[left], q])
    return _report("T2_2_7", x, q, x_min, x_max, slack)


def check_rho(t: TrigSeries, N_max: float = DEFAULT_XMAX, slack: float = SLACK):
    """Pointwise n rho_n = O(1) and averaged (1/N) sum n rho_n = O(1); two reports."""
    N = int(N_max)
    n = np.arange(1, N + 1)
    r = np.asarray(t.rho(n), dtype=float)
    nr = n * r
    x = n.astype(float)
    zyg = _report("rho_1_4", x, nr, 1.0, float(N), slack)
    mor = _report("moricz_1_5", x, np.cumsum(nr) / x, 1.0, float(N), slack)
    return zyg, mor


def check_signed(series: SeriesSpec, N_max: Optional[float] = None,
                 slack: float = SLACK) -> ConditionReport:
    """|sum_{lambda_n <= x} lambda_n c_n| / x, the signed growth condition."""
    x_max = _default_xmax(series, N_max)
    lam, c = series.terms_upto(x_max)
    s = np.abs(np.cumsum(lam * c))
    pos = lam > 0
    lo = _positive_min(lam)
    x, q = _plateau(series, lam[pos], s[pos] / lam[pos], s[-1] if s.size else 0.0, x_max)
    return _report("signed_1_6", x, q, lo, x_max, slack)


def _gaps(series, x_max):
    lam, c = series.terms_upto(x_max)
    if lam.size < 2:
        return lam[1:], lam[1:], np.abs(c[1:])
    return lam[1:], np.diff(lam), np.abs(c[1:])


def check_ratio(series: SeriesSpec, N_max: Optional[float] = None,
                slack: float = SLACK) -> ConditionReport:
    """|c_n| lambda_n / (lambda_n - lambda_{n-1}), n >= 1."""
    x_max = _default_xmax(series, N_max)
    lam, gap, a = _gaps(series, x_max)
    q = a * lam / gap
    lo = float(lam[0]) if lam.size else 1.0
    return _report("ratio_3_1", lam, q, lo, x_max, slack)


def check_szasz(series: SeriesSpec, p: float = 2.0, N_max: Optional[float] = None,
                slack: float = SLACK) -> ConditionReport:
    """(1/lambda_N) sum_{n<=N} lambda_n^p gap_n^(1-p) |c_n|^p, an averaged power condition."""
    if not p > 1:
        raise ValueError("p must exceed 1")
    x_max = _default_xmax(series, N_max)
    lam, gap, a = _gaps(series, x_max)
    s = np.cumsum(lam**p * gap ** (1 - p) * a**p)
    lo = float(lam[0]) if lam.size else 1.0
    x, q = _plateau(series, lam, s / lam, s[-1] if s.size else 0.0, x_max)
    return _report("szasz_3_3", x, q, lo, x_max, slack, f"p={p:g}")


def check_hl(series: SeriesSpec, p: float = 2.0, N_max: Optional[float] = None,
             slack: float = SLACK) -> ConditionReport:
    """Convergence of sum (lambda_n / gap_n)^(p-1) |c_n|^p.

    Partial sums of a positive series converge iff their per-decade
    increments die out.  ``fitted_exponent`` is the log-log slope of those
    increments over the last three decades: negative for a convergent
    power-law tail, 0 for logarithmic divergence, positive for power
    growth.  holds: slope < -slack; fails: slope > -slack/3.
    """
    if not p > 1:
        raise ValueError("p must exceed 1")
    x_max = _default_xmax(series, N_max)
    lam, gap, a = _gaps(series, x_max)
    terms = (lam / gap) ** (p - 1) * a**p
    ps = np.cumsum(terms)
    total = float(ps[-1]) if ps.size else 0.0
    lo = float(lam[0]) if lam.size else 1.0
    rng = (lo, x_max)
    if total == 0:
        return ConditionReport("hl_3_2", 0.0, 0.0, "holds", rng, f"p={p:g}")
    if not math.isfinite(total):
        return ConditionReport("hl_3_2", math.inf, math.nan, "fails", rng, f"p={p:g}")
    ends = x_max / 10.0 ** np.arange(0, 4)[::-1]
    ends = ends[ends >= lo]
    if ends.size < 3:
        return ConditionReport("hl_3_2", total, math.nan, "inconclusive", rng,
                               f"p={p:g}; fewer than two decades probed")

    def at(x):
        k = np.searchsorted(lam, x, side="right")
        return float(ps[k - 1]) if k > 0 else 0.0

    incs = np.array([at(ends[i + 1]) - at(ends[i]) for i in range(ends.size - 1)])
    mids = ends[1:]
    if incs[-1] == 0:
        return ConditionReport("hl_3_2", total, -math.inf, "holds", rng,
                               f"p={p:g}; partial sums constant over the last decade")
    keep = incs > 0
    if keep.sum() < 2:
        return ConditionReport("hl_3_2", total, math.nan, "inconclusive", rng, f"p={p:g}")
    slope, _ = np.polyfit(np.log(mids[keep]), np.log(incs[keep]), 1)
    slope = float(slope)
    if slope < -slack:
        verdict = "holds"
    elif slope > -slack / 3:
        verdict = "fails"
    else:
        verdict = "inconclusive"
    return ConditionReport("hl_3_2", total, slope, verdict, rng, f"p={p:g}")


CONDITION_IDS = ("T1_2_6", "T2_2_7", "rho_1_4", "moricz_1_5", "signed_1_6",
                 "ratio_3_1", "hl_3_2", "szasz_3_3")


def check_all(series: SeriesSpec, ids=None, p: float = 2.0) -> list:
    """Run the named checks (all by default); trig-only checks need series.trig."""
    ids = list(CONDITION_IDS if ids is None else ids)
    unknown = [i for i in ids if i not in CONDITION_IDS]
    if unknown:
        raise ValueError(f"unknown condition ids: {unknown}")
    out = []
    rho = None
    for cid in ids:
        if cid == "T1_2_6":
            out.append(check_T1(series))
        elif cid == "T2_2_7":
            out.append(check_T2(series))
        elif cid in ("rho_1_4", "moricz_1_5"):
            if series.trig is None:
                continue
            if rho is None:
                rho = check_rho(series.trig, N_max=_default_xmax(series, None))
            out.append(rho[0] if cid == "rho_1_4" else rho[1])
        elif cid == "signed_1_6":
            out.append(check_signed(series))
        elif cid == "ratio_3_1":
            out.append(check_ratio(series))
        elif cid == "hl_3_2":
            out.append(check_hl(series, p))
        else:
            out.append(check_szasz(series, p))
    return out
