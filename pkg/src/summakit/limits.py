"""Limits of mean traces: Aitken extrapolation and the end-to-end ``summate``.

The convergence verdict is a heuristic.  A trace is declared converged when
its extrapolated value has stopped moving (error estimate under the
acceptance tolerance, default 1e-4) over at least four samples.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .series import HorizonError, MethodInapplicableError, SeriesSpec
from .summators import DEFAULT_TOL, MeanTrace, Method, evaluate, trace

ACCEPT_TOL = 1e-4
_EPS = np.finfo(float).eps
_MIN_CONVERGED = 4


@dataclass(frozen=True)
class LimitEstimate:
    """Extrapolated limit of a trace.

    ``certified``: every sample used carried a truncation bound under the
    per-sample tolerance.  ``side_certified`` applies to Lebesgue means
    only: the side condition was established analytically for every sample.
    """

    value: complex
    error_estimate: float
    converged: bool
    n_samples_used: int
    accelerator: str
    certified: bool = True
    side_certified: Optional[bool] = None
    diagnostic: str = ""
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["value"] = [self.value.real, self.value.imag]
        return d


def _aitken(v: np.ndarray, scale: float):
    """Aitken values for every consecutive triple (None where degenerate)."""
    out = []
    for j in range(2, v.size):
        d1 = v[j - 1] - v[j - 2]
        d2 = v[j] - v[j - 1]
        dd = d2 - d1
        if abs(dd) <= 1e3 * _EPS * scale:
            out.append(None)
        else:
            out.append(v[j] - d2 * d2 / dd)
    return out


def extrapolate_values(values: Sequence[complex], tol: float = ACCEPT_TOL):
    """(value, error, accelerator) for a plain sequence; see :func:`extrapolate`."""
    v = np.asarray(values, dtype=complex)
    if v.size < 2:
        raise ValueError("extrapolation needs at least 2 samples")
    raw_step = float(abs(v[-1] - v[-2]))
    if v.size >= 3:
        scale = float(np.max(np.abs(v)))
        acc = _aitken(v, scale)
        d1, d2 = v[-2] - v[-3], v[-1] - v[-2]
        contracting = abs(d1) > 0 and abs(d2) < abs(d1)
        if acc[-1] is not None and contracting:
            if len(acc) >= 2 and acc[-2] is not None:
                return complex(acc[-1]), float(abs(acc[-1] - acc[-2])), "aitken"
            if len(acc) == 1:
                return complex(acc[-1]), raw_step, "aitken"
    return complex(v[-1]), raw_step, "raw"


def extrapolate(tr: MeanTrace, tol: float = ACCEPT_TOL) -> LimitEstimate:
    """Limit of ``tr`` by Aitken's delta-squared process.

    Certified samples are used when at least two exist; otherwise all
    samples are used and the estimate is flagged uncertified.  Aitken is
    accepted only if the last three samples contract (|d2| < |d1|), so an
    oscillating trace such as +1, -1, +1, ... is never accelerated into a
    spurious limit.  The error estimate is the change between the last
    two accelerated values, or the last raw step when falling back.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if len(tr.samples) < 2:
        raise ValueError("extrapolation needs at least 2 samples")
    cert = tr.certified
    samples = [s for s in tr.samples if s.certified] if cert.sum() >= 2 else list(tr.samples)
    certified = all(s.certified for s in samples)
    sides = [s.side for s in samples if s.side is not None]
    side_cert = (all(s == "lemma" for s in sides) if sides else None)
    v = np.array([s.value for s in samples], dtype=complex)
    finite = np.isfinite(v)
    if not np.all(finite):
        good = v[finite]
        value = complex(good[-1]) if good.size else complex(math.nan, 0.0)
        return LimitEstimate(value, math.inf, False, int(good.size), "raw", certified, side_cert,
                             "non-finite sample values")
    value, err, acc = extrapolate_values(v, tol)
    ok = math.isfinite(value.real) and math.isfinite(value.imag)
    converged = bool(ok and err <= tol and v.size >= _MIN_CONVERGED)
    diag = "" if ok else "non-finite extrapolated value"
    return LimitEstimate(value, err, converged, int(v.size), acc, certified, side_cert, diag)


@dataclass(frozen=True)
class SumConfig:
    """Settings for :func:`summate`.

    ``schedule`` overrides the default geometric schedule for the method's
    direction.  ``resolution``: a to-zero sample at parameter p is kept only
    if p times the last node reaches this value, so that the kernel has
    decayed well inside the available coefficients.
    """

    schedule: Optional[tuple] = None
    tol: float = ACCEPT_TOL
    sample_tol: float = DEFAULT_TOL
    workers: int = 1
    window: int = 16
    resolution: Optional[float] = None


def geometric_schedule(start: float, ratio: float, count: int) -> list:
    if not (start > 0 and ratio > 0 and ratio != 1 and count >= 1):
        raise ValueError("geometric schedule needs start > 0, ratio > 0 (not 1), count >= 1")
    return [start * ratio**k for k in range(int(count))]


def default_schedule(method: Method) -> list:
    if method.direction == "to-zero":
        return geometric_schedule(0.5, 0.5, 24)
    return geometric_schedule(8.0, 2.0, 18)


_RESOLUTION = {"gamma": 1000.0, "lebesgue": 1000.0, "abel": 40.0}


def _fit_schedule(method: Method, series: SeriesSpec, sched, resolution):
    if series.terminates:
        return sched
    last = series.last_node
    if method.direction == "to-infinity":
        return [p for p in sched if p < last]
    res = _RESOLUTION[method.name] if resolution is None else resolution
    return [p for p in sched if p * last >= res]


def summate(series: SeriesSpec, method: Method, config: Optional[SumConfig] = None) -> LimitEstimate:
    """Trace ``method`` along a schedule and extrapolate to the limit.

    x -> infinity methods are also probed at the 16 integer offsets just
    below the last schedule point.  Means of oscillating series can look
    constant along a geometric schedule of even points, and the spread of
    this window exposes the oscillation.
    """
    cfg = config or SumConfig()
    if method.name == "cesaro" and not series.nodes.is_integers:
        raise MethodInapplicableError("Cesaro means need the nodes lambda_n = n")
    sched = list(cfg.schedule) if cfg.schedule is not None else default_schedule(method)
    requested = len(sched)
    sched = _fit_schedule(method, series, sched, cfg.resolution)
    if len(sched) < 2:
        raise HorizonError(
            f"{series.name}: only {len(sched)} of {requested} schedule points resolvable "
            f"within horizon {series.horizon}"
        )
    tr = trace(method, series, sched, cfg.sample_tol, cfg.workers)
    est = extrapolate(tr, cfg.tol)
    meta = {
        "series": series.name,
        "method": method.label,
        "horizon": series.horizon,
        "schedule": [float(p) for p in sched],
        "schedule_dropped": requested - len(sched),
        "routes": sorted({s.route for s in tr.samples}),
    }
    err, converged = est.error_estimate, est.converged
    if method.direction == "to-infinity" and cfg.window > 0:
        x_last = sched[-1]
        probes = [x_last - j for j in range(1, cfg.window + 1) if x_last - j > sched[-2]]
        vals = [evaluate(method, series, p, cfg.sample_tol).value for p in probes]
        last_val = tr.samples[-1].value
        spread = max((abs(v - last_val) for v in vals), default=0.0)
        meta["window_spread"] = float(spread)
        if spread > err:
            err = float(spread)
            converged = bool(converged and err <= cfg.tol)
    return LimitEstimate(est.value, err, converged, est.n_samples_used, est.accelerator,
                         est.certified, est.side_certified, est.diagnostic, meta)
