"""Per-parameter means of the summation methods and their traces.

Finite means (Riesz, Cesaro) are exact sums.  Infinite means (Abel, the
Young-kernel means, Lebesgue) are truncated; each value comes back as a
:class:`Sample` carrying its truncation bound and whether that bound is
below the requested tolerance.

Truncation policy, in order of preference:

1. analytic tail bound from the measured constant C in
   sum_{lambda <= x} lambda |c| <= C x, which gives
   sum_{lambda >= x} |c|/lambda <= 2C/x (route tag "lemma"), or for Abel means
   from a declared coefficient envelope |c_n| <= A max(1, lambda_n)^p;
2. empirical stabilisation: 20 consecutive partial sums within tol/10;
3. the horizon: the sum is cut at the last available node with a raised
   cosine taper over the upper half of the node range.

Only route 1 with the bound under tolerance yields ``certified=True``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import gammaincc
from scipy.special import gamma as gamma_fn

from .series import MethodInapplicableError, SeriesSpec, TrigSeries
from .young import YoungKernel

DEFAULT_TOL = 1e-9
_STABLE_RUN = 20
_SIDE_SPREAD = 1e-3


@dataclass(frozen=True)
class Sample:
    """One mean value at one parameter.

    ``route`` is one of exact | lemma | envelope | cauchy | horizon.
    ``side`` (Lebesgue means only) records how convergence of the
    formally integrated series was established: lemma | empirical | divergent.
    """

    param: float
    value: complex
    certified: bool
    bound: float
    n_terms: int
    route: str
    side: Optional[str] = None


@dataclass(frozen=True)
class Method:
    """A summation method tag with its order parameter."""

    name: str
    param: Optional[float] = None

    _NAMES = ("riesz", "cesaro", "abel", "gamma", "lebesgue")

    def __post_init__(self):
        if self.name not in self._NAMES:
            raise ValueError(f"unknown method {self.name!r}")
        p = self.param
        if self.name in ("riesz", "cesaro", "gamma"):
            if p is None:
                label = "kappa" if self.name == "gamma" else "beta"
                raise ValueError(f"method {self.name} needs {label}")
            if self.name == "riesz" and not p >= 0:
                raise ValueError("riesz needs beta >= 0")
            if self.name == "cesaro" and not p > 0:
                raise ValueError("cesaro needs beta > 0")
            if self.name == "gamma" and not p >= 1:
                raise ValueError("gamma means need kappa >= 1")
        elif p is not None:
            raise ValueError(f"method {self.name} takes no parameter")

    @property
    def direction(self) -> str:
        return "to-infinity" if self.name in ("riesz", "cesaro") else "to-zero"

    @property
    def label(self) -> str:
        return self.name if self.param is None else f"{self.name}[{self.param:g}]"


@dataclass(frozen=True)
class MeanTrace:
    """Samples of one method along a schedule approaching its limit point."""

    method: Method
    direction: str
    samples: tuple
    series_name: str = ""
    horizon: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        p = [s.param for s in self.samples]
        d = np.diff(p)
        ok = np.all(d > 0) if self.direction == "to-infinity" else np.all(d < 0)
        if not ok:
            raise ValueError(f"trace parameters not strictly monotone {self.direction}")

    @property
    def params(self) -> np.ndarray:
        return np.array([s.param for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples], dtype=complex)

    @property
    def certified(self) -> np.ndarray:
        return np.array([s.certified for s in self.samples], dtype=bool)

    def __len__(self):
        return len(self.samples)


def _exact(param, value, n):
    return Sample(float(param), complex(value), True, 0.0, int(n), "exact")


# --- finite means -----------------------------------------------------------

def riesz_mean(series: SeriesSpec, beta: float, x: float) -> complex:
    """sum_{lambda_n <= x} c_n (1 - lambda_n / x)^beta."""
    if not x > 0:
        raise ValueError("riesz_mean needs x > 0")
    if beta < 0:
        raise ValueError("beta must be >= 0")
    lam, c = series.terms_upto(x)
    if beta == 0:
        return complex(np.sum(c))
    w = (1.0 - lam / x) ** beta
    return complex(np.dot(w, c))


def cesaro_numbers(beta: float, m: int) -> np.ndarray:
    """A_0^beta .. A_m^beta via A_j = A_{j-1} (j + beta) / j."""
    j = np.arange(1, m + 1, dtype=float)
    return np.concatenate([[1.0], np.cumprod((j + beta) / j)])


def cesaro_mean(series: SeriesSpec, beta: float, N: int) -> complex:
    """(C, beta) mean sum_{n<=N} A_{N-n}^beta c_n / A_N^beta (integer nodes only)."""
    if not series.nodes.is_integers:
        raise MethodInapplicableError("Cesaro means need the nodes lambda_n = n")
    if not beta > 0:
        raise ValueError("cesaro needs beta > 0")
    N = int(N)
    if N < 0:
        raise ValueError("N must be >= 0")
    _, c = series.terms_upto(N)
    A = cesaro_numbers(beta, N)
    return complex(np.dot(A[::-1][: c.size], c) / A[N])


# --- tail machinery ---------------------------------------------------------

def lemma_constant(series: SeriesSpec) -> Optional[float]:
    """C with sum_{lambda_n <= x} lambda_n |c_n| <= C x, if the T1 check holds.

    Cached on the series; None when the check does not hold.
    """
    key = "lemma_C"
    if key not in series._cache:
        from .conditions import check_T1

        rep = check_T1(series)
        series._cache[key] = rep.measured_constant if rep.verdict == "holds" else None
    return series._cache[key]


def _moricz_constant(t: TrigSeries, series: SeriesSpec) -> Optional[float]:
    key = "moricz_C"
    if key not in series._cache:
        from .conditions import check_rho

        _, moricz = check_rho(t)
        series._cache[key] = moricz.measured_constant if moricz.verdict == "holds" else None
    return series._cache[key]


def _taper(lam: np.ndarray) -> np.ndarray:
    """Raised-cosine weights: 1 below half the last node, smoothly to 0 at it."""
    top = lam[-1]
    lo = top / 2
    t = np.clip((lam - lo) / max(top - lo, 1e-300), 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(np.pi * t))


def _truncated_sum(series, term_fn, needed_x, bound_at, tol):
    """Sum term_fn(lam, c) over the series.

    needed_x: node value beyond which the analytic tail is below tol, or None.
    bound_at(x): analytic bound on the tail beyond x, or None.
    Returns (value, certified, bound, n_terms, route).
    """
    H = series.horizon
    if series.terminates:
        lam, c = series.head(H)
        return complex(np.sum(term_fn(lam, c))), True, 0.0, H, "exact"
    last = series.last_node
    if needed_x is not None and needed_x < last:
        m = series.count_upto(needed_x)
        lam, c = series.head(m)
        val = complex(np.sum(term_fn(lam, c))) if m else 0j
        return val, True, float(bound_at(needed_x)), m, bound_at.route
    # no certifiable cut inside the horizon: look for stabilisation chunk by chunk
    start, size = 0, 4096
    total = 0j
    chunks = []
    while start < H:
        stop = min(H, start + size)
        lam, c = series.head(stop)
        terms = term_fn(lam[start:], c[start:])
        chunks.append(terms)
        ps = total + np.cumsum(terms)
        if ps.size >= _STABLE_RUN:
            tail = ps[-_STABLE_RUN:]
            spread = float(np.max(np.abs(tail - tail[-1])))
            if spread < tol / 10 and abs(terms[-1]) < tol / 10:
                bound = float(bound_at(float(lam[stop - 1]))) if bound_at else math.inf
                return complex(ps[-1]), False, bound, stop, "cauchy"
        total = complex(ps[-1]) if ps.size else total
        start, size = stop, size * 2
    lam, _ = series.head(H)
    val = complex(np.sum(np.concatenate(chunks) * _taper(lam)))
    bound = float(bound_at(last / 2)) if bound_at else math.inf
    return val, bound <= tol, bound, H, "horizon"


class _Bound:
    def __init__(self, fn, route):
        self.fn, self.route = fn, route

    def __call__(self, x):
        return self.fn(x)


def _solve_increasing(fn, tol, x0):
    """Smallest x >= x0 (to ~1%) with fn(x) <= tol, fn decreasing; None if beyond 1e300."""
    x = max(x0, 1.0)
    while fn(x) > tol:
        x *= 2
        if x > 1e300:
            return None
    lo, hi = x / 2, x
    if fn(lo) <= tol or lo < x0:
        return x
    while hi - lo > 0.01 * hi:
        mid = 0.5 * (lo + hi)
        if fn(mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi


def abel_mean(series: SeriesSpec, y: float, tol: float = DEFAULT_TOL) -> Sample:
    """sum c_n exp(-lambda_n y), truncated per the module policy."""
    if not y > 0:
        raise ValueError("abel_mean needs y > 0")

    def terms(lam, c):
        return c * np.exp(-lam * y)

    candidates = []
    C = lemma_constant(series) if not series.terminates else None
    if C is not None:
        D = 2.0 * C
        # sum_{lambda > x} |c| e^{-lambda y} <= x e^{-xy} T2(x) <= D e^{-xy}, x >= 1/y
        fn = lambda x: D * math.exp(-x * y) if x >= 1 / y else math.inf  # noqa: E731
        xs = max(1 / y, math.log(max(D, 1e-300) / tol) / y) if D > 0 else 1 / y
        candidates.append((xs, _Bound(fn, "lemma")))
    gap = series.nodes.min_gap
    if series.coeff_bound is not None and gap:
        A, p = series.coeff_bound
        p = float(p)
        lo = max(1.0 + gap, p / y + gap)

        def env(x, A=A, p=p, g=gap):
            if x < lo:
                return math.inf
            s = (x - g) * y
            return A / g * gammaincc(p + 1, s) * gamma_fn(p + 1) / y ** (p + 1) if A else 0.0

        xs = _solve_increasing(env, tol, lo)
        if xs is not None:
            candidates.append((xs, _Bound(env, "envelope")))
    if candidates:
        needed, bound = min(candidates, key=lambda t: t[0])
    else:
        needed, bound = None, None
    val, cert, b, n, route = _truncated_sum(series, terms, needed, bound, tol)
    return Sample(float(y), val, cert, b, n, route)


def gamma_mean(series: SeriesSpec, kappa: float, h: float, tol: float = DEFAULT_TOL,
               kernel: Optional[YoungKernel] = None) -> Sample:
    """sum c_n gamma_kappa(lambda_n h); lambda_n = 0 terms enter with weight 1."""
    if not h > 0:
        raise ValueError("gamma_mean needs h > 0")
    if not kappa >= 1:
        raise ValueError("gamma_mean needs kappa >= 1")
    kern = kernel or YoungKernel(float(kappa))

    def terms(lam, c):
        return c * kern(lam * h)

    needed = bound = None
    C = lemma_constant(series) if not series.terminates else None
    if C is not None:
        D = 2.0 * C
        K = kern.tail_constant
        bound = _Bound(lambda x: K * D / (h * x) if x > 0 else math.inf, "lemma")
        needed = K * D / (h * tol) if D > 0 else 0.0
    val, cert, b, n, route = _truncated_sum(series, terms, needed, bound, tol)
    return Sample(float(h), val, cert, b, n, route)


def _side_route(series: SeriesSpec, h: float, lemma_ok: bool) -> str:
    """How convergence of sum_{lambda>0} c_n e^{i lambda h}/(lambda h) is established."""
    if lemma_ok or series.terminates:
        return "lemma"
    lam, c = series.head(series.horizon)
    pos = lam > 0
    ps = np.cumsum(c[pos] * np.exp(1j * lam[pos] * h) / (lam[pos] * h))
    if ps.size < 8:
        return "empirical"
    late = ps[ps.size // 2:]
    spread = float(np.max(np.abs(late - late[-1])))
    return "empirical" if spread < _SIDE_SPREAD else "divergent"


def lebesgue_general_mean(series: SeriesSpec, h: float, tol: float = DEFAULT_TOL) -> Sample:
    """(L, {lambda_n}) mean: the kappa = 1 Young mean plus the side condition."""
    s = gamma_mean(series, 1.0, h, tol)
    side = _side_route(series, h, lemma_constant(series) is not None)
    return Sample(s.param, s.value, s.certified, s.bound, s.n_terms, s.route, side)


def lebesgue_mean(t: TrigSeries, h: float, tol: float = DEFAULT_TOL) -> Sample:
    """Symmetric difference quotient of the integrated trigonometric series.

    a_0/2 + sum (a_n cos n x0 + b_n sin n x0) sin(nh)/(nh); even in h.
    The side condition (convergence of the integrated series near x0) is
    certified when sum_{n<=N} n rho_n = O(N) holds, since then sum rho_n / n
    converges and the integrated series converges absolutely everywhere.
    """
    if h == 0:
        raise ValueError("lebesgue_mean needs h != 0")
    series = t.series
    s = gamma_mean(series, 1.0, abs(h), tol)
    side = _side_route(series, abs(h), _moricz_constant(t, series) is not None)
    return Sample(float(abs(h)), s.value, s.certified, s.bound, s.n_terms, s.route, side)


def evaluate(method: Method, series: SeriesSpec, param: float, tol: float = DEFAULT_TOL) -> Sample:
    """One sample of ``method`` at ``param``."""
    if method.name == "riesz":
        n = series.count_upto(param)
        return _exact(param, riesz_mean(series, method.param, param), n)
    if method.name == "cesaro":
        N = int(param)
        return _exact(N, cesaro_mean(series, method.param, N), N + 1)
    if method.name == "abel":
        return abel_mean(series, param, tol)
    if method.name == "gamma":
        return gamma_mean(series, method.param, param, tol)
    if series.trig is not None:
        return lebesgue_mean(series.trig, param, tol)
    return lebesgue_general_mean(series, param, tol)


def trace(method: Method, series: SeriesSpec, schedule, tol: float = DEFAULT_TOL,
          workers: int = 1) -> MeanTrace:
    """Evaluate ``method`` along ``schedule``; samples stay in schedule order."""
    sched = [float(p) for p in schedule]
    if not sched:
        raise ValueError("empty schedule")
    if method.name == "cesaro":
        if not series.nodes.is_integers:
            raise MethodInapplicableError("Cesaro means need the nodes lambda_n = n")
        sched = [float(int(p)) for p in sched]
    d = np.diff(sched)
    if method.direction == "to-infinity":
        if not np.all(d > 0):
            raise ValueError("schedule must increase strictly for x -> infinity methods")
    elif not (np.all(d < 0) and sched[-1] > 0):
        raise ValueError("schedule must decrease strictly towards 0+")
    if method.name in ("gamma", "lebesgue", "abel"):
        lemma_constant(series)  # fill the cache before any fan-out
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            samples = list(pool.map(lambda p: evaluate(method, series, p, tol), sched))
    else:
        samples = [evaluate(method, series, p, tol) for p in sched]
    return MeanTrace(method, method.direction, tuple(samples), series.name, series.horizon)
