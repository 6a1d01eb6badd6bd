"""Series, node sequences and partial sums.

A series is a pair of vectorised providers: ``nodes(n) -> lambda_n`` and
``coeffs(n) -> c_n``, both mapping integer index arrays to value arrays.
Every summation method in the package consumes a :class:`SeriesSpec`.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

Provider = Callable[[np.ndarray], np.ndarray]

DEFAULT_HORIZON = 10**6


class HorizonError(RuntimeError):
    """Coefficient horizon exhausted before the requested node range was covered."""


class MethodInapplicableError(ValueError):
    """The requested summation method does not apply to this series."""


def default_horizon() -> int:
    """Coefficient horizon, overridable through ``SUMMAKIT_HORIZON``."""
    raw = os.environ.get("SUMMAKIT_HORIZON")
    if raw is None or raw.strip() == "":
        return DEFAULT_HORIZON
    value = int(float(raw))
    if value < 2:
        raise ValueError(f"SUMMAKIT_HORIZON must be >= 2, got {raw!r}")
    return value


def _integers(n):
    return np.asarray(n, dtype=float)


@dataclass(frozen=True, eq=False)
class NodeSequence:
    """Strictly increasing, non-negative nodes lambda_n tending to infinity.

    Unboundedness cannot be decided from finitely many values, so the caller
    must assert it with ``declared_unbounded``; the constructor then probes
    the first ``probe`` nodes for sign, strict monotonicity and growth.
    """

    provider: Provider
    declared_unbounded: bool = True
    kind: str = "custom"
    probe: int = 4096
    min_gap: Optional[float] = None
    size: Optional[int] = None  # finite explicit lists only

    def __post_init__(self):
        if not self.declared_unbounded:
            raise ValueError("node sequence must be declared unbounded")
        m = self.probe if self.size is None else min(self.probe, self.size)
        lam = np.asarray(self.provider(np.arange(m)), dtype=float)
        if lam.shape != (m,) or not np.all(np.isfinite(lam)):
            raise ValueError("node provider must return finite values of matching shape")
        if lam[0] < 0:
            raise ValueError(f"lambda_0 must be non-negative, got {lam[0]}")
        if m > 1 and not np.all(np.diff(lam) > 0):
            bad = int(np.argmin(np.diff(lam) > 0))
            raise ValueError(f"nodes must be strictly increasing (fails at n={bad + 1})")
        if self.size is None and lam[-1] <= lam[0] + 1.0:
            raise ValueError(
                f"nodes do not grow within the probe horizon "
                f"(lambda_{m - 1} = {lam[-1]}); cannot accept as unbounded"
            )

    def __call__(self, n) -> np.ndarray:
        return np.asarray(self.provider(np.asarray(n)), dtype=float)

    @property
    def is_integers(self) -> bool:
        return self.kind == "integers"

    @classmethod
    def integers(cls) -> "NodeSequence":
        return cls(_integers, kind="integers", min_gap=1.0)

    @classmethod
    def explicit(cls, values) -> "NodeSequence":
        vals = np.array(values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("explicit nodes must be a non-empty 1-d list")

        def provider(n, _v=vals):
            n = np.asarray(n)
            if n.size and n.max() >= _v.size:
                raise HorizonError(f"explicit node list has only {_v.size} entries")
            return _v[n]

        gap = float(np.min(np.diff(vals))) if vals.size > 1 else None
        return cls(provider, kind="explicit", min_gap=gap, size=int(vals.size))


@dataclass(frozen=True, eq=False)
class TrigSeries:
    """Formal trigonometric series a_0/2 + sum (a_n cos nx + b_n sin nx) at x0.

    ``a`` and ``b`` are vectorised providers over n >= 0; ``b(0)`` is ignored.
    """

    a: Provider
    b: Provider
    x0: float
    name: str = "trig"
    horizon: Optional[int] = None
    terminates: bool = False
    coeff_bound: Optional[tuple] = None

    def coefficients(self, n) -> np.ndarray:
        n = np.asarray(n)
        a = np.asarray(self.a(n), dtype=float)
        b = np.asarray(self.b(n), dtype=float)
        nf = n.astype(float)
        c = a * np.cos(nf * self.x0) + b * np.sin(nf * self.x0)
        return np.where(n == 0, a / 2.0, c)

    def rho(self, n) -> np.ndarray:
        n = np.asarray(n)
        a = np.asarray(self.a(n), dtype=float)
        b = np.asarray(self.b(n), dtype=float)
        return np.where(n == 0, np.abs(a) / 2.0, np.hypot(a, b))

    @cached_property
    def series(self) -> "SeriesSpec":
        return trig_to_series(self)


@dataclass(frozen=True, eq=False)
class SeriesSpec:
    """A series sum c_n over nodes lambda_n.

    ``horizon`` is the number of indices available (None picks the
    environment default).  ``terminates`` declares c_n = 0 from the horizon
    on, which makes every sum finite.  ``coeff_bound = (A, p)`` declares
    |c_n| <= A * max(1, lambda_n)**p and feeds the Abel tail bound.
    """

    nodes: NodeSequence
    coeffs: Provider
    name: str = "series"
    horizon: Optional[int] = None
    terminates: bool = False
    coeff_bound: Optional[tuple] = None
    trig: Optional[TrigSeries] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.horizon is None:
            object.__setattr__(self, "horizon", default_horizon())
        if self.nodes.size is not None and self.horizon > self.nodes.size:
            object.__setattr__(self, "horizon", self.nodes.size)
            if not self.terminates:
                object.__setattr__(self, "terminates", True)
        if self.horizon < 1:
            raise ValueError("horizon must be positive")

    def head(self, m: int):
        """First ``m`` nodes and coefficients as (float array, complex array)."""
        if m > self.horizon:
            raise HorizonError(f"{self.name}: {m} terms requested, horizon is {self.horizon}")
        cached = self._cache.get("head")
        if cached is None or cached[0].size < m:
            size = m if cached is None else min(self.horizon, max(m, 2 * cached[0].size))
            idx = np.arange(size)
            lam = self.nodes(idx)
            c = np.asarray(self.coeffs(idx), dtype=complex)
            if c.shape != (size,):
                raise ValueError("coefficient provider returned wrong shape")
            lam.setflags(write=False)
            c.setflags(write=False)
            cached = (lam, c)
            self._cache["head"] = cached
        return cached[0][:m], cached[1][:m]

    @property
    def last_node(self) -> float:
        """Largest node inside the horizon."""
        return float(self.nodes(np.array([self.horizon - 1]))[0])

    def count_upto(self, x: float) -> int:
        """Number of indices with lambda_n <= x."""
        if not math.isfinite(x):
            raise ValueError("x must be finite")
        if x > self.last_node or (x == self.last_node and not self.terminates):
            if not self.terminates:
                raise HorizonError(
                    f"{self.name}: horizon {self.horizon} ends at lambda={self.last_node:g} <= x={x:g}"
                )
            return self.horizon
        if self.nodes.is_integers:
            return 0 if x < 0 else int(math.floor(x)) + 1
        m = min(self.horizon, 1024)
        while True:
            lam, _ = self.head(m)
            if lam[-1] > x or m == self.horizon:
                return int(np.searchsorted(lam, x, side="right"))
            m = min(self.horizon, 4 * m)

    def terms_upto(self, x: float):
        return self.head(self.count_upto(x))

    @property
    def rho(self) -> Optional[Provider]:
        return None if self.trig is None else self.trig.rho


def partial_sum(series: SeriesSpec, x: float) -> complex:
    """S(x): sum of c_n over lambda_n <= x (inclusive boundary)."""
    _, c = series.terms_upto(x)
    return complex(np.sum(c)) if c.size else 0j


@dataclass(frozen=True)
class PartialSumTable:
    """Right-continuous step data of S(x) = sum_{lambda_n <= x} c_n."""

    breakpoints: np.ndarray
    sums: np.ndarray

    @classmethod
    def from_series(cls, series: SeriesSpec, x_max: float) -> "PartialSumTable":
        lam, c = series.terms_upto(x_max)
        return cls(np.array(lam), np.cumsum(c))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.breakpoints, x, side="right")
        padded = np.concatenate([[0j], self.sums])
        return padded[idx]


def trig_to_series(t: TrigSeries) -> SeriesSpec:
    """The numeric series c_0 = a_0/2, c_n = a_n cos(n x0) + b_n sin(n x0) on lambda_n = n."""
    return SeriesSpec(
        nodes=NodeSequence.integers(),
        coeffs=t.coefficients,
        name=t.name,
        horizon=t.horizon,
        terminates=t.terminates,
        coeff_bound=t.coeff_bound,
        trig=t,
    )


def from_values(values, nodes=None, name: str = "finite") -> SeriesSpec:
    """Terminating series from explicit coefficients (and optionally nodes)."""
    vals = np.asarray(values, dtype=complex)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("values must be a non-empty 1-d sequence")
    if nodes is None:
        ns = NodeSequence.integers()
    else:
        ns = NodeSequence.explicit(nodes)
        if ns.size != vals.size:
            raise ValueError(f"{ns.size} nodes for {vals.size} coefficients")

    def coeffs(n, _v=vals):
        n = np.asarray(n)
        out = np.zeros(n.shape, dtype=complex)
        inside = n < _v.size
        out[inside] = _v[n[inside]]
        return out

    amax = float(np.max(np.abs(vals)))
    return SeriesSpec(ns, coeffs, name=name, horizon=int(vals.size), terminates=True,
                      coeff_bound=(amax, 0.0))
