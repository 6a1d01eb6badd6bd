"""Reference series with known summation behaviour.

``corpus_get`` returns shared instances, so coefficient arrays computed once
are reused by every method that touches the same entry.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .series import NodeSequence, SeriesSpec, TrigSeries, default_horizon, trig_to_series


def _sign(n):
    return np.where(np.asarray(n) % 2 == 0, 1.0, -1.0)


def _grandi(n):
    return _sign(n)


def _log2(n):
    nf = np.asarray(n, dtype=float)
    with np.errstate(divide="ignore"):
        out = -_sign(n) / nf
    return np.where(nf == 0, 0.0, out)


def _basel(n):
    nf = np.asarray(n, dtype=float)
    with np.errstate(divide="ignore"):
        out = 1.0 / (nf * nf)
    return np.where(nf == 0, 0.0, out)


def _abel_only(n):
    return _sign(n) * np.asarray(n, dtype=float)


def _zero(n):
    return np.zeros(np.shape(n))


def _saw_a(n):
    return np.zeros(np.shape(n))


def _saw_b(n):
    nf = np.asarray(n, dtype=float)
    with np.errstate(divide="ignore"):
        out = 1.0 / nf
    return np.where(nf == 0, 0.0, out)


def sawtooth(x0: float, name: str = "sawtooth", horizon=None) -> TrigSeries:
    """sum sin(n x)/n, the Fourier series of (pi - x)/2 on (0, 2 pi)."""
    return TrigSeries(_saw_a, _saw_b, x0, name=name, horizon=horizon, coeff_bound=(1.0, 0.0))


def _integer_series(name, coeffs, bound, horizon):
    return SeriesSpec(NodeSequence.integers(), coeffs, name=name, horizon=horizon,
                      coeff_bound=bound)


_BUILDERS = {
    "grandi": lambda h: _integer_series("grandi", _grandi, (1.0, 0.0), h),
    "log2": lambda h: _integer_series("log2", _log2, (1.0, 0.0), h),
    "basel": lambda h: _integer_series("basel", _basel, (1.0, 0.0), h),
    "abel_only": lambda h: _integer_series("abel_only", _abel_only, (1.0, 1.0), h),
    "sawtooth_quarter": lambda h: trig_to_series(sawtooth(math.pi / 2, "sawtooth_quarter", h)),
    "zero": lambda h: _integer_series("zero", _zero, (0.0, 0.0), h),
}

#: Closed-form sums where they exist (None: no ordinary or generalized value claimed).
KNOWN_VALUES = {
    "grandi": 0.5,
    "log2": math.log(2.0),
    "basel": math.pi**2 / 6,
    "abel_only": -0.25,
    "sawtooth_quarter": math.pi / 4,
    "zero": 0.0,
}


def corpus_names() -> list:
    return list(_BUILDERS)


def corpus_get(name: str, horizon=None) -> SeriesSpec:
    """Named reference series; raises KeyError for unknown names."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown corpus series {name!r}; known: {', '.join(_BUILDERS)}")
    return _cached(name, default_horizon() if horizon is None else int(horizon))


@lru_cache(maxsize=None)
def _cached(name, horizon):
    return _BUILDERS[name](horizon)


def power_law(exponent: float, alternating: bool = False, horizon=None, name=None) -> SeriesSpec:
    """c_0 = 0, c_n = (+-1)^n n^(-exponent) on the integers."""

    def coeffs(n):
        nf = np.asarray(n, dtype=float)
        with np.errstate(divide="ignore"):
            out = nf ** (-exponent)
        if alternating:
            out = out * _sign(n)
        return np.where(nf == 0, 0.0, out)

    tag = name or f"{'alt_' if alternating else ''}pow{exponent:g}"
    return SeriesSpec(NodeSequence.integers(), coeffs, name=tag, horizon=horizon,
                      coeff_bound=(1.0, max(0.0, -exponent)))


def geometric(ratio: complex, horizon=None) -> SeriesSpec:
    """c_n = ratio**n on the integers."""
    return SeriesSpec(NodeSequence.integers(), lambda n: ratio ** np.asarray(n, dtype=float),
                      name=f"geometric{ratio}", horizon=horizon,
                      coeff_bound=(1.0, 0.0) if abs(ratio) <= 1 else None)
