"""JSON series files and the ``builtin:ID`` shorthand.

File layout::

    {"name": "my-series",
     "nodes": {"kind": "integers"} | {"kind": "explicit", "values": [0, 1.5, ...]},
     "coeffs": {"kind": "builtin", "id": "grandi"}
             | {"kind": "inline", "values": [[re, im], ...]}
             | {"kind": "trig", "a": [...], "b": [...], "x0": 1.0}}

Inline and trig coefficient lists are finite, so those series terminate.
Inline values may also be plain reals.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .corpus import corpus_get
from .series import NodeSequence, SeriesSpec, TrigSeries, from_values, trig_to_series


class SpecError(ValueError):
    """Malformed series description."""


def _complex_list(values):
    out = []
    for v in values:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise SpecError(f"complex coefficient must be [re, im], got {v!r}")
            out.append(complex(float(v[0]), float(v[1])))
        elif isinstance(v, (int, float)) and not isinstance(v, bool):
            out.append(complex(float(v)))
        else:
            raise SpecError(f"bad coefficient {v!r}")
    if not out:
        raise SpecError("empty coefficient list")
    return out


def _finite_provider(values):
    arr = np.asarray(values, dtype=float)

    def provider(n, _v=arr):
        n = np.asarray(n)
        out = np.zeros(n.shape)
        inside = n < _v.size
        out[inside] = _v[n[inside]]
        return out

    return provider


def series_from_dict(doc: dict) -> SeriesSpec:
    if not isinstance(doc, dict):
        raise SpecError("series file must hold a JSON object")
    name = str(doc.get("name", "series"))
    nodes = doc.get("nodes", {"kind": "integers"})
    coeffs = doc.get("coeffs")
    if not isinstance(nodes, dict) or nodes.get("kind") not in ("integers", "explicit"):
        raise SpecError("nodes.kind must be 'integers' or 'explicit'")
    if not isinstance(coeffs, dict) or "kind" not in coeffs:
        raise SpecError("coeffs must be an object with a 'kind'")
    explicit = nodes.get("values") if nodes["kind"] == "explicit" else None
    if nodes["kind"] == "explicit" and not isinstance(explicit, list):
        raise SpecError("explicit nodes need a 'values' list")
    kind = coeffs["kind"]
    try:
        if kind == "builtin":
            base = corpus_get(str(coeffs.get("id")))
            if explicit is None:
                return base
            ns = NodeSequence.explicit(explicit)
            return SeriesSpec(ns, base.coeffs, name=name, coeff_bound=base.coeff_bound)
        if kind == "inline":
            return from_values(_complex_list(coeffs.get("values", [])), explicit, name)
        if kind == "trig":
            if explicit is not None:
                raise SpecError("trig coefficients need integer nodes")
            a = [float(v) for v in coeffs.get("a", [])]
            b = [float(v) for v in coeffs.get("b", [])]
            size = max(len(a), len(b))
            if size == 0:
                raise SpecError("trig coefficients need a non-empty 'a' or 'b'")
            if "x0" not in coeffs:
                raise SpecError("trig coefficients need 'x0'")
            amax = max([abs(v) for v in a + b])
            t = TrigSeries(_finite_provider(a), _finite_provider(b), float(coeffs["x0"]), name=name,
                           horizon=size, terminates=True, coeff_bound=(amax, 0.0))
            return trig_to_series(t)
    except KeyError as exc:
        raise SpecError(str(exc.args[0])) from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc)) from None
    raise SpecError(f"unknown coeffs.kind {kind!r}")


def load_series(ref: str) -> SeriesSpec:
    """``builtin:ID`` or a path to a JSON series file."""
    if ref.startswith("builtin:"):
        try:
            return corpus_get(ref.split(":", 1)[1])
        except KeyError as exc:
            raise SpecError(str(exc.args[0])) from None
    path = Path(ref)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise SpecError(f"cannot read {ref}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{ref}: invalid JSON ({exc.msg})") from None
    return series_from_dict(doc)
