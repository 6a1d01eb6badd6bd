"""Young functions: Cesaro integral means of cos.

    gamma_k(x) = k * int_0^1 (1 - u)^(k-1) cos(x u) du,   gamma_0(x) = cos x.

Three evaluation paths exist:

* closed forms (sin x / x, squared half-angle sinc, and the Taylor remainder
  formula for every integer order),
* panel Gauss quadrature, one panel per half period of cos(x u), with a
  Gauss-Jacobi rule on the panel touching the (1 - u)^(k-1) endpoint,
* a steepest-descent contour rule for large x, used only by the vectorised
  evaluator; its cost does not grow with x.

``young_eval`` is the reference scalar path; ``YoungKernel.__call__`` is the
vectorised evaluator that the summators feed with up to ~1e6 arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import roots_jacobi, roots_laguerre, roots_legendre


class QuadratureError(RuntimeError):
    """Quadrature did not reach the requested absolute tolerance."""


@lru_cache(maxsize=None)
def _legendre(q):
    return roots_legendre(q)


@lru_cache(maxsize=None)
def _jacobi(q, alpha, beta):
    return roots_jacobi(q, alpha, beta)


@lru_cache(maxsize=None)
def _laguerre(q):
    return roots_laguerre(q)


@dataclass(frozen=True)
class YoungKernel:
    """Young function of order ``kappa`` with its quadrature settings."""

    kappa: float
    order: int = 20
    tol: float = 1e-12

    def __post_init__(self):
        if not (self.kappa >= 0 and math.isfinite(self.kappa)):
            raise ValueError(f"kappa must be a finite non-negative number, got {self.kappa}")

    @property
    def is_integer(self) -> bool:
        return float(self.kappa).is_integer()

    @property
    def tail_constant(self) -> float:
        """K with |gamma_k(x)| <= K / x for all x > 0 (valid for kappa >= 1).

        Integrating by parts once gives x gamma_k(x) = k (k - 1) int (1-u)^(k-2) sin(xu) du
        for k > 1, hence |x gamma_k(x)| <= k; for k = 1 it is |sin x| <= 1.
        """
        if self.kappa < 1:
            raise ValueError("no O(1/x) bound for kappa < 1")
        return float(self.kappa)

    def __call__(self, x):
        x = np.abs(np.asarray(x, dtype=float))
        k = float(self.kappa)
        if self.is_integer:
            return _closed_integer(int(k), x)
        out = np.empty_like(x)
        small = x < _CONTOUR_SWITCH
        if np.any(small):
            out[small] = _panel_fixed(k, x[small], self.order)
        if np.any(~small):
            out[~small] = _contour(k, x[~small])
        out[x == 0] = 1.0
        return out


_CONTOUR_SWITCH = 8.0


def _closed_integer(k: int, x: np.ndarray) -> np.ndarray:
    """Exact gamma_k for integer k, vectorised.

    gamma_k(x) = k! x^-k Re[(e^{ix} - sum_{j<k} (ix)^j / j!) / i^k]
               = k! sum_m (-1)^m x^(2m) / (k + 2m)!
    The power series is used below x = k + 2 to avoid cancellation.
    """
    if k == 0:
        return np.cos(x)
    if k == 1:
        return np.sinc(x / np.pi)
    if k == 2:
        s = np.sinc(x / (2 * np.pi))
        return s * s
    out = np.empty_like(x)
    small = x < k + 2
    xs = x[small]
    if xs.size:
        acc = np.zeros_like(xs)
        term = np.ones_like(xs)  # k!/(k+2m)! * x^(2m), m = 0
        x2 = xs * xs
        for m in range(60):
            acc += term if m % 2 == 0 else -term
            term = term * x2 / ((k + 2 * m + 1) * (k + 2 * m + 2))
        out[small] = acc
    xl = x[~small]
    if xl.size:
        z = 1j * xl
        poly = np.zeros_like(z)
        t = np.ones_like(z)
        for j in range(k):
            poly += t
            t = t * z / (j + 1)
        rem = np.exp(z) - poly
        # Re[rem / i^k] without a complex division
        part = (rem.real, rem.imag, -rem.real, -rem.imag)[k % 4]
        out[~small] = math.factorial(k) * part / xl**k
    return out


def _panel_fixed(k, x, q):
    """Three equal panels on [0, 1]; exact for x < 8 at q = 20 (each panel under pi).

    The endpoint panel is integrated by parts,
    k int_a^1 (1-u)^(k-1) cos(xu) du = (1-a)^k cos(xa) - x int_a^1 (1-u)^k sin(xu) du,
    so its Jacobi weight (1-u)^k stays integrable as k -> 0.
    """
    t, w = _legendre(q)
    tj, wj = _jacobi(q, k, 0.0)
    edges = np.linspace(0.0, 1.0, 4)
    u_parts, w_parts = [], []
    for a, b in zip(edges[:-2], edges[1:-1]):
        u = a + (b - a) * (t + 1) / 2
        u_parts.append(u)
        w_parts.append((b - a) / 2 * w * (1 - u) ** (k - 1))
    u = np.concatenate(u_parts)
    wt = np.concatenate(w_parts) * k
    a = edges[-2]
    uj = a + (1 - a) * (tj + 1) / 2
    wj = ((1 - a) / 2) ** (k + 1) * wj
    out = np.empty_like(x)
    for s in range(0, x.size, 8192):
        xs = x[s:s + 8192]
        out[s:s + 8192] = (np.cos(np.outer(xs, u)) @ wt + (1 - a) ** k * np.cos(xs * a)
                           - xs * (np.sin(np.outer(xs, uj)) @ wj))
    return out


def _contour(k, x, q=40):
    """Deform [0, 1] into two vertical rays: int_0^{i inf} - int_1^{1 + i inf}.

    The ray from u = 1 is a generalised Gauss-Laguerre integral with a closed
    form; the ray from u = 0 has a smooth integrand handled by Gauss-Laguerre.
    """
    t, w = _laguerre(q)
    out = np.empty_like(x)
    for s in range(0, x.size, 16384):
        xs = x[s:s + 16384]
        ray0 = ((1 - 1j * np.outer(1 / xs, t)) ** (k - 1)) @ w * (1j * k / xs)
        ray1 = gamma_fn(k + 1) * np.exp(1j * xs) * 1j * (-1j) ** (k - 1) * xs ** (-k)
        out[s:s + 16384] = (ray0 - ray1).real
    return out


def young_quad(kappa: float, x: float, order: int = 20) -> float:
    """gamma_kappa(x) by panel quadrature, ceil(x/pi) panels on [0, 1]."""
    if kappa == 0:
        return math.cos(x)
    x = abs(float(x))
    panels = max(1, math.ceil(x / math.pi))
    t, w = _legendre(order)
    tj, wj = _jacobi(order, kappa, 0.0)
    width = 1.0 / panels
    total = 0.0
    if panels > 1:
        a = np.arange(panels - 1) * width
        u = (a[:, None] + width * (t[None, :] + 1) / 2).ravel()
        total += kappa * width / 2 * np.sum(np.tile(w, panels - 1) * (1 - u) ** (kappa - 1) * np.cos(x * u))
    # endpoint panel by parts, as in _panel_fixed
    a = 1.0 - width
    u = a + width * (tj + 1) / 2
    total += width**kappa * math.cos(x * a) - x * (width / 2) ** (kappa + 1) * np.sum(wj * np.sin(x * u))
    return float(total)


def young_eval(kernel: YoungKernel, x):
    """gamma_kappa(x) for x >= 0, scalar or array.

    Closed forms for kappa in {0, 1, 2}; otherwise panel quadrature whose
    error, estimated by raising the Gauss order, must stay below
    ``kernel.tol``.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("young_eval needs x >= 0")
    k = kernel.kappa
    if k in (0, 1, 2):
        out = _closed_integer(int(k), arr.ravel()).reshape(arr.shape)
        return float(out) if out.ndim == 0 else out
    flat = arr.ravel()
    res = np.empty_like(flat)
    for i, xi in enumerate(flat):
        if xi == 0:
            res[i] = 1.0
            continue
        lo = young_quad(k, xi, kernel.order)
        hi = young_quad(k, xi, kernel.order + 10)
        if abs(hi - lo) > kernel.tol:
            raise QuadratureError(
                f"gamma_{k}({xi}): quadrature disagreement {abs(hi - lo):.3g} > tol {kernel.tol:g}"
            )
        res[i] = hi
    res = res.reshape(arr.shape)
    return float(res) if res.ndim == 0 else res


def _weighted_integral(f, x, alpha, beta, order=24):
    """int_0^x (x - t)^alpha t^beta f(t) dt with Jacobi rules at both ends."""
    panels = max(1, math.ceil(x / math.pi))
    width = x / panels
    total = 0.0
    for p in range(panels):
        a, b = p * width, (p + 1) * width
        first, last = p == 0, p == panels - 1
        ja = alpha if last else 0.0
        jb = beta if first else 0.0
        s, w = _jacobi(order, ja, jb)
        t = a + width * (s + 1) / 2
        # Jacobi weight covers (b - t)^ja (t - a)^jb up to the (width/2) scaling
        scale = (width / 2) ** (1 + ja + jb)
        g = f(t)
        if not last:
            g = g * (x - t) ** alpha
        if not first:
            g = g * t**beta
        total += scale * float(np.sum(w * g))
    return total


def dilation_check(kappa: float, tau: float, x: float) -> float:
    """|LHS - RHS| of the order-raising identity for Young functions

        Gamma(k+1) x^t gamma_t(x) = Gamma(t+1)/Gamma(t-k) int_0^x (x-s)^(t-k-1) s^k gamma_k(s) ds.

    The left side uses ``young_eval`` at order tau, the right side integrates
    ``young_eval`` at order kappa.
    """
    if not tau > kappa >= 0:
        raise ValueError("need tau > kappa >= 0")
    if not x > 0:
        raise ValueError("need x > 0")
    lhs = math.gamma(kappa + 1) * x**tau * young_eval(YoungKernel(tau), x)
    kern = YoungKernel(kappa)
    integral = _weighted_integral(lambda t: young_eval(kern, t), x, tau - kappa - 1.0, kappa)
    rhs = math.gamma(tau + 1) / math.gamma(tau - kappa) * integral
    return abs(lhs - rhs)
