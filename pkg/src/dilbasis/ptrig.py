"""Generalized p-trigonometric functions.

For an exponent p > 1 the generalized arcsine is the integral of
(1 - t^p)^(-1/p) over [0, y].  Its value at y = 1 is half of the
generalized period

    pi_p = 2*pi / (p * sin(pi/p)),

and its inverse on [0, pi_p/2], extended by oddness, reflection and
2*pi_p-periodicity, is the p-sine function sin_p.  For p = 2 everything
degenerates to the circular functions.

The arcsine integral is evaluated from its defining integrand: rewritten
in u = t^p it is an incomplete-beta-type integral with algebraic endpoint
singularities, split at u = 1/2 so that each half carries its singular
endpoint inside a Gauss-Jacobi weight.  Fixed-order rules then converge to
machine precision for every p > 1, which a plain adaptive panel scheme
cannot do near p = 1.  Construction of a :class:`PTrigContext` self-checks
the two halves against the closed form pi_p = 2*F(1).

Everything here is pure and immutable after construction; contexts may be
shared freely between threads.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

__all__ = [
    "PExponent",
    "PTrigContext",
    "context",
    "pi_p",
    "arcsin_p",
    "norm_arcsin_p",
    "sin_p",
    "ratio_bounds",
]


@dataclass(frozen=True)
class PExponent:
    """An exponent p > 1 together with its conjugate p' = p/(p-1)."""

    p: float
    pprime: float = field(init=False)

    def __post_init__(self) -> None:
        p = float(self.p)
        if not math.isfinite(p) or p <= 1.0:
            raise ValueError(f"exponent must be finite and > 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "pprime", p / (p - 1.0))


def _as_exponent(p: PExponent | float) -> PExponent:
    return p if isinstance(p, PExponent) else PExponent(float(p))


def pi_p(p: PExponent | float) -> float:
    """Generalized half-period 2*pi / (p * sin(pi/p)); pi_2 = pi."""
    q = _as_exponent(p)
    return 2.0 * math.pi / (q.p * math.sin(math.pi / q.p))


def _tanh_sinh_nodes(m: int, u_max: float = 3.2) -> tuple[np.ndarray, np.ndarray]:
    """tanh-sinh nodes and weights on (0, 1), 2m+1 raw points, tiny weights trimmed."""
    h = u_max / m
    u = h * np.arange(-m, m + 1)
    s = 0.5 * math.pi * np.sinh(u)
    t = 0.5 * (1.0 + np.tanh(s))
    w = h * 0.25 * math.pi * np.cosh(u) / np.cosh(s) ** 2
    keep = w > 1e-18
    return t[keep], w[keep]


class PTrigContext:
    """Cached evaluators for a fixed exponent p.

    Attributes
    ----------
    p : PExponent
    pi_p : float
        The generalized half-period.
    """

    def __init__(self, p: PExponent | float, order: int = 80):
        self.p = _as_exponent(p)
        self.pi_p = pi_p(self.p)
        pp = self.p.p
        # Head piece, u in [0, Y]: Jacobi weight (1+xi)^(1/p-1) carries the u=0 singularity.
        self._head_nodes = roots_jacobi(order, 0.0, 1.0 / pp - 1.0)
        # Tail piece, u in [Y, 1]: Jacobi weight (1-xi)^(-1/p) carries the u=1 singularity.
        self._tail_nodes = roots_jacobi(order, -1.0 / pp, 0.0)
        self._split = 0.5 ** (1.0 / pp)  # the y with y^p = 1/2
        self._samples: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._lock = threading.Lock()
        err = abs(
            self._head(np.array([self._split]))[0]
            + self._tail_rest(np.array([self._split]))[0]
            - 0.5 * self.pi_p
        )
        if err > 1e-10 * max(1.0, self.pi_p):
            raise ArithmeticError(
                f"arcsine quadrature self-check failed for p={pp}: residual {err:.3e}"
            )

    def _head(self, y: np.ndarray) -> np.ndarray:
        # (1/p) * int_0^{y^p} u^(1/p-1) (1-u)^(-1/p) du  via  u = Y (1+xi)/2
        p = self.p.p
        xi, w = self._head_nodes
        Y = y ** p
        fac = (1.0 / p) * (Y / 2.0) ** (1.0 / p)
        z = 1.0 - np.multiply.outer(Y / 2.0, 1.0 + xi)
        return fac * ((z ** (-1.0 / p)) @ w)

    def _tail_rest(self, y: np.ndarray) -> np.ndarray:
        # (1/p) * int_{y^p}^1 u^(1/p-1) (1-u)^(-1/p) du  via  1-u = (1-Y)(1-xi)/2
        p = self.p.p
        xi, w = self._tail_nodes
        one_minus_Y = -np.expm1(p * np.log(y))
        fac = (1.0 / p) * (one_minus_Y / 2.0) ** (1.0 - 1.0 / p)
        u = 1.0 - np.multiply.outer(one_minus_Y / 2.0, 1.0 - xi)
        return fac * ((u ** (1.0 / p - 1.0)) @ w)

    def arcsin(self, y):
        """Generalized arcsine int_0^y (1-t^p)^(-1/p) dt for y in [0, 1]."""
        arr = np.asarray(y, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("arcsin_p argument must lie in [0, 1]")
        out = np.empty_like(arr)
        flat = np.atleast_1d(out)
        yf = np.atleast_1d(arr)
        head = yf <= self._split
        if head.any():
            flat[head] = self._head(yf[head])
        tail = ~head
        if tail.any():
            flat[tail] = 0.5 * self.pi_p - self._tail_rest(yf[tail])
        if np.ndim(y) == 0:
            return float(flat[0])
        return out

    def norm_arcsin(self, y):
        """The [0,1]-normalized arcsine (2/pi_p) * arcsin_p(y)."""
        return self.arcsin(y) * (2.0 / self.pi_p)

    def _invert(self, x: np.ndarray) -> np.ndarray:
        # Solve arcsin(y) = x for x in [0, pi_p/2]; the arcsine is strictly
        # increasing so plain bisection on [0, 1] is safe.
        lo = np.zeros_like(x)
        hi = np.ones_like(x)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            high = self.arcsin(mid) >= x
            hi = np.where(high, mid, hi)
            lo = np.where(high, lo, mid)
        return 0.5 * (lo + hi)

    def sin(self, x):
        """sin_p(x) for any real x, |sin_p| <= 1.

        Range reduction order: reduce modulo 2*pi_p, flip sign on the second
        half-period, then reflect [pi_p/2, pi_p) onto [0, pi_p/2].
        """
        arr = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise ValueError("sin_p argument must be finite")
        r = np.mod(np.atleast_1d(arr), 2.0 * self.pi_p)
        neg = r >= self.pi_p
        r = np.where(neg, r - self.pi_p, r)
        r = np.where(r > 0.5 * self.pi_p, self.pi_p - r, r)
        y = self._invert(r)
        y = np.where(neg, -y, y)
        if np.ndim(x) == 0:
            return float(y[0])
        return y.reshape(arr.shape)

    def coeff_samples(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        """tanh-sinh weights and normalized-arcsine values, cached per level m.

        Shared by the Fourier-coefficient quadratures: every coefficient of
        the p-sine profile is a cosine moment of the same sample set.
        """
        with self._lock:
            hit = self._samples.get(m)
            if hit is None:
                t, w = _tanh_sinh_nodes(m)
                t = np.clip(t, 1e-300, 1.0 - 1e-16)
                hit = (w, self.norm_arcsin(t))
                self._samples[m] = hit
            return hit


@lru_cache(maxsize=256)
def context(p: float, order: int = 80) -> PTrigContext:
    """Shared immutable context for the exponent p."""
    return PTrigContext(p, order=order)


def arcsin_p(p: PExponent | float, y):
    """int_0^y (1-t^p)^(-1/p) dt; equals pi_p/2 at y = 1."""
    return context(_as_exponent(p).p).arcsin(y)


def norm_arcsin_p(p: PExponent | float, y):
    """(2/pi_p) * arcsin_p(y): increasing and convex from 0 to 1."""
    return context(_as_exponent(p).p).norm_arcsin(y)


def sin_p(p: PExponent | float, x):
    """The p-sine function, inverse of arcsin_p extended to the line."""
    return context(_as_exponent(p).p).sin(x)


def ratio_bounds(p: PExponent | float, q: PExponent | float, y: float) -> tuple[float, float]:
    """Return (norm_arcsin_q(y)/norm_arcsin_p(y), pi_p/pi_q) for 1 < p < q.

    The ratio lies strictly between 1 and pi_p/pi_q for y in (0, 1).
    """
    pe, qe = _as_exponent(p), _as_exponent(q)
    if not pe.p < qe.p:
        raise ValueError("ratio_bounds requires p < q")
    if not 0.0 < y < 1.0:
        raise ValueError("ratio_bounds requires y in (0, 1)")
    ratio = norm_arcsin_p(qe, y) / norm_arcsin_p(pe, y)
    return ratio, pi_p(pe) / pi_p(qe)
