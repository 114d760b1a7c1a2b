"""2-periodic odd profile families and their sine Fourier coefficients.

Five profile kinds are supported, each odd about 0, even about 1/2 and
2-periodic:

* ``jump``           -- the square wave sign(sin(pi*x));
* ``jump_smoothed``  -- the series with coefficients 4/(pi j^(1+eps)), odd j;
* ``trapezoid``      -- linear ramp of width alpha up to a unit plateau;
* ``cubic``          -- C^1 cubic ramp of width beta up to a unit plateau;
* ``psine``          -- sin_p(pi_p x).

Coefficients f^(j) = 2 int_0^1 f(x) sin(j pi x) dx are closed-form for all
kinds except ``psine``, which is an oscillatory cosine moment of the
normalized generalized arcsine; that moment is computed on shared tanh-sinh
sample sets (see :mod:`dilbasis.ptrig`).  Even-index coefficients vanish for
every kind because the profiles are odd about 0 and even about 1/2, and are
returned as exact zeros.

Each kind except the plain jump carries a summable coefficient envelope
phi_j >= |f^(j)| with a closed-form total, which is what the basis criterion
consumes.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from . import ptrig

__all__ = [
    "ProfileSpec",
    "jump",
    "jump_smoothed",
    "trapezoid",
    "cubic",
    "psine",
    "eval_profile",
    "coeff",
    "coeffs",
    "envelope",
    "envelope_values",
    "envelope_sum",
    "envelope_tail",
    "CoefficientSeries",
    "trapezoid_sum_identity",
    "jump_smoothed_l2_distance",
    "zeta_real",
    "zeta3",
    "QuadratureError",
]

PI = math.pi
KINDS = ("jump", "jump_smoothed", "trapezoid", "cubic", "psine")


class QuadratureError(ArithmeticError):
    """Raised when a coefficient quadrature misses its error target."""

    def __init__(self, message: str, estimate: float):
        super().__init__(f"{message} (error estimate {estimate:.3e})")
        self.estimate = estimate


# --------------------------------------------------------------------------
# Riemann zeta on the real axis s > 1 (Borwein's accelerated alternating
# series; about 10^-17 per term cancellation at n = 50, no stored decimal
# constants).

@lru_cache(maxsize=None)
def _borwein_weights(n: int) -> tuple[float, ...]:
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(
            math.factorial(n + i - 1) * 4 ** i,
            math.factorial(n - i) * math.factorial(2 * i),
        )
        d.append(float(n * acc))
    return tuple(d)


def zeta_real(s: float) -> float:
    """Riemann zeta at a real argument s > 1."""
    s = float(s)
    if not s > 1.0:
        raise ValueError("zeta_real requires s > 1")
    n = 50
    d = _borwein_weights(n)
    dn = d[n]
    total = 0.0
    sign = 1.0
    for k in range(n):
        total += sign * (d[k] - dn) / (k + 1) ** s
        sign = -sign
    return -total / (dn * (1.0 - 2.0 ** (1.0 - s)))


def zeta3() -> float:
    """zeta(3), used by the cubic envelope total."""
    return zeta_real(3.0)


# --------------------------------------------------------------------------
# Profile specifications.

@dataclass(frozen=True)
class ProfileSpec:
    """A profile kind plus its shape parameter.

    The parameter is eps >= 0 for ``jump_smoothed``, alpha in (0, 1/2] for
    ``trapezoid``, beta in (0, 1/2) for ``cubic`` and p > 1 for ``psine``;
    the plain ``jump`` takes none.
    """

    kind: str
    param: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        v = float(self.param)
        object.__setattr__(self, "param", v)
        if self.kind == "jump" and v != 0.0:
            raise ValueError("jump takes no parameter")
        if self.kind == "jump_smoothed" and v < 0.0:
            raise ValueError("jump_smoothed requires eps >= 0")
        if self.kind == "trapezoid" and not 0.0 < v <= 0.5:
            raise ValueError("trapezoid requires alpha in (0, 1/2]")
        if self.kind == "cubic" and not 0.0 < v < 0.5:
            raise ValueError("cubic requires beta in (0, 1/2)")
        if self.kind == "psine" and not v > 1.0:
            raise ValueError("psine requires p > 1")

    def label(self) -> str:
        if self.kind == "jump":
            return "jump"
        return f"{self.kind}({self.param:g})"


def jump() -> ProfileSpec:
    return ProfileSpec("jump")


def jump_smoothed(eps: float) -> ProfileSpec:
    return ProfileSpec("jump_smoothed", eps)


def trapezoid(alpha: float) -> ProfileSpec:
    return ProfileSpec("trapezoid", alpha)


def cubic(beta: float) -> ProfileSpec:
    return ProfileSpec("cubic", beta)


def psine(p: float) -> ProfileSpec:
    return ProfileSpec("psine", p)


# --------------------------------------------------------------------------
# Pointwise evaluation.

def _half_profile(spec: ProfileSpec, u: np.ndarray) -> np.ndarray:
    # Values on [0, 1] where every kind is nonnegative.
    if spec.kind == "trapezoid":
        a = spec.param
        return np.minimum(1.0, np.minimum(u / a, (1.0 - u) / a))
    if spec.kind == "cubic":
        b = spec.param
        u = np.minimum(u, 1.0 - u)  # even about 1/2
        ramp = (u / b + 1.0) ** 2 * (1.0 - u / (2.0 * b)) - 1.0
        return np.where(u < b, ramp, 1.0)
    raise AssertionError(spec.kind)


def eval_profile(spec: ProfileSpec, x, *, series_terms: int = 20001):
    """Value of the 2-periodic odd extension at x.

    ``jump_smoothed`` with eps > 0 is synthesised from its sine series
    truncated at ``series_terms`` (its true values slightly exceed 1 near the
    plateau centre; all other kinds satisfy |value| <= 1).
    """
    arr = np.asarray(x, dtype=float)
    if spec.kind == "jump" or (spec.kind == "jump_smoothed" and spec.param == 0.0):
        out = np.sign(np.sin(PI * arr))
    elif spec.kind == "psine":
        ctx = ptrig.context(spec.param)
        out = ctx.sin(ctx.pi_p * arr)
    elif spec.kind == "jump_smoothed":
        j = np.arange(1, series_terms + 1, 2, dtype=float)
        amp = 4.0 / (PI * j ** (1.0 + spec.param))
        out = np.sin(PI * np.multiply.outer(np.atleast_1d(arr), j)) @ amp
        if np.ndim(x) == 0:
            return float(out[0])
        return out.reshape(arr.shape)
    else:
        r = np.mod(np.atleast_1d(arr), 2.0)
        neg = r >= 1.0
        u = np.where(neg, 2.0 - r, r)
        out = _half_profile(spec, u)
        out = np.where(neg, -out, out)
        if np.ndim(x) == 0:
            return float(out[0])
        return out.reshape(arr.shape)
    if np.ndim(x) == 0:
        return float(out)
    return out


# --------------------------------------------------------------------------
# Fourier coefficients.

def _psine_level(j: int) -> int:
    # tanh-sinh level per index: the value of a coefficient must not depend
    # on which other indices were requested, so the level is a function of
    # j alone (next power of two, at least 2048, 8 nodes per half-period).
    return max(2048, 8 * (1 << max(0, int(j) - 1).bit_length()))


def _psine_coeffs(p: float, js: np.ndarray) -> np.ndarray:
    ctx = ptrig.context(p)
    out = np.zeros(js.shape, dtype=float)
    odd = js % 2 == 1
    levels = np.array([_psine_level(int(j)) for j in js[odd]])
    vals = np.empty(levels.shape, dtype=float)
    jodd = js[odd].astype(float)
    for m in np.unique(levels):
        w, inorm = ctx.coeff_samples(int(m))
        sel = levels == m
        block = jodd[sel]
        # Per-row dot products keep the reduction order independent of the
        # batch shape, so a coefficient's value depends on (p, j) only.
        start = ((w.size - 1) // 2) % 2
        w_coarse = 2.0 * w[start::2]
        moments = np.empty(block.shape)
        coarse = np.empty(block.shape)
        for i, j in enumerate(block):
            row = np.cos((j * PI / 2.0) * inorm)
            moments[i] = np.dot(row, w)
            coarse[i] = np.dot(row[start::2], w_coarse)
        # The doubled-step rule on the same samples gives a free error estimate.
        est = float(np.max(np.abs(moments - coarse))) if block.size else 0.0
        if est > 1e-9:
            raise QuadratureError(
                f"p-sine coefficient quadrature did not converge at p={p}", est
            )
        vals[sel] = (4.0 / (block * PI)) * moments
    out[odd] = vals
    return out


def coeffs(spec: ProfileSpec, js) -> np.ndarray:
    """Vectorized sine Fourier coefficients f^(j) for positive integers js."""
    js = np.asarray(js, dtype=int)
    if np.any(js < 1):
        raise ValueError("coefficient index must be >= 1")
    if spec.kind == "psine":
        return _psine_coeffs(spec.param, js)
    out = np.zeros(js.shape, dtype=float)
    odd = js % 2 == 1
    j = js[odd].astype(float)
    if spec.kind in ("jump", "jump_smoothed"):
        eps = spec.param if spec.kind == "jump_smoothed" else 0.0
        out[odd] = 4.0 / (PI * j ** (1.0 + eps))
    elif spec.kind == "trapezoid":
        a = spec.param
        out[odd] = 4.0 * np.sin(j * PI * a) / (a * j ** 2 * PI ** 2)
    elif spec.kind == "cubic":
        b = spec.param
        x = j * PI * b
        out[odd] = 12.0 / (j ** 3 * PI ** 3 * b ** 2) * (np.sin(x) / x - np.cos(x))
    return out


def coeff(spec: ProfileSpec, j: int) -> float:
    """Single sine Fourier coefficient f^(j); exact 0 for even j."""
    return float(coeffs(spec, np.array([j]))[0])


# --------------------------------------------------------------------------
# Envelopes phi_j >= |f^(j)| and their closed-form totals.

def _require_envelope(spec: ProfileSpec) -> None:
    if spec.kind == "jump" or (spec.kind == "jump_smoothed" and spec.param == 0.0):
        raise ValueError("the jump profile has no summable coefficient envelope")


def envelope_values(spec: ProfileSpec, js) -> np.ndarray:
    _require_envelope(spec)
    js = np.asarray(js, dtype=int)
    if np.any(js < 1):
        raise ValueError("envelope index must be >= 1")
    out = np.zeros(js.shape, dtype=float)
    odd = js % 2 == 1
    j = js[odd].astype(float)
    if spec.kind == "trapezoid":
        out[odd] = 4.0 / (spec.param * j ** 2 * PI ** 2)
    elif spec.kind == "cubic":
        b = spec.param
        out[odd] = 12.0 / (PI ** 3 * b ** 2) * (1.0 / (j ** 4 * PI * b) + 1.0 / j ** 3)
    elif spec.kind == "psine":
        out[odd] = 4.0 * ptrig.pi_p(spec.param) / (j ** 2 * PI ** 2)
    elif spec.kind == "jump_smoothed":
        out[odd] = 4.0 / (PI * j ** (1.0 + spec.param))
    return out


def envelope(spec: ProfileSpec, j: int) -> float:
    """Coefficient envelope phi_j; 0 for even j."""
    return float(envelope_values(spec, np.array([j]))[0])


def envelope_sum(spec: ProfileSpec) -> float:
    """Closed-form total phi = sum_j phi_j."""
    _require_envelope(spec)
    if spec.kind == "trapezoid":
        return 1.0 / (2.0 * spec.param)
    if spec.kind == "cubic":
        b = spec.param
        return 12.0 / (PI ** 3 * b ** 2) * (PI ** 3 / (96.0 * b) + 0.875 * zeta3())
    if spec.kind == "psine":
        return 0.5 * ptrig.pi_p(spec.param)
    # jump_smoothed, eps > 0
    eps = spec.param
    return 4.0 / PI * (1.0 - 2.0 ** (-1.0 - eps)) * zeta_real(1.0 + eps)


def _odd_partial(power: float, jmax: int) -> float:
    j = np.arange(1, jmax + 1, 2, dtype=float)
    return float(np.sum(j ** -power))


def envelope_tail(spec: ProfileSpec, jmax: int) -> float:
    """Exact tail sum_{j > jmax} phi_j (closed-form total minus partial sum)."""
    _require_envelope(spec)
    if spec.kind == "trapezoid":
        return 4.0 / (spec.param * PI ** 2) * (PI ** 2 / 8.0 - _odd_partial(2.0, jmax))
    if spec.kind == "cubic":
        b = spec.param
        return 12.0 / (PI ** 3 * b ** 2) * (
            (PI ** 4 / 96.0 - _odd_partial(4.0, jmax)) / (PI * b)
            + (0.875 * zeta3() - _odd_partial(3.0, jmax))
        )
    if spec.kind == "psine":
        return (
            4.0 * ptrig.pi_p(spec.param) / PI ** 2
            * (PI ** 2 / 8.0 - _odd_partial(2.0, jmax))
        )
    eps = spec.param
    total = (1.0 - 2.0 ** (-1.0 - eps)) * zeta_real(1.0 + eps)
    return 4.0 / PI * (total - _odd_partial(1.0 + eps, jmax))


# --------------------------------------------------------------------------
# Memoizing coefficient series.

class CoefficientSeries:
    """Lazy map j -> f^(j) with its envelope, safe for concurrent readers."""

    def __init__(self, spec: ProfileSpec):
        self.spec = spec
        self._values: dict[int, float] = {}
        self._lock = threading.Lock()

    def coeff(self, j: int) -> float:
        j = int(j)
        if j % 2 == 0:
            return 0.0
        with self._lock:
            if j not in self._values:
                self._fill_locked(np.array([j]))
            return self._values[j]

    def values_upto(self, jmax: int) -> np.ndarray:
        """Array [f^(1), ..., f^(jmax)] (index j at position j-1)."""
        js = np.arange(1, int(jmax) + 1)
        with self._lock:
            missing = np.array([j for j in js[js % 2 == 1] if j not in self._values])
            if missing.size:
                self._fill_locked(missing)
            out = np.zeros(js.shape, dtype=float)
            for idx, j in enumerate(js):
                if j % 2 == 1:
                    out[idx] = self._values[int(j)]
        return out

    def _fill_locked(self, js: np.ndarray) -> None:
        vals = coeffs(self.spec, js)
        for j, v in zip(js, vals):
            self._values[int(j)] = float(v)

    def abs_partial_sum(self, jmax: int, exclude: tuple[int, ...] = ()) -> float:
        """sum of |f^(j)| over odd j <= jmax, j not in exclude."""
        vals = self.values_upto(jmax)
        total = float(np.sum(np.abs(vals)))
        for j in exclude:
            if 1 <= j <= jmax:
                total -= abs(vals[j - 1])
        return total

    def envelope(self, j: int) -> float:
        return envelope(self.spec, j)

    def envelope_values_upto(self, jmax: int) -> np.ndarray:
        return envelope_values(self.spec, np.arange(1, int(jmax) + 1))

    def envelope_sum(self) -> float:
        return envelope_sum(self.spec)

    def envelope_tail(self, jmax: int) -> float:
        return envelope_tail(self.spec, jmax)


# --------------------------------------------------------------------------
# Series identities used by the threshold computations.

def _ramp_over_sine(x: float) -> float:
    # x / sin(pi x), extended by 1/pi through the removable point x = 0.
    if x == 0.0:
        return 1.0 / PI
    return x / math.sin(PI * x)


def ramp_sine_integral(alpha: float) -> float:
    """int_0^alpha x / sin(pi x) dx to absolute accuracy ~1e-12."""
    val, _ = quad(_ramp_over_sine, 0.0, alpha, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def trapezoid_sum_identity(alpha: float, jmax: int = 100_000) -> tuple[float, float]:
    """Both sides of the trapezoid coefficient-sum identity.

    Returns (lhs, rhs) where lhs is the coefficient series summed over odd
    j <= jmax (the alternating remainder is below 1e-8 for jmax = 1e5) and
    rhs combines the ramp integral with the logarithmic plateau term.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError("requires alpha in (0, 1/2)")
    j = np.arange(1, jmax + 1, 2, dtype=float)
    lhs = float(np.sum(4.0 * np.sin(j * PI * alpha) / (alpha * j ** 2 * PI ** 2)))
    rhs = (2.0 / alpha) * ramp_sine_integral(alpha) + (2.0 / PI) * math.log(
        (1.0 + math.cos(alpha * PI)) / math.sin(alpha * PI)
    )
    return lhs, rhs


def jump_smoothed_l2_distance(eps: float, jmax: int = 1_000_000) -> float:
    """L2 distance between the jump profile and its eps-smoothed variant."""
    if eps < 0.0:
        raise ValueError("requires eps >= 0")
    if eps == 0.0:
        return 0.0
    j = np.arange(1, jmax + 1, 2, dtype=float)
    terms = (4.0 / (PI * j) * (1.0 - j ** -eps)) ** 2
    return math.sqrt(float(np.sum(terms)))
