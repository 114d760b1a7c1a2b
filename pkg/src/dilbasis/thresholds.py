"""Threshold root-finding and figure-data scans.

Each named threshold is a bracketed root of a scalar margin function built
from the criterion machinery: the parameter value at which a sufficient
condition for full equivalence reaches equality.  Margins are non-smooth in
places (absolute values of sines), so the solver is plain bisection with a
verified sign change, an iteration cap and a halving-width guarantee.

``figure_table`` reproduces the published scan data: margin values over a
parameter grid, or root-versus-cutoff sweeps computed on a shared parameter
grid with linear interpolation between the bracketing grid points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import profiles
from .criterion import (
    cubic_family_check,
    cubic_plus_condition,
    psine_family_check,
    psine_tail_check,
    trapezoid_tail_lhs,
    trapezoid_tail_margin,
    trapezoid_two_prime_margin,
)
from .profiles import CoefficientSeries, ramp_sine_integral

__all__ = [
    "BracketError",
    "IterationLimitError",
    "ThresholdRecipe",
    "solve",
    "recipe",
    "recipe_names",
    "named_thresholds",
    "alpha3_witness",
    "scan_margin",
    "figure_table",
    "FIGURES",
]

PI = math.pi


class BracketError(RuntimeError):
    """The margin does not change sign over the requested bracket."""


class IterationLimitError(RuntimeError):
    """Bisection failed to reach its tolerance within the iteration cap."""


@dataclass(frozen=True)
class ThresholdRecipe:
    name: str
    margin: Callable[[float], float]
    bracket: tuple[float, float]
    tol: float
    description: str
    params: dict = field(default_factory=dict)


def solve(rec: ThresholdRecipe, *, max_iter: int = 200) -> float:
    """Bisect the recipe's margin to within ``tol`` (bracket width <= 2 tol)."""
    lo, hi = rec.bracket
    flo = rec.margin(lo)
    fhi = rec.margin(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise BracketError(
            f"{rec.name}: no sign change on [{lo}, {hi}] "
            f"(margins {flo:.3e}, {fhi:.3e})"
        )
    neg_low = flo < 0.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = rec.margin(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == neg_low:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 2.0 * rec.tol:
            return 0.5 * (lo + hi)
    raise IterationLimitError(f"{rec.name}: bisection exceeded {max_iter} iterations")


# --------------------------------------------------------------------------
# Margin functions.

def _alpha0_margin(a: float) -> float:
    return math.sin(PI * a) - (PI ** 2 / 8.0 - 1.0)


def _alpha2_margin(a: float, jmax: int = 200_001) -> float:
    # g^(1) - sum_{j>=3} |g^(j)|; the truncated tail is replaced by its mean
    # |sin| value 2/pi, accurate to O(1/jmax^2) by summation by parts.
    j = np.arange(3, jmax + 1, 2, dtype=float)
    partial = float(np.sum(np.abs(np.sin(j * PI * a)) / j ** 2))
    tail = (2.0 / PI) * (PI ** 2 / 8.0 - 1.0 - float(np.sum(j ** -2.0)))
    return math.sin(PI * a) - partial - tail


def _alpha4_margin(a: float) -> float:
    log_term = math.log((1.0 + math.cos(a * PI)) / math.sin(a * PI))
    return 4.0 * math.sin(a * PI) - (PI ** 2 * ramp_sine_integral(a) + PI * a * log_term)


def _beta0_margin(b: float) -> float:
    lhs = math.sin(PI * b) / (PI * b) - math.cos(PI * b)
    rhs = (PI ** 3 / 96.0 - 1.0 / PI) / b + 0.875 * profiles.zeta3() - 1.0
    return lhs - rhs


def _beta_tilde0_margin(b: float) -> float:
    lhs = math.sin(PI * b) / (PI * b) - math.cos(PI * b)
    return lhs - (1.75 * profiles.zeta3() - 2.0)


def _p3_margin(p: float, jmax: int = 2001) -> float:
    series = CoefficientSeries(profiles.psine(p))
    partial = series.abs_partial_sum(jmax, exclude=(1,))
    return series.coeff(1) - partial - series.envelope_tail(jmax)


def _p4_margin(p: float) -> float:
    series = CoefficientSeries(profiles.psine(p))
    s1, s3, s9 = series.coeff(1), series.coeff(3), series.coeff(9)
    return abs(s3) * (s1 + s9) - 4.0 * s9 * s1


_P_HI_TAIL = 12.0 / 11.0 - 1e-9


def _recipes() -> dict[str, ThresholdRecipe]:
    table = {
        "alpha0": ThresholdRecipe(
            "alpha0", _alpha0_margin, (0.01, 0.49), 1e-10,
            "one-term trapezoid condition via the coefficient envelope",
        ),
        "alpha1": ThresholdRecipe(
            "alpha1", lambda a: trapezoid_tail_margin(a, 500), (0.01, 0.49), 1e-9,
            "k-corrected one-prime trapezoid condition", {"k": 500},
        ),
        "alpha2": ThresholdRecipe(
            "alpha2", _alpha2_margin, (0.01, 0.49), 1e-7,
            "trapezoid coefficient balance g^(1) = sum_{j>=3} |g^(j)|",
        ),
        "alpha4": ThresholdRecipe(
            "alpha4", _alpha4_margin, (0.01, 0.49), 1e-10,
            "trapezoid coefficient-sum identity crossing",
        ),
        "alpha5": ThresholdRecipe(
            "alpha5", lambda a: trapezoid_two_prime_margin(a, 50), (0.01, 0.04), 1e-8,
            "two-prime trapezoid condition on {1,3,5,9,25}", {"k": 50, "d": 2},
        ),
        "beta0": ThresholdRecipe(
            "beta0", _beta0_margin, (0.01, 0.49), 1e-10,
            "one-term cubic condition via the coefficient envelope",
        ),
        "beta_tilde0": ThresholdRecipe(
            "beta_tilde0", _beta_tilde0_margin, (0.01, 0.49), 1e-10,
            "one-term cubic condition via the coarser j^-3 envelope",
        ),
        "beta1": ThresholdRecipe(
            "beta1", lambda b: cubic_family_check(b, 1, 100).margin,
            (0.01, 0.49), 1e-8,
            "cubic family condition, d = 1", {"k": 100, "d": 1},
        ),
        "beta2": ThresholdRecipe(
            "beta2", lambda b: cubic_family_check(b, 2, 100).margin,
            (0.01, 0.49), 1e-8,
            "cubic family condition, d = 2", {"k": 100, "d": 2},
        ),
        "p3": ThresholdRecipe(
            "p3", _p3_margin, (1.0005, 1.2), 1e-6,
            "p-sine coefficient balance with envelope-bounded tail",
            {"jmax": 2001},
        ),
        "p4": ThresholdRecipe(
            "p4", _p4_margin, (1.0005, _P_HI_TAIL), 1e-9,
            "boundary/interior regime split of the three-term p-sine minimum",
        ),
        "p_tail_k61": ThresholdRecipe(
            "p_tail_k61", lambda p: psine_tail_check(p, 61).margin,
            (1.0005, _P_HI_TAIL), 1e-9,
            "explicit p-sine tail inequality, k = 61", {"k": 61},
        ),
        "p_tail_k63": ThresholdRecipe(
            "p_tail_k63", lambda p: psine_tail_check(p, 63).margin,
            (1.0005, _P_HI_TAIL), 1e-9,
            "explicit p-sine tail inequality, k = 63", {"k": 63},
        ),
        "p5": ThresholdRecipe(
            "p5", lambda p: psine_family_check(p, 2, 251).margin,
            (1.0005, 1.2), 1e-8,
            "p-sine family condition, d = 2", {"k": 251, "d": 2},
        ),
    }
    return table


def recipe(name: str) -> ThresholdRecipe:
    table = _recipes()
    try:
        return table[name]
    except KeyError:
        raise KeyError(
            f"unknown threshold {name!r}; known: {', '.join(sorted(table))}"
        ) from None


def recipe_names() -> tuple[str, ...]:
    return tuple(sorted(_recipes()))


def named_thresholds(names=None) -> dict[str, tuple[float, ThresholdRecipe]]:
    """Solve all (or the given) named recipes; returns name -> (value, recipe)."""
    table = _recipes()
    if names is None:
        names = sorted(table)
    out: dict[str, tuple[float, ThresholdRecipe]] = {}
    for name in names:
        rec = table[name]
        out[name] = (solve(rec), rec)
    return out


def alpha3_witness(alpha: float = 0.04, jmax: int = 111) -> bool:
    """True iff sum_{j=3}^{jmax} |g^(j)| exceeds g^(1) for the trapezoid."""
    spec = profiles.trapezoid(alpha)
    series = CoefficientSeries(spec)
    return series.abs_partial_sum(jmax, exclude=(1,)) > series.coeff(1)


# --------------------------------------------------------------------------
# Scans.

def scan_margin(margin: Callable[[float], float], lo: float, hi: float, n: int):
    """Rows (param, margin(param)) on a uniform grid; n >= 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    xs = np.linspace(lo, hi, int(n))
    return [(float(x), float(margin(float(x)))) for x in xs]


def _grid_roots(xs: np.ndarray, table: np.ndarray) -> list[float]:
    """First sign-change root per table row, linearly interpolated (nan if none)."""
    roots = []
    for row in table:
        sign = np.signbit(row)
        idx = np.nonzero(sign[:-1] != sign[1:])[0]
        if idx.size == 0:
            roots.append(float("nan"))
            continue
        i = int(idx[0])
        x0, x1, y0, y1 = xs[i], xs[i + 1], row[i], row[i + 1]
        roots.append(float(x0 - y0 * (x1 - x0) / (y1 - y0)))
    return roots


def _fig1_left(n=None):
    ks = list(range(1, 101)) + list(range(110, 501, 10))
    xs = np.linspace(0.02, 0.30, 1401)
    odd = np.arange(1, 2 * max(ks) + 2, 2, dtype=float)
    terms = (1.0 - np.abs(np.sin(PI * np.multiply.outer(odd, xs)))) / odd[:, None] ** 2
    partial = np.cumsum(terms, axis=0)  # row t: sum over j = 0..t
    base = 2.0 * np.sin(PI * xs) - PI ** 2 / 8.0
    table = np.array([base + partial[k] for k in ks])
    roots = _grid_roots(xs, table)
    return ["k", "alpha_root"], [(k, r) for k, r in zip(ks, roots)]


def _fig1_right(n=None):
    xs = np.linspace(0.01, 0.08, n or 200)
    vals = trapezoid_tail_lhs(xs, 500)
    return ["alpha", "lhs"], list(zip(map(float, xs), map(float, vals)))


def _fig2(n=None):
    xs = np.linspace(0.02, 0.04, n or 200)
    rows = [(float(a), trapezoid_two_prime_margin(float(a), 50)) for a in xs]
    return ["alpha", "lhs"], rows


def _cubic_family_grid(ks: list[int], xs: np.ndarray, d: int) -> np.ndarray:
    # H_d(k, beta) for every k at once: the torus minimum is k-independent.
    table = np.empty((len(ks), xs.size))
    kmax = max(ks)
    for col, b in enumerate(xs):
        spec = profiles.cubic(float(b))
        series = CoefficientSeries(spec)
        vals = series.values_upto(kmax)
        env = series.envelope_values_upto(kmax)
        base = cubic_family_check(float(b), d, 0).margin
        corr = np.concatenate(([0.0], np.cumsum(env - np.abs(vals))))
        for r, k in enumerate(ks):
            table[r, col] = base + corr[k]
    return table


def _fig3_top(n=None):
    ks = list(range(2, 101, 2))
    xs = np.linspace(0.015, 0.20, 150)
    roots1 = _grid_roots(xs, _cubic_family_grid(ks, xs, 1))
    roots2 = _grid_roots(xs, _cubic_family_grid(ks, xs, 2))
    return ["k", "beta_root_d1", "beta_root_d2"], list(zip(ks, roots1, roots2))


def _fig3_bottom_left(n=None):
    xs = np.linspace(0.01, 0.16, n or 200)
    rows = [
        (
            float(b),
            cubic_family_check(float(b), 1, 100).margin,
            cubic_family_check(float(b), 2, 100).margin,
        )
        for b in xs
    ]
    return ["beta", "H1_k100", "H2_k100"], rows


def _fig3_bottom_right(n=None):
    xs = np.linspace(0.02, 0.16, n or 200)
    rows = []
    for b in xs:
        lhs, rhs = cubic_plus_condition(float(b), 2)
        rows.append((float(b), lhs, rhs))
    return ["beta", "lhs", "rhs"], rows


def _psine_family_margin_grid(ks: list[int], ps: np.ndarray, d: int) -> np.ndarray:
    table = np.empty((len(ks), ps.size))
    kmax = max(ks)
    for col, p in enumerate(ps):
        series = CoefficientSeries(profiles.psine(float(p)))
        vals = series.values_upto(kmax)
        env = series.envelope_values_upto(kmax)
        base = psine_family_check(float(p), d, 0).margin
        corr = np.concatenate(([0.0], np.cumsum(env - np.abs(vals))))
        for r, k in enumerate(ks):
            table[r, col] = base + corr[k]
    return table


def _fig4_left(n=None):
    ks = list(range(3, 252, 4))
    ps = np.linspace(1.02, 1.35, 100)
    roots = _grid_roots(ps, _psine_family_margin_grid(ks, ps, 2))
    return ["k", "p_root"], list(zip(ks, roots))


def _fig4_right(n=None):
    ps = np.linspace(1.01, 1.10, n or 100)
    rows = []
    for p in ps:
        series = CoefficientSeries(profiles.psine(float(p)))
        lhs = sum(abs(series.coeff(j)) for j in (3, 9, 5, 25))
        rows.append((float(p), lhs, series.coeff(1)))
    return ["p", "lhs", "rhs"], rows


FIGURES = {
    "1-left": _fig1_left,
    "1-right": _fig1_right,
    "2": _fig2,
    "3-top": _fig3_top,
    "3-bottom-left": _fig3_bottom_left,
    "3-bottom-right": _fig3_bottom_right,
    "4-left": _fig4_left,
    "4-right": _fig4_right,
}


def figure_table(figure: str, n: int | None = None):
    """(header, rows) for one of the named scan figures."""
    try:
        fn = FIGURES[figure]
    except KeyError:
        raise KeyError(
            f"unknown figure {figure!r}; known: {', '.join(sorted(FIGURES))}"
        ) from None
    return fn(n)
