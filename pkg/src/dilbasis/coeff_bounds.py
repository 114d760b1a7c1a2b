"""Analytic-style lower bounds for p-sine Fourier coefficients.

The coefficient of odd order k is (4/k pi) times the integral over [0, 1]
of cos((k pi / 2) I(u)), where I is the normalized generalized arcsine.
That cosine is piecewise monotone: for k = 4j-1 it decreases on j segments
and increases on j segments (the last ending at u = 1), for k = 4j-3 it
decreases on j segments and increases on j-1.  Convexity of I gives a
certified lower bound on each piece:

* on decreasing stretches, replacing I by a chord lowers the integral
  (chord terms);
* on increasing stretches, replacing I by the two tangents through the
  stretch endpoints lowers it (tangent term pairs); at u = 1 the tangent is
  vertical and only the left tangent term survives.

Quadrature points inside each monotone segment are placed uniformly in u by
default, which reproduces the published tables to all printed figures.
Placing them uniformly in the value of I instead (equal phase steps, found
by bisection) yields strictly sharper bounds and is available via the
``placement`` argument.  Either way every term is a certified lower bound,
so the assembled total never exceeds the true coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ptrig
from .ptrig import PTrigContext

__all__ = [
    "MonotonePartition",
    "QuadratureScheme",
    "BoundResult",
    "build_partition",
    "chord_bound",
    "tangent_bounds",
    "lower_bound_spk",
    "interval_bound",
    "K3_TABLE_ROWS",
    "K9_TABLE_ROWS",
]

PI = math.pi

# (lam, counts_minus, counts_plus) combinations of the published tables.
K3_TABLE_ROWS = (
    (1.5, (2,), (3,)),
    (1.5, (3,), (3,)),
    (1.5, (4,), (3,)),
    (1.9, (3,), (3,)),
)
K9_TABLE_ROWS = (
    (1.5, (4, 5, 2), (5, 4)),
    (1.5, (5, 5, 2), (5, 4)),
)


@dataclass(frozen=True)
class MonotonePartition:
    """Monotone segments of cos((k pi / 2) I(u)) tiling [0, 1]."""

    k: int
    p: float
    decreasing: tuple[tuple[float, float], ...]
    increasing: tuple[tuple[float, float], ...]
    minima: tuple[float, ...]  # points where I = (4m-2)/k (cosine minima)
    maxima: tuple[float, ...]  # points where I = 4m/k (cosine maxima)


PLACEMENTS = ("uniform-u", "uniform-phase")


@dataclass(frozen=True)
class QuadratureScheme:
    partition: MonotonePartition
    counts_minus: tuple[int, ...]
    counts_plus: tuple[int, ...]
    placement: str
    # Per segment: strictly increasing points including both endpoints, and
    # the I-values at them.
    x_points: tuple[tuple[float, ...], ...]
    x_ivalues: tuple[tuple[float, ...], ...]
    t_points: tuple[tuple[float, ...], ...]
    t_ivalues: tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class BoundResult:
    k: int
    p: float
    scheme: QuadratureScheme
    chord_terms: tuple[float, ...]
    tangent_terms: tuple[tuple[float, float], ...]
    final_tangent_term: float | None
    total: float

    def term_sum(self) -> float:
        s = sum(self.chord_terms) + sum(a + b for a, b in self.tangent_terms)
        if self.final_tangent_term is not None:
            s += self.final_tangent_term
        return s

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "counts_minus": list(self.scheme.counts_minus),
            "counts_plus": list(self.scheme.counts_plus),
            "placement": self.scheme.placement,
            "chord_terms": list(self.chord_terms),
            "tangent_terms": [list(t) for t in self.tangent_terms],
            "final_tangent_term": self.final_tangent_term,
            "total": self.total,
        }


def _solve_norm_arcsin(ctx: PTrigContext, targets: np.ndarray) -> np.ndarray:
    """Solve I(u) = target for each target by bisection (I is increasing)."""
    lo = np.zeros_like(targets)
    hi = np.ones_like(targets)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        high = ctx.norm_arcsin(mid) >= targets
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
    return 0.5 * (lo + hi)


def _check_nondegenerate(points: tuple[float, ...], k: int, p: float) -> None:
    # Near p = 1 the arcsine saturates so fast that turning points collapse
    # onto u = 1 in double precision, which would void the monotonicity
    # premises of the chord and tangent terms.
    if any(b <= a for a, b in zip(points, points[1:])) or points[0] <= 0.0:
        raise ArithmeticError(
            f"turning points of order k={k} are not resolvable in double "
            f"precision at p={p}"
        )


def build_partition(k: int, p: float) -> MonotonePartition:
    """Monotone segments for odd k; k = 4j-1 and k = 4j-3 lay out differently."""
    k = int(k)
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be a positive odd integer")
    ctx = ptrig.context(float(p))
    if k % 4 == 3:
        j = (k + 1) // 4
        min_targets = np.array([(4.0 * m - 2.0) / k for m in range(1, j + 1)])
        max_targets = np.array([4.0 * m / k for m in range(1, j)])
        minima = tuple(_solve_norm_arcsin(ctx, min_targets))
        maxima = tuple(_solve_norm_arcsin(ctx, max_targets)) + (1.0,)
        turning = tuple(v for pair in zip(minima, maxima) for v in pair)
        _check_nondegenerate(turning, k, float(p))
        dec, inc = [], []
        prev = 0.0
        for i in range(j):
            dec.append((prev, minima[i]))
            inc.append((minima[i], maxima[i]))
            prev = maxima[i]
        return MonotonePartition(k, float(p), tuple(dec), tuple(inc), minima, maxima)
    # k = 4j - 3
    j = (k + 3) // 4
    min_targets = np.array([(4.0 * m - 2.0) / k for m in range(1, j)])
    max_targets = np.array([4.0 * m / k for m in range(1, j)])
    minima = tuple(_solve_norm_arcsin(ctx, min_targets)) + (1.0,)
    maxima = tuple(_solve_norm_arcsin(ctx, max_targets))
    if k > 1:
        turning = tuple(v for pair in zip(minima[:-1], maxima) for v in pair) + (1.0,)
        _check_nondegenerate(turning, k, float(p))
    dec, inc = [], []
    prev = 0.0
    for i in range(j):
        dec.append((prev, minima[i]))
        if i < j - 1:
            inc.append((minima[i], maxima[i]))
            prev = maxima[i]
    return MonotonePartition(k, float(p), tuple(dec), tuple(inc), minima, maxima)


def _one_minus_pow(u: float, p: float) -> float:
    # (1 - u^p)^(1/p), stable near u = 1.
    if u <= 0.0:
        return 1.0
    if u >= 1.0:
        return 0.0
    return (-math.expm1(p * math.log(u))) ** (1.0 / p)


def chord_bound(k: int, p: float, y: float, x: float) -> float:
    """Chord term: lower bound for the cosine integral on a decreasing stretch.

    Collapses to (x - y) cos((k pi / 2) I(y)) as the stretch degenerates.
    """
    if not y < x:
        raise ValueError("requires y < x")
    ctx = ptrig.context(float(p))
    iy = float(ctx.norm_arcsin(y))
    ix = float(ctx.norm_arcsin(x))
    return _chord_term(int(k), y, x, iy, ix)


def _chord_term(k: int, y: float, x: float, iy: float, ix: float) -> float:
    half_k_pi = 0.5 * k * PI
    di = ix - iy
    if abs(di) < 1e-14:
        return (x - y) * math.cos(half_k_pi * iy)
    num = math.sin(half_k_pi * ix) - math.sin(half_k_pi * iy)
    return (2.0 / (k * PI)) * (x - y) * num / di


def tangent_bounds(k: int, p: float, s: float, t: float) -> tuple[float, float]:
    """Tangent term pair on an increasing stretch; at t = 1 the second term is 0."""
    if not s < t:
        raise ValueError("requires s < t")
    ctx = ptrig.context(float(p))
    i_s = float(ctx.norm_arcsin(s))
    i_t = float(ctx.norm_arcsin(t))
    return _tangent_pair(int(k), float(p), ctx.pi_p, s, t, i_s, i_t)


def _tangent_pair(
    k: int, p: float, pip: float, s: float, t: float, i_s: float, i_t: float
) -> tuple[float, float]:
    cs = _one_minus_pow(s, p)
    ct = _one_minus_pow(t, p)
    if cs <= ct:  # collapsed interval; both terms vanish in the limit
        return 0.0, 0.0
    g = (cs * i_s - ct * i_t + (2.0 / pip) * (t - s)) / (cs - ct)
    half_k_pi = 0.5 * k * PI
    scale = pip / (k * PI)
    j1 = scale * cs * (math.sin(half_k_pi * g) - math.sin(half_k_pi * i_s))
    j2 = scale * ct * (math.sin(half_k_pi * i_t) - math.sin(half_k_pi * g))
    return j1, j2


def _place(ctx: PTrigContext, lo: float, hi: float, ilo: float, ihi: float,
           intervals: int, placement: str) -> tuple[tuple[float, ...], tuple[float, ...]]:
    if placement == "uniform-u":
        pts = np.linspace(lo, hi, intervals + 1)
        ival = np.empty(intervals + 1)
        ival[0], ival[-1] = ilo, ihi
        if intervals > 1:
            ival[1:-1] = ctx.norm_arcsin(pts[1:-1])
        return tuple(pts), tuple(ival)
    # uniform-phase: I-values equally spaced between the endpoint values.
    ival = np.linspace(ilo, ihi, intervals + 1)
    pts = np.empty(intervals + 1)
    pts[0], pts[-1] = lo, hi
    if intervals > 1:
        pts[1:-1] = _solve_norm_arcsin(ctx, ival[1:-1])
    return tuple(pts), tuple(ival)


def _build_scheme(
    partition: MonotonePartition,
    counts_minus: tuple[int, ...],
    counts_plus: tuple[int, ...],
    placement: str,
) -> QuadratureScheme:
    k, p = partition.k, partition.p
    ctx = ptrig.context(p)
    n_dec = len(partition.decreasing)
    n_inc = len(partition.increasing)
    if len(counts_minus) != n_dec:
        raise ValueError(f"expected {n_dec} decreasing counts, got {len(counts_minus)}")
    if len(counts_plus) != n_inc:
        raise ValueError(f"expected {n_inc} increasing counts, got {len(counts_plus)}")
    if counts_minus[0] < 1 or any(c < 2 for c in counts_minus[1:]):
        raise ValueError("decreasing counts must be >= 1 (first) and >= 2 (rest)")
    if any(c < 2 for c in counts_plus):
        raise ValueError("increasing counts must be >= 2")
    if placement not in PLACEMENTS:
        raise ValueError(f"placement must be one of {PLACEMENTS}")

    # First decreasing segment runs m_1 intervals, later segments m_i - 1;
    # every increasing segment runs m_i - 1 intervals (the index bookkeeping
    # spends one index on the bridge across the opposite-phase stretch).
    xs, xi, ts, ti = [], [], [], []
    i_lo = 0.0
    for i, (seg, m) in enumerate(zip(partition.decreasing, counts_minus)):
        intervals = m if i == 0 else m - 1
        i_hi = (4.0 * (i + 1) - 2.0) / k if seg[1] < 1.0 else 1.0
        pts, ivals = _place(ctx, seg[0], seg[1], i_lo, i_hi, intervals, placement)
        xs.append(pts)
        xi.append(ivals)
        i_lo = 4.0 * (i + 1) / k  # I at the next maximum
    for i, (seg, m) in enumerate(zip(partition.increasing, counts_plus)):
        lo_val = (4.0 * (i + 1) - 2.0) / k
        hi_val = 4.0 * (i + 1) / k if seg[1] < 1.0 else 1.0
        pts, ivals = _place(ctx, seg[0], seg[1], lo_val, hi_val, m - 1, placement)
        ts.append(pts)
        ti.append(ivals)
    return QuadratureScheme(
        partition, tuple(counts_minus), tuple(counts_plus), placement,
        tuple(xs), tuple(xi), tuple(ts), tuple(ti),
    )


def lower_bound_spk(
    k: int, p: float, counts_minus, counts_plus, placement: str = "uniform-u"
) -> BoundResult:
    """Assembled lower bound for the order-k coefficient of the p-sine profile.

    ``counts_minus``/``counts_plus`` give the per-segment quadrature counts;
    the published tables interleave them as m1-, m1+, m2-, m2+, ...
    """
    k = int(k)
    if k == 1:
        raise ValueError("order 1 needs no bound machinery (single decreasing segment)")
    partition = build_partition(k, float(p))
    scheme = _build_scheme(partition, tuple(counts_minus), tuple(counts_plus), placement)
    pip = ptrig.pi_p(float(p))

    chords: list[float] = []
    for pts, ivals in zip(scheme.x_points, scheme.x_ivalues):
        for a in range(len(pts) - 1):
            chords.append(_chord_term(k, pts[a], pts[a + 1], ivals[a], ivals[a + 1]))

    tangents: list[tuple[float, float]] = []
    final_term: float | None = None
    last = len(scheme.t_points) - 1
    closes_at_one = k % 4 == 3  # the final increasing stretch ends at u = 1
    for seg_idx, (pts, ivals) in enumerate(zip(scheme.t_points, scheme.t_ivalues)):
        for a in range(len(pts) - 1):
            pair = _tangent_pair(
                k, float(p), pip, pts[a], pts[a + 1], ivals[a], ivals[a + 1]
            )
            if closes_at_one and seg_idx == last and a == len(pts) - 2:
                # Vertical tangent at u = 1: only the left tangent term.
                final_term = pair[0]
            else:
                tangents.append(pair)

    total = sum(chords) + sum(a + b for a, b in tangents)
    if final_term is not None:
        total += final_term
    total *= 4.0 / (k * PI)
    return BoundResult(
        k, float(p), scheme, tuple(chords), tuple(tangents), final_term, total
    )


def interval_bound(
    k: int, lam: float, counts_minus, counts_plus,
    n_scan: int = 200, placement: str = "uniform-u",
) -> dict:
    """Bound data for the exponent interval (1, lam].

    Returns the bound at p = lam together with the minimum (and argmin) of
    the bound over a p-grid in (1.001, lam].  The published interval values
    coincide with the bound at p = lam under uniform-u placement.
    """
    at_lam = lower_bound_spk(k, lam, counts_minus, counts_plus, placement).total
    kept: list[tuple[float, float]] = []
    skipped = 0
    for p in np.linspace(1.001, lam, int(n_scan)):
        try:
            total = lower_bound_spk(k, float(p), counts_minus, counts_plus, placement).total
        except ArithmeticError:
            skipped += 1  # partition unresolvable this close to p = 1
            continue
        kept.append((float(p), total))
    best_p, best = min(kept, key=lambda t: t[1])
    return {
        "k": int(k),
        "lambda": float(lam),
        "counts_minus": list(counts_minus),
        "counts_plus": list(counts_plus),
        "placement": placement,
        "at_lambda": float(at_lam),
        "scan_min": float(best),
        "scan_argmin_p": float(best_p),
        "scan_skipped": skipped,
    }
