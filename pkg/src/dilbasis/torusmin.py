"""Minimum modulus of a polydisk polynomial over the unit torus.

The general route is a uniform angle grid per axis followed by Nelder-Mead
refinement from the best cell; the grid minimum is an upper bound for the
true minimum and the reported value never exceeds it.  For the three-term
case c1 + c2 w + c3 w^2 with positive outer coefficients the minimum has a
closed form (the modulus squared is a quadratic in cos(theta)), used both as
a fast path and as the oracle in tests.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dirichlet import DirichletPolynomial, eval_poly

__all__ = [
    "TorusMinResult",
    "min_modulus",
    "min_modulus_three_term",
    "zero_free_check",
]

_DEFAULT_GRID = {1: 1024, 2: 512, 3: 96}
_CHUNK_ROWS = 64  # fixed reduction granularity so results ignore the width hint


@dataclass(frozen=True)
class TorusMinResult:
    mu: float
    argmin: tuple[float, ...]
    method: str  # "closed-form" or "grid-refine"
    grid_resolution: int
    refine_tolerance: float

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "argmin": list(self.argmin),
            "method": self.method,
            "grid_resolution": self.grid_resolution,
            "refine_tolerance": self.refine_tolerance,
        }


def _modulus_grid(poly: DirichletPolynomial, angles: np.ndarray) -> np.ndarray:
    d = poly.support.d
    shape = (angles.size,) * d
    total = np.zeros(shape, dtype=complex)
    for c, nu in zip(poly.coeffs, poly.support.exponents):
        term = complex(c)
        factor = np.ones(shape, dtype=complex)
        for axis, e in enumerate(nu):
            if e:
                ax = np.exp(1j * e * angles).reshape(
                    tuple(angles.size if a == axis else 1 for a in range(d))
                )
                factor = factor * ax
        total += term * factor
    return np.abs(total)


def _chunk_min(args: tuple[np.ndarray, int]) -> tuple[float, int]:
    block, offset = args
    flat = block.reshape(-1)
    idx = int(np.argmin(flat))
    return float(flat[idx]), offset + idx


def min_modulus(
    poly: DirichletPolynomial,
    grid_n: int | None = None,
    refine_tol: float = 1e-10,
    jobs: int = 1,
) -> TorusMinResult:
    """min |p(w)| over the torus for d <= 3.

    ``jobs`` is an execution-width hint only: chunk boundaries and the
    argmin tie-break (first flat grid index, lexicographic angle order) are
    fixed, so the result is identical for any value.
    """
    d = poly.support.d
    if d == 0:
        mu = abs(poly.coeffs[0])
        return TorusMinResult(mu, (), "closed-form", 0, refine_tol)
    if d > 3:
        raise ValueError("torus minimization supports at most 3 primes")
    if grid_n is None:
        grid_n = _DEFAULT_GRID[d]
    grid_n = int(grid_n)
    if grid_n < 64:
        raise ValueError("grid_n must be >= 64")

    angles = -math.pi + 2.0 * math.pi * np.arange(grid_n) / grid_n
    mods = _modulus_grid(poly, angles)

    rows = mods.reshape(mods.shape[0], -1)
    row_len = rows.shape[1]
    chunks = [
        (rows[i : i + _CHUNK_ROWS], i * row_len)
        for i in range(0, rows.shape[0], _CHUNK_ROWS)
    ]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=int(jobs)) as pool:
            partials = list(pool.map(_chunk_min, chunks))
    else:
        partials = [_chunk_min(c) for c in chunks]
    best_val, best_idx = min(partials, key=lambda t: (t[0], t[1]))

    multi = np.unravel_index(best_idx, mods.shape)
    x0 = np.array([angles[i] for i in multi])

    from scipy.optimize import minimize

    res = minimize(
        lambda th: abs(eval_poly(poly, th)),
        x0,
        method="Nelder-Mead",
        options={"xatol": refine_tol, "fatol": refine_tol, "maxiter": 4000},
    )
    if res.fun < best_val:
        mu = float(res.fun)
        arg = np.mod(np.asarray(res.x) + math.pi, 2.0 * math.pi) - math.pi
    else:
        mu = float(best_val)
        arg = x0
    return TorusMinResult(mu, tuple(float(a) for a in arg), "grid-refine", grid_n, refine_tol)


def min_modulus_three_term(c1: float, c2: float, c3: float) -> float:
    """Closed-form min over theta of |c1 + c2 e^{i theta} + c3 e^{2 i theta}|.

    Requires c1 > 0 and c3 > 0 (the regime dichotomy below additionally
    presumes c3 + |c2| < c1, which holds in every intended use).  With
    u = cos(theta) the squared modulus is the quadratic
    4 c1 c3 u^2 + 2 c2 (c1+c3) u + c2^2 + (c3-c1)^2, minimized either at an
    endpoint or at its vertex.
    """
    if not (c1 > 0.0 and c3 > 0.0):
        raise ValueError("requires c1 > 0 and c3 > 0")
    if abs(c2) * (c3 + c1) >= 4.0 * c3 * c1:
        return c1 + c3 - abs(c2)
    return (c1 - c3) * math.sqrt(1.0 - c2 ** 2 / (4.0 * c1 * c3))


def zero_free_check(poly: DirichletPolynomial) -> bool:
    """True iff sum_{n != 1} |c_n| < c_1 strictly.

    This confines the zeros of p to the exterior of the closed polydisk, so
    the torus minimum is strictly positive.
    """
    c1 = poly.coeff_of(1)
    if abs(c1.imag) > 0.0:
        raise ValueError("zero-free check requires a real leading coefficient")
    rest = sum(abs(c) for c, n in zip(poly.coeffs, poly.support.elements) if n != 1)
    return rest < c1.real
