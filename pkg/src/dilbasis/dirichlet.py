"""Finite Dirichlet series and their polydisk polynomials.

A finite support set F (containing 1) determines an ordered list of the
primes dividing its elements and an exponent vector for each element.  A
coefficient family {c_n} on F is then both a finite Dirichlet series

    m(z) = sum_n c_n / n^z

and a polynomial p(w) in d = #primes variables, with m(z) recovered as
p(p_1^-z, ..., p_d^-z).  The modulus extrema of m over the right half-plane
equal those of p over the unit torus, which is what the basis criterion
minimizes.

Truncated multiplier evaluation for the profile families and the closed
form for the smoothed-jump multiplier live here as well; both are
exploratory conveniences, the criterion itself never consumes them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import profiles
from .profiles import ProfileSpec

__all__ = [
    "SupportSet",
    "build_support",
    "DirichletPolynomial",
    "polynomial_for_profile",
    "eval_poly",
    "eval_poly_at",
    "eval_series",
    "eval_multiplier_truncated",
    "jump_smoothed_multiplier",
]


@dataclass(frozen=True, eq=True)
class SupportSet:
    """Sorted support elements with their shared prime/exponent data."""

    elements: tuple[int, ...]
    primes: tuple[int, ...]
    exponents: tuple[tuple[int, ...], ...]  # aligned with elements; empty vector for 1

    @property
    def d(self) -> int:
        return len(self.primes)

    def exponent_map(self) -> dict[int, tuple[int, ...]]:
        return {n: e for n, e in zip(self.elements, self.exponents) if n != 1}


def _factorize(n: int) -> dict[int, int]:
    # Trial division; support elements stay small (<= 1e4 in practice).
    out: dict[int, int] = {}
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def build_support(elements) -> SupportSet:
    """Factorize a finite index set; 1 must be a member."""
    elems = sorted({int(n) for n in elements})
    if any(n < 1 for n in elems):
        raise ValueError("support elements must be positive integers")
    if 1 not in elems:
        raise ValueError("the support set must contain 1")
    factored = {n: _factorize(n) for n in elems if n != 1}
    primes = sorted({p for f in factored.values() for p in f})
    expo = []
    for n in elems:
        if n == 1:
            expo.append(tuple(0 for _ in primes))
        else:
            expo.append(tuple(factored[n].get(p, 0) for p in primes))
    return SupportSet(tuple(elems), tuple(primes), tuple(expo))


@dataclass(frozen=True)
class DirichletPolynomial:
    """Coefficients keyed exactly by the support elements."""

    support: SupportSet
    coeffs: tuple[complex, ...]  # aligned with support.elements

    def __post_init__(self) -> None:
        if len(self.coeffs) != len(self.support.elements):
            raise ValueError("one coefficient per support element required")

    @classmethod
    def from_map(cls, support: SupportSet, coeff_map) -> "DirichletPolynomial":
        if set(coeff_map) != set(support.elements):
            raise ValueError("coefficient keys must equal the support elements")
        return cls(support, tuple(complex(coeff_map[n]) for n in support.elements))

    def coeff_of(self, n: int) -> complex:
        return self.coeffs[self.support.elements.index(n)]

    def coefficient_sum(self) -> complex:
        return sum(self.coeffs)


def polynomial_for_profile(spec: ProfileSpec, support: SupportSet) -> DirichletPolynomial:
    """Attach the profile's Fourier coefficients to a support set."""
    vals = profiles.coeffs(spec, np.array(support.elements))
    return DirichletPolynomial(support, tuple(complex(v) for v in vals))


def eval_poly(poly: DirichletPolynomial, thetas) -> complex:
    """p(w) on the torus, w_l = exp(i theta_l), thetas of length d."""
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if th.size != poly.support.d:
        raise ValueError(
            f"expected {poly.support.d} angles, got {th.size}"
        )
    total = 0.0 + 0.0j
    for c, nu in zip(poly.coeffs, poly.support.exponents):
        total += c * cmath.exp(1j * float(np.dot(th, nu)))
    return total


def eval_poly_at(poly: DirichletPolynomial, w) -> complex:
    """p(w) at an arbitrary point of C^d."""
    ws = np.atleast_1d(np.asarray(w, dtype=complex))
    if ws.size != poly.support.d:
        raise ValueError(f"expected {poly.support.d} coordinates, got {ws.size}")
    total = 0.0 + 0.0j
    for c, nu in zip(poly.coeffs, poly.support.exponents):
        term = c
        for wl, e in zip(ws, nu):
            if e:
                term = term * wl ** e
        total += term
    return total


def eval_series(poly: DirichletPolynomial, z: complex) -> complex:
    """The finite Dirichlet series sum_n c_n n^-z."""
    return sum(
        c * complex(n) ** (-complex(z))
        for c, n in zip(poly.coeffs, poly.support.elements)
    )


def eval_multiplier_truncated(
    spec: ProfileSpec, z: complex, jmax: int
) -> tuple[complex, float]:
    """Truncated multiplier sum_{j<=jmax} f^(j) j^-z with a tail bound.

    Requires Re(z) > 0 and a profile with a summable envelope.  The bound
    dominates |sum_{j>jmax} f^(j) j^-z| via (jmax+1)^-Re(z) times the exact
    envelope tail.
    """
    z = complex(z)
    if z.real <= 0.0:
        raise ValueError("truncated multiplier requires Re(z) > 0")
    jmax = int(jmax)
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    series = profiles.CoefficientSeries(spec)
    vals = series.values_upto(jmax)
    js = np.arange(1, jmax + 1, dtype=float)
    value = complex(np.sum(vals * np.exp(-z * np.log(js))))
    tail = (jmax + 1.0) ** (-z.real) * profiles.envelope_tail(spec, jmax)
    return value, tail


def jump_smoothed_multiplier(eps: float, z: complex, jmax: int = 100_000) -> complex:
    """Multiplier of the eps-smoothed jump.

    On the real axis (z real, z > -eps) the closed zeta form
    (4/pi) (1 - 2^-(1+z+eps)) zeta(1+z+eps) is used; off the real axis the
    value falls back to the truncated Dirichlet sum, which needs Re(z) > 0.
    """
    if eps <= 0.0:
        raise ValueError("requires eps > 0")
    z = complex(z)
    if z.imag == 0.0:
        s = 1.0 + z.real + eps
        if s <= 1.0:
            raise ValueError("real-axis evaluation requires z > -eps")
        return complex(4.0 / math.pi * (1.0 - 2.0 ** (-s)) * profiles.zeta_real(s))
    value, _ = eval_multiplier_truncated(profiles.jump_smoothed(eps), z, jmax)
    return value
