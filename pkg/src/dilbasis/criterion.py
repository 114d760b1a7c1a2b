"""The multi-term sufficiency check for full equivalence to the Fourier basis.

Given a profile f with coefficient envelope {phi_j} (total phi), a finite
support set F containing 1 and a cut-off k, the check evaluates

    condition 1:   sum_{j in F, j != 1} |f^(j)|  <  f^(1)
    condition 2:   mu - phi + sum_{j in F} |f^(j)|
                      + sum_{j<=k} (phi_j - |f^(j)|)  >  0

where mu is the torus minimum of the polynomial attached to F.  Both
conditions together certify that the dilation family of f is fully
equivalent to the Fourier basis; failure of either is *inconclusive*, never
a disproof.  The torus minimum enters condition 2 reduced by the refinement
tolerance so that optimization error cannot overstate sufficiency.

Specialized wrappers cover the recurring parameter families: the two-term
(single prime) corollary with its closed-form minimum, and the p-sine and
cubic families on the supports {1,3,9} and {1,3,5,9,25}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import profiles
from .dirichlet import DirichletPolynomial, SupportSet, build_support
from .profiles import CoefficientSeries, ProfileSpec
from .torusmin import min_modulus, min_modulus_three_term

__all__ = [
    "EQUIVALENT",
    "INCONCLUSIVE",
    "CriterionReport",
    "TwoTermReport",
    "PsineTailReport",
    "FamilyReport",
    "check_multi_term",
    "check_two_term",
    "psine_tail_check",
    "psine_family_check",
    "cubic_family_check",
    "family_support",
    "trapezoid_tail_lhs",
    "trapezoid_tail_margin",
    "trapezoid_two_prime_margin",
    "cubic_plus_condition",
]

PI = math.pi

EQUIVALENT = "Equivalent"
INCONCLUSIVE = "Inconclusive"


def _as_support(support) -> SupportSet:
    return support if isinstance(support, SupportSet) else build_support(support)


@dataclass(frozen=True)
class CriterionReport:
    """Every intermediate quantity of the two conditions plus the verdict."""

    profile_kind: str
    profile_param: float
    support: tuple[int, ...]
    k: int
    mu: float
    phi: float
    sum_support_abs: float
    correction: float
    cond1_margin: float
    cond2_value: float
    refine_tolerance: float
    verdict: str

    def to_dict(self) -> dict:
        return {
            "profile_kind": self.profile_kind,
            "profile_param": self.profile_param,
            "support": list(self.support),
            "k": self.k,
            "mu": self.mu,
            "phi": self.phi,
            "sum_support_abs": self.sum_support_abs,
            "correction": self.correction,
            "cond1_margin": self.cond1_margin,
            "cond2_value": self.cond2_value,
            "refine_tolerance": self.refine_tolerance,
            "verdict": self.verdict,
        }


def check_multi_term(
    spec: ProfileSpec,
    support,
    k: int,
    *,
    grid_n: int | None = None,
    refine_tol: float = 1e-10,
    jobs: int = 1,
) -> CriterionReport:
    """Evaluate both conditions for the given profile, support and cut-off."""
    if k < 0:
        raise ValueError("k must be >= 0")
    sup = _as_support(support)
    series = CoefficientSeries(spec)
    jmax = max(int(k), max(sup.elements))
    vals = series.values_upto(jmax)

    support_vals = {n: vals[n - 1] for n in sup.elements}
    sum_abs = float(sum(abs(v) for v in support_vals.values()))
    cond1_margin = float(
        support_vals[1] - sum(abs(v) for n, v in support_vals.items() if n != 1)
    )

    poly = DirichletPolynomial(sup, tuple(complex(support_vals[n]) for n in sup.elements))
    mu = min_modulus(poly, grid_n=grid_n, refine_tol=refine_tol, jobs=jobs).mu

    phi = series.envelope_sum()
    if k >= 1:
        env = series.envelope_values_upto(k)
        correction = float(np.sum(env - np.abs(vals[:k])))
    else:
        correction = 0.0

    cond2 = (mu - refine_tol) - phi + sum_abs + correction
    verdict = EQUIVALENT if (cond1_margin > 0.0 and cond2 > 0.0) else INCONCLUSIVE
    return CriterionReport(
        profile_kind=spec.kind,
        profile_param=spec.param,
        support=sup.elements,
        k=int(k),
        mu=mu,
        phi=phi,
        sum_support_abs=sum_abs,
        correction=correction,
        cond1_margin=cond1_margin,
        cond2_value=cond2,
        refine_tolerance=refine_tol,
        verdict=verdict,
    )


# --------------------------------------------------------------------------
# Two-term (single prime) corollary.

@dataclass(frozen=True)
class TwoTermReport:
    profile_kind: str
    profile_param: float
    prime: int
    jmax: int
    cond3_ok: bool
    regime: int | None  # 1: boundary minimum, 2: interior minimum
    mu: float
    margin: float
    tail_bound: float
    verdict: str
    reason: str

    def to_dict(self) -> dict:
        return {
            "profile_kind": self.profile_kind,
            "profile_param": self.profile_param,
            "prime": self.prime,
            "jmax": self.jmax,
            "cond3_ok": self.cond3_ok,
            "regime": self.regime,
            "mu": self.mu,
            "margin": self.margin,
            "tail_bound": self.tail_bound,
            "verdict": self.verdict,
            "reason": self.reason,
        }


def check_two_term(
    spec: ProfileSpec, prime: int, *, jmax: int = 4001
) -> TwoTermReport:
    """Single-prime criterion on the support {1, prime, prime^2}.

    The infinite coefficient sums are bounded above by a partial sum plus the
    exact envelope tail beyond ``jmax``; with matching truncation depth this
    is the k = jmax multi-term check with the closed-form minimum.
    """
    prime = int(prime)
    series = CoefficientSeries(spec)
    f1 = series.coeff(1)
    fp = series.coeff(prime)
    fp2 = series.coeff(prime * prime)

    cond3 = fp2 > 0.0 and fp2 + abs(fp) < f1
    if not cond3:
        return TwoTermReport(
            spec.kind, spec.param, prime, jmax, False, None,
            float("nan"), float("nan"), float("nan"),
            INCONCLUSIVE, "positivity/domination precondition failed",
        )

    tail = series.envelope_tail(jmax)
    if abs(fp) * (fp2 + f1) >= 4.0 * fp2 * f1:
        regime = 1
        mu = f1 + fp2 - abs(fp)
        partial = series.abs_partial_sum(jmax, exclude=(1, prime * prime))
        margin = f1 + fp2 - (partial + tail)
    else:
        regime = 2
        mu = min_modulus_three_term(f1, fp, fp2)
        partial = series.abs_partial_sum(jmax, exclude=(1, prime, prime * prime))
        margin = mu - (partial + tail)
    verdict = EQUIVALENT if margin > 0.0 else INCONCLUSIVE
    return TwoTermReport(
        spec.kind, spec.param, prime, jmax, True, regime, mu, margin, tail,
        verdict, "",
    )


# --------------------------------------------------------------------------
# p-sine family checks.

_FAMILY_SUPPORTS = {1: (1, 3, 9), 2: (1, 3, 5, 9, 25)}


def family_support(d: int) -> tuple[int, ...]:
    """Support {1, 3, 9} for d = 1 and {1, 3, 5, 9, 25} for d = 2."""
    try:
        return _FAMILY_SUPPORTS[int(d)]
    except KeyError:
        raise ValueError("d must be 1 or 2") from None


@dataclass(frozen=True)
class PsineTailReport:
    p: float
    k: int
    cond1_ok: bool  # |s^(3)| + s^(9) < s^(1)
    cond2_ok: bool  # |s^(3)| [s^(1) + s^(9)] >= 4 s^(9) s^(1)
    margin: float   # explicit tail inequality, positive means satisfied
    verdict: str

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "cond1_ok": self.cond1_ok,
            "cond2_ok": self.cond2_ok,
            "margin": self.margin,
            "verdict": self.verdict,
        }


def psine_tail_check(p: float, k: int) -> PsineTailReport:
    """The explicit three-term check for the p-sine profile, 1 < p < 12/11.

    The left side of the tail inequality equals the exact envelope tail
    beyond k, so the margin is

        s^(1) + s^(9) - sum_{3<=j<=k, j != 9} |s^(j)| - envelope_tail(k) .
    """
    if not 1.0 < p < 12.0 / 11.0:
        raise ValueError("requires 1 < p < 12/11")
    k = int(k)
    if k < 9 or k % 2 == 0:
        raise ValueError("requires odd k >= 9")
    spec = profiles.psine(p)
    series = CoefficientSeries(spec)
    vals = series.values_upto(k)
    s1, s3, s9 = vals[0], vals[2], vals[8]
    cond1 = abs(s3) + s9 < s1
    cond2 = abs(s3) * (s1 + s9) >= 4.0 * s9 * s1
    partial = series.abs_partial_sum(k, exclude=(1, 9))
    margin = (s1 + s9 - partial) - series.envelope_tail(k)
    verdict = EQUIVALENT if (cond1 and cond2 and margin > 0.0) else INCONCLUSIVE
    return PsineTailReport(float(p), k, bool(cond1), bool(cond2), float(margin), verdict)


@dataclass(frozen=True)
class FamilyReport:
    """Multi-term check on the d-prime family support, d in {1, 2}."""

    profile_kind: str
    profile_param: float
    d: int
    k: int
    mu: float
    margin: float       # condition-2 value
    plus_margin: float  # condition-1 margin
    verdict: str

    def to_dict(self) -> dict:
        return {
            "profile_kind": self.profile_kind,
            "profile_param": self.profile_param,
            "d": self.d,
            "k": self.k,
            "mu": self.mu,
            "margin": self.margin,
            "plus_margin": self.plus_margin,
            "verdict": self.verdict,
        }


def _family_check(
    spec: ProfileSpec, d: int, k: int, grid_n: int | None, refine_tol: float, jobs: int
) -> FamilyReport:
    report = check_multi_term(
        spec, family_support(d), k, grid_n=grid_n, refine_tol=refine_tol, jobs=jobs
    )
    return FamilyReport(
        spec.kind, spec.param, int(d), int(k),
        report.mu, report.cond2_value, report.cond1_margin, report.verdict,
    )


def psine_family_check(
    p: float, d: int, k: int, *,
    grid_n: int | None = None, refine_tol: float = 1e-10, jobs: int = 1,
) -> FamilyReport:
    """Multi-term check for the p-sine profile on the d-prime support."""
    return _family_check(profiles.psine(p), d, k, grid_n, refine_tol, jobs)


def cubic_family_check(
    beta: float, d: int, k: int, *,
    grid_n: int | None = None, refine_tol: float = 1e-10, jobs: int = 1,
) -> FamilyReport:
    """Multi-term check for the cubic profile on the d-prime support."""
    return _family_check(profiles.cubic(beta), d, k, grid_n, refine_tol, jobs)


# --------------------------------------------------------------------------
# Display-scaled trapezoid margins (cheap closed forms, no torus search).
# These duplicate check_multi_term up to the positive factor alpha pi^2 / 4
# and serve both the threshold recipes and the figure scans.

def trapezoid_tail_lhs(alpha, k: int = 500):
    """2 sin(pi a) + sum_{j=0}^{k} (1 - |sin((2j+1) pi a)|)/(2j+1)^2."""
    a = np.asarray(alpha, dtype=float)
    odd = np.arange(1, 2 * int(k) + 2, 2, dtype=float)
    phases = np.multiply.outer(np.atleast_1d(a), odd) * PI
    series = (1.0 - np.abs(np.sin(phases))) @ (1.0 / odd ** 2)
    out = 2.0 * np.sin(PI * np.atleast_1d(a)) + series
    if np.ndim(alpha) == 0:
        return float(out[0])
    return out.reshape(a.shape)


def trapezoid_tail_margin(alpha, k: int = 500):
    """Left side of the k-corrected one-prime trapezoid condition minus pi^2/8."""
    return trapezoid_tail_lhs(alpha, k) - PI ** 2 / 8.0


def trapezoid_two_prime_margin(
    alpha: float, k: int = 50, *,
    grid_n: int | None = None, refine_tol: float = 1e-10, jobs: int = 1,
) -> float:
    """Display-scaled condition-2 value on {1, 3, 5, 9, 25}.

    ``k`` is the plain multi-term cut-off (correction terms for j <= k; only
    odd j contribute).  Note the asymmetry with :func:`trapezoid_tail_lhs`,
    whose ``k`` counts odd indices: the two published trapezoid thresholds
    are only reproduced with exactly this pairing.  The scale factor
    alpha pi^2 / 4 matches the normalization of the other summands.
    """
    report = check_multi_term(
        profiles.trapezoid(alpha), (1, 3, 5, 9, 25), int(k),
        grid_n=grid_n, refine_tol=refine_tol, jobs=jobs,
    )
    return float(alpha) * PI ** 2 / 4.0 * report.cond2_value


def cubic_plus_condition(beta: float, d: int) -> tuple[float, float]:
    """(lhs, rhs) of the cubic domination condition over the d-prime support.

    lhs sums |sin(j pi b)/(j^4 pi b^2) - cos(j pi b)/(j^3 b)| over the
    support primes and squares; rhs is the j = 1 term.  lhs < rhs is
    condition 1 up to a positive factor.
    """
    b = float(beta)

    def term(j: float) -> float:
        return math.sin(j * PI * b) / (j ** 4 * PI * b ** 2) - math.cos(j * PI * b) / (
            j ** 3 * b
        )

    lhs = sum(abs(term(j)) for j in family_support(d) if j != 1)
    rhs = term(1.0)
    return lhs, rhs
