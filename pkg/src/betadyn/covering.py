"""Covering-sum scans and Monte-Carlo measure experiments.

The covering side evaluates the partial sums that decide convergence of the
natural cover of a limsup set at a candidate dimension s:

  one line:   t_n = C_n * K_n * (9 phi(n) / beta^n)^s
              C_n = word count at order n, K_n = floor(beta^n/phi(n)) + 1
  two lines:  per-regime covering counts times (4*sqrt(2) * side)^s, where
              the side is beta1^(-n(1+theta1)) or beta2^(-n(1+theta2))
              depending on the regime/branch.

Terms are accumulated in natural-log space; the exponential form is only
materialized for partial sums (overflow saturates to inf, which the verdict
logic treats as divergence).  The critical exponent is located by bisecting
the empirical late-window growth rate of log t_n in s.

The Monte-Carlo side estimates the measure of "hit at least once in the
window" events under uniform sampling.  Sampling is driven by the Philox
counter-based generator in fixed-size chunks keyed by (seed, chunk index), so
results are bit-reproducible for any thread count.  For integer bases the
orbit is evaluated from an i.i.d. uniform digit stream (the exact Lebesgue
description of T for integer beta) with 64 guard digits and a backward
Horner pass: iterating float64 directly would be wrong there, because binary
floats are dyadic rationals and the beta=2 float orbit collapses to exactly 0
within 53 steps, turning every deep threshold into a spurious hit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import BetaBasis, count_words, cylinders, DEFAULT_WORD_BUDGET
from .covering_mc import (  # re-export for the public surface
    MeasureExperiment,
    mc_measure_dichotomy,
)
from .dimension import classify_simultaneous
from .errors import BudgetError, DomainError, PreconditionError
from .targets import RateFunction

__all__ = [
    "ContentScan",
    "CriticalScan",
    "MeasureExperiment",
    "content_scan",
    "content_terms_thm1",
    "content_terms_thm2",
    "critical_exponent_scan",
    "full_gap_statistics",
    "mc_measure_dichotomy",
    "thm1_log_term",
    "thm2_log_term",
]

#: Orders up to which exact word counts are used in content terms.
EXACT_COUNT_BUDGET = 18

LOG_9 = math.log(9.0)
LOG_4R2 = math.log(4.0 * math.sqrt(2.0))


def _log_count(basis: BetaBasis, n: int, count_mode: str, exact_budget: int) -> float:
    """log C_n: exact word count below the budget, Renyi upper bound above."""
    b = float(basis.beta)
    if count_mode == "exact" or (count_mode == "auto" and n <= exact_budget):
        c = count_words(basis, n)
        return math.log(c)
    if count_mode in ("auto", "renyi"):
        return (n + 1) * math.log(b) - math.log(b - 1.0)
    raise DomainError(f"count_mode must be auto|exact|renyi, got {count_mode!r}")


def thm1_log_term(
    basis: BetaBasis,
    rate: RateFunction,
    s: float,
    n: int,
    count_mode: str = "auto",
    exact_budget: int = EXACT_COUNT_BUDGET,
) -> float:
    """Natural log of t_n = C_n * K_n * (9 phi(n)/beta^n)^s.

    Requires phi(n) < 1 (the covering normalization).  K_n is evaluated
    exactly while beta^n/phi(n) is representable, in logs afterwards; the
    floor only perturbs log K_n at relative order phi(n)/beta^n.
    """
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    lphi = rate.log_value(n)
    if lphi >= 0.0:
        raise PreconditionError(
            f"phi({n}) = {math.exp(lphi):.6g} >= 1; content terms assume phi(n) < 1"
        )
    b = float(basis.beta)
    lb = math.log(b)
    lk_arg = n * lb - lphi  # log(beta^n / phi(n)) > 0
    if lk_arg < 36:  # beta^n/phi(n) < ~4e15: exact floor is meaningful
        q = math.exp(lk_arg)
        # exp() can land an ulp below a mathematically integral quotient
        # (integer beta with matching pow rates); snap before flooring
        if abs(q - round(q)) <= 1e-9 * max(1.0, q):
            q = round(q)
        lk = math.log(math.floor(q) + 1.0)
    else:
        lk = lk_arg + math.log1p(math.exp(-lk_arg))
    return _log_count(basis, n, count_mode, exact_budget) + lk + s * (
        LOG_9 + lphi - n * lb
    )


_THM2_BRANCHES = {("case1", 1), ("case1", 2), ("case2", 1), ("case2", 2),
                  ("case3", 1), ("case3", 2)}


def thm2_log_term(
    basis1: BetaBasis,
    basis2: BetaBasis,
    theta1: float,
    theta2: float,
    case: str,
    branch: int,
    s: float,
    n: int,
    count_mode: str = "auto",
    exact_budget: int = EXACT_COUNT_BUDGET,
) -> float:
    """Natural log of the order-n covering term for the two-line set.

    ``case`` must match the regime the parameters actually classify into
    (checked), ``branch`` in {1, 2} picks which of the two coverings of that
    regime is summed; branch 2 of regimes 1 and 2 share one formula.  The
    printed constants (2, 1/8, 4*sqrt(2)) are kept so small-n terms can be
    cross-checked against direct arithmetic.
    """
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if (case, branch) not in _THM2_BRANCHES:
        raise DomainError(f"invalid case/branch selection: {case!r}/{branch!r}")
    actual, lam, _ = classify_simultaneous(
        float(basis1.beta), float(basis2.beta), theta1, theta2
    )
    if actual != case:
        raise PreconditionError(
            f"parameters classify as {actual}, not {case}; "
            "invalid case/branch selection"
        )
    lb2 = math.log(float(basis2.beta))
    lb1 = math.log(float(basis1.beta))
    counts = _log_count(basis1, n, count_mode, exact_budget) + _log_count(
        basis2, n, count_mode, exact_budget
    )
    side1 = -n * (1.0 + theta1) * lb1  # log of the beta1-side square side / 4
    side2 = -n * (1.0 + theta2) * lb2
    if case == "case1" and branch == 1:
        # big squares, thinned by the aligned-pair count
        extra = -math.log(8.0) - n * (1.0 - (1.0 + theta1) * lam) * lb2
        return counts + extra + s * (LOG_4R2 + side1)
    if branch == 2 and case in ("case1", "case2"):
        extra = math.log(2.0) + n * ((1.0 + theta2) - (1.0 + theta1) * lam) * lb2
        return counts + extra + s * (LOG_4R2 + side2)
    if case == "case2" and branch == 1:
        return counts + s * (LOG_4R2 + side1)
    if case == "case3" and branch == 1:
        return counts + s * (LOG_4R2 + side2)
    # case3 branch 2: small beta1-side squares along the wider beta2 strip
    extra = math.log(2.0) + n * (1.0 + theta1) * lb1 - n * (1.0 + theta2) * lb2
    return counts + extra + s * (LOG_4R2 + side1)


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContentScan:
    """Partial-sum scan of covering terms at one candidate exponent s."""

    s: float
    n_start: int
    log_terms: tuple[float, ...]
    partial_sums: tuple[float, ...]
    rate: float
    tail_estimate: float
    verdict: str  # "converging" | "diverging" | "inconclusive"

    @property
    def n_max(self) -> int:
        return self.n_start + len(self.log_terms) - 1

    def rows(self):
        """(n, term_log, partial_sum, rate) rows; per-row rate is the forward
        difference of log terms, blank on the last row."""
        for i, (lt, ps) in enumerate(zip(self.log_terms, self.partial_sums)):
            local = (
                self.log_terms[i + 1] - lt if i + 1 < len(self.log_terms) else None
            )
            yield self.n_start + i, lt, ps, local


#: Scan defaults pinned by the verdict rules below.
SCAN_N_MAX = 400
DIVERGE_PARTIAL = 1e6
CONVERGE_TAIL = 1e-8
RATE_TOL = 1e-4
TAIL_AT = 200


def _window(n_start: int, n_max: int) -> tuple[int, int]:
    lo = max(32, n_max // 2)
    lo = min(lo, n_max - 1)  # short scans: keep at least a two-point window
    lo = max(lo, n_start)
    return lo, n_max


def content_scan(
    log_term: Callable[[int], float],
    s: float,
    n_start: int = 1,
    n_max: int = SCAN_N_MAX,
) -> ContentScan:
    """Evaluate terms for n in [n_start, n_max] and classify the series.

    diverging:   some partial sum exceeds 1e6, or the stabilized late-window
                 rate of log t_n exceeds +1e-4;
    converging:  the rate is below -1e-4 and the geometric tail beyond
                 n = 200 estimates below 1e-8;
    inconclusive otherwise.
    """
    if n_max <= n_start:
        raise DomainError(f"need n_max > n_start, got [{n_start}, {n_max}]")
    lts = []
    partials = []
    total = 0.0
    for n in range(n_start, n_max + 1):
        lt = log_term(n)
        lts.append(lt)
        total += math.exp(lt) if lt < 709 else math.inf
        partials.append(total)
    w_lo, w_hi = _window(n_start, n_max)
    rate = (lts[w_hi - n_start] - lts[w_lo - n_start]) / (w_hi - w_lo)
    tail_n = min(TAIL_AT, n_max)
    if rate < 0:
        rho = math.exp(rate)
        tail = math.exp(lts[tail_n - n_start]) * rho / (1.0 - rho)
    else:
        tail = math.inf
    if any(p > DIVERGE_PARTIAL for p in partials) or rate > RATE_TOL:
        verdict = "diverging"
    elif rate < -RATE_TOL and tail < CONVERGE_TAIL:
        verdict = "converging"
    else:
        verdict = "inconclusive"
    return ContentScan(
        s=s,
        n_start=n_start,
        log_terms=tuple(lts),
        partial_sums=tuple(partials),
        rate=rate,
        tail_estimate=tail,
        verdict=verdict,
    )


def content_terms_thm1(
    basis: BetaBasis,
    rate: RateFunction,
    s: float,
    n_start: int = 1,
    n_max: int = SCAN_N_MAX,
    count_mode: str = "auto",
) -> ContentScan:
    return content_scan(
        lambda n: thm1_log_term(basis, rate, s, n, count_mode=count_mode),
        s, n_start, n_max,
    )


def content_terms_thm2(
    basis1: BetaBasis,
    basis2: BetaBasis,
    theta1: float,
    theta2: float,
    case: str,
    branch: int,
    s: float,
    n_start: int = 1,
    n_max: int = SCAN_N_MAX,
    count_mode: str = "auto",
) -> ContentScan:
    return content_scan(
        lambda n: thm2_log_term(
            basis1, basis2, theta1, theta2, case, branch, s, n,
            count_mode=count_mode,
        ),
        s, n_start, n_max,
    )


@dataclass(frozen=True)
class CriticalScan:
    s_star: float
    bracket: tuple[float, float]
    rate_at_star: float
    rate_lo: float
    rate_hi: float


def critical_exponent_scan(
    log_term: Callable[[float, int], float],
    s_lo: float,
    s_hi: float,
    tol: float = 1e-6,
    n_start: int = 1,
    n_max: int = SCAN_N_MAX,
) -> CriticalScan:
    """Bisect s until the late-window growth rate of log t_n changes sign.

    ``log_term(s, n)`` evaluates one term.  The empirical rate telescopes to
    (log t_N - log t_n1)/(N - n1) over the stabilized window, so each rate
    evaluation costs two terms.  Requires rate(s_lo) > 0 > rate(s_hi); the
    returned point satisfies |rate| < tol.
    """
    w_lo, w_hi = _window(n_start, n_max)

    def rate(s: float) -> float:
        return (log_term(s, w_hi) - log_term(s, w_lo)) / (w_hi - w_lo)

    r_lo, r_hi = rate(s_lo), rate(s_hi)
    if not (r_lo > 0.0 > r_hi):
        raise PreconditionError(
            f"no sign change in the growth rate on [{s_lo}, {s_hi}]: "
            f"rate({s_lo}) = {r_lo:.4g}, rate({s_hi}) = {r_hi:.4g}"
        )
    lo, hi = s_lo, s_hi
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-12 or mid <= lo or mid >= hi:
            break
        if rate(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    s_star = 0.5 * (lo + hi)
    r_star = rate(s_star)
    if abs(r_star) >= tol:
        raise PreconditionError(
            f"rate {r_star:.4g} at s = {s_star} did not fall below tol {tol}; "
            "the window may be too short for this term family"
        )
    return CriticalScan(
        s_star=s_star, bracket=(lo, hi), rate_at_star=r_star,
        rate_lo=r_lo, rate_hi=r_hi,
    )


# ---------------------------------------------------------------------------
# full-cylinder gap statistics
# ---------------------------------------------------------------------------


def full_gap_statistics(
    basis: BetaBasis, n: int, budget: int = DEFAULT_WORD_BUDGET
) -> dict:
    """Counts and the longest run of consecutive non-full order-n cylinders.

    The run length is the quantity bounded by n in the density lemma for
    full cylinders; the bound is asserted by the verification suites, not
    here.
    """
    cyls = cylinders(basis, n, budget)
    longest = 0
    run = 0
    n_full = 0
    for c in cyls:
        if c.is_full:
            n_full += 1
            run = 0
        else:
            run += 1
            longest = max(longest, run)
    return {
        "order": n,
        "count": len(cyls),
        "full_count": n_full,
        "max_nonfull_run": longest,
    }
