"""Closed-form Hausdorff dimension values and the transference calculator.

The dimension of the one-line shrinking-target set is 1/(1+alpha) where
alpha is the decay exponent of the threshold sequence; the planar
(inhomogeneous) variant adds a free coordinate, 1 + 1/(1+alpha).  The
two-line simultaneous set with exponents theta1, theta2 against bases
beta1 <= beta2 splits into three parameter regimes driven by
lambda = log_{beta2} beta1:

  regime 1   (1+theta1) lambda < 1:
      min{ (2+theta1)/(1+theta1), (2+theta2-theta1*lambda)/(1+theta2) }
  regime 2   1 <= (1+theta1) lambda <= 1+theta2:
      min{ (1+lambda)/((1+theta1) lambda), (2+theta2-theta1*lambda)/(1+theta2) }
  regime 3   (1+theta1) lambda > 1+theta2:
      min{ (1+lambda)/(1+theta2), ((2+theta1) lambda - theta2)/((1+theta1) lambda) }

Boundary ties classify as regime 2; both adjacent regimes agree there, which
the verification suites check numerically.  The same value drops out of a
small optimization (`mtp_lower_bound`) over a finite candidate set; running
both routes and comparing is the package's main self-check for these
formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PreconditionError
from .targets import RateFunction, TableRate, TauFunction, tau_extremes


# ---------------------------------------------------------------------------
# decay exponent alpha
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaResult:
    value: float
    method: str  # "analytic" | "numeric-liminf"

    @property
    def heuristic(self) -> bool:
        return self.method != "analytic"


def alpha_exponent(rate: RateFunction, beta: float, horizon: int = 64) -> AlphaResult:
    """Decay exponent alpha = liminf log_beta(1/phi(n)) / n.

    Uses the family's closed form when it has one; otherwise estimates the
    liminf as the minimum of log_beta(1/phi(n))/n over n in [horizon/2,
    horizon] and flags the result heuristic.
    """
    if beta <= 1:
        raise DomainError(f"beta must be > 1, got {beta}")
    analytic = rate.alpha_analytic(beta)
    if analytic is not None:
        return AlphaResult(value=analytic, method="analytic")
    if horizon < 16:
        raise PreconditionError(f"numeric fallback needs horizon >= 16, got {horizon}")
    if isinstance(rate, TableRate) and len(rate) < horizon:
        raise DomainError(
            f"table rate has {len(rate)} entries, fewer than horizon {horizon}"
        )
    lb = math.log(beta)
    lo = max(1, math.ceil(horizon / 2))
    val = min(-rate.log_value(n) / (n * lb) for n in range(lo, horizon + 1))
    return AlphaResult(value=val, method="numeric-liminf")


def dim_shrinking_target(alpha: float) -> float:
    """1/(1+alpha) for the one-line shrinking-target set."""
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    return 1.0 / (1.0 + alpha)


def dim_inhom_planar(alpha: float) -> float:
    """1 + 1/(1+alpha) for the planar set with a Lipschitz target surface."""
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    return 1.0 + 1.0 / (1.0 + alpha)


# ---------------------------------------------------------------------------
# simultaneous two-line formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DimensionReport:
    value: float
    case: str
    branch_values: dict
    inputs: dict
    provenance: str = "float"
    applicable: bool | None = None
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = {
            "value": self.value,
            "case": self.case,
            "branch_values": dict(self.branch_values),
            "inputs": dict(self.inputs),
            "provenance": self.provenance,
        }
        if self.applicable is not None:
            d["applicable"] = self.applicable
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def _check_two_bases(beta1: float, beta2: float) -> None:
    if beta1 <= 1 or beta2 <= 1:
        raise DomainError(f"bases must be > 1, got {beta1}, {beta2}")
    if beta2 < beta1:
        raise PreconditionError(
            f"convention beta1 <= beta2 violated: {beta1} > {beta2}"
        )


def classify_simultaneous(
    beta1: float, beta2: float, theta1: float, theta2: float
) -> tuple[str, float, bool]:
    """(case name, lambda, boundary tie?) for the three-regime split."""
    _check_two_bases(beta1, beta2)
    if theta1 <= 0 or theta2 <= 0:
        raise DomainError(f"exponents must be positive, got {theta1}, {theta2}")
    lam = math.log(beta1) / math.log(beta2)
    p = (1.0 + theta1) * lam  # beta1^(1+theta1) vs beta2^p comparisons in logs
    if p < 1.0:
        return "case1", lam, False
    if p <= 1.0 + theta2:
        return "case2", lam, p == 1.0 or p == 1.0 + theta2
    return "case3", lam, False


def _branch_pair(case: str, lam: float, theta1: float, theta2: float) -> dict:
    if case == "case1":
        return {
            "branch1": (2.0 + theta1) / (1.0 + theta1),
            "branch2": (2.0 + theta2 - theta1 * lam) / (1.0 + theta2),
        }
    if case == "case2":
        return {
            "branch1": (1.0 + lam) / ((1.0 + theta1) * lam),
            "branch2": (2.0 + theta2 - theta1 * lam) / (1.0 + theta2),
        }
    return {
        "branch1": (1.0 + lam) / (1.0 + theta2),
        "branch2": ((2.0 + theta1) * lam - theta2) / ((1.0 + theta1) * lam),
    }


def dim_simultaneous(
    beta1: float, beta2: float, theta1: float, theta2: float
) -> DimensionReport:
    """Dimension of the simultaneous two-line set with constant exponents."""
    case, lam, tie = classify_simultaneous(beta1, beta2, theta1, theta2)
    branches = _branch_pair(case, lam, theta1, theta2)
    notes = []
    if tie:
        notes.append("boundary tie: adjacent regimes agree at these parameters")
    if theta1 > theta2:
        notes.append("theta1 > theta2: computed as requested, without reordering")
    return DimensionReport(
        value=min(branches.values()),
        case=case,
        branch_values=branches,
        inputs={"beta1": beta1, "beta2": beta2, "theta1": theta1, "theta2": theta2,
                "lambda": lam},
        notes=tuple(notes),
    )


def dim_simultaneous_inhom(
    beta1: float,
    beta2: float,
    tau1: TauFunction,
    tau2: TauFunction,
) -> DimensionReport:
    """Inhomogeneous variant: exponents are profiles, the value uses their
    minima (theta1, theta2); applicability needs the maxima (kappa1, kappa2).

    applicable:  beta2 > beta1^kappa1 and beta1 > beta2^kappa2 (strict).
    A weaker non-strict condition on the thetas, under which only the upper
    bound is supported, is reported as a note.
    """
    theta1, kappa1 = tau_extremes(tau1)
    theta2, kappa2 = tau_extremes(tau2)
    base = dim_simultaneous(beta1, beta2, theta1, theta2)
    applicable = beta2 > beta1**kappa1 and beta1 > beta2**kappa2
    upper_only = beta2 >= beta1**theta1 and beta1 >= beta2**theta2
    notes = list(base.notes)
    if not applicable:
        notes.append(
            "strict exponent condition fails (needs beta2 > beta1^kappa1 and "
            "beta1 > beta2^kappa2); value reported for reference only"
        )
        if upper_only:
            notes.append("non-strict condition on the minima holds: the value "
                         "still upper-bounds the dimension")
    return DimensionReport(
        value=base.value,
        case=base.case,
        branch_values=base.branch_values,
        inputs={**base.inputs, "kappa1": kappa1, "kappa2": kappa2},
        applicable=applicable,
        notes=tuple(notes),
    )


def dim_wang_li(beta: float, theta1: float, theta2: float) -> float:
    """Single-base reduction: min{2/(1+theta1), (2+theta2-theta1)/(1+theta2)}."""
    if beta <= 1:
        raise DomainError(f"beta must be > 1, got {beta}")
    return min(
        2.0 / (1.0 + theta1),
        (2.0 + theta2 - theta1) / (1.0 + theta2),
    )


# ---------------------------------------------------------------------------
# transference-principle calculator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MtpProblem:
    """Exponent data (a_k > 0, t_k >= 0), k = 1..d; t_k = 0 is the degenerate
    full-measure direction."""

    a: tuple[float, ...]
    t: tuple[float, ...]

    def __post_init__(self):
        if not self.a:
            raise DomainError("empty exponent vector")
        if len(self.a) != len(self.t):
            raise DomainError(
                f"length mismatch: {len(self.a)} growth vs {len(self.t)} shrink exponents"
            )
        if any(ak <= 0 for ak in self.a):
            raise DomainError(f"growth exponents must be positive: {self.a}")
        if any(tk < 0 for tk in self.t):
            raise DomainError(f"shrink exponents must be >= 0: {self.t}")

    @property
    def d(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class MtpResult:
    s: float
    argmin: tuple[float, ...]
    table: tuple[dict, ...]


def mtp_lower_bound(problem: MtpProblem) -> MtpResult:
    """min over candidate levels A of

        #K1 + #K2 + (sum_{K3} a_k - sum_{K2} t_k) / A

    where K1 = {k : a_k >= A}, K2 = {k : a_k + t_k <= A} \\ K1, K3 the rest,
    and A ranges over {a_k} union {a_k + t_k}.  The minimum is the dimension
    lower bound delivered by the transference argument; the per-A table is
    kept for reports and for sandwich checks against the closed forms.
    """
    a, t = problem.a, problem.t
    candidates = sorted({*a, *(ak + tk for ak, tk in zip(a, t))})
    rows = []
    for A in candidates:
        k1 = [k for k in range(problem.d) if a[k] >= A]
        k2 = [k for k in range(problem.d) if a[k] + t[k] <= A and k not in k1]
        k3 = [k for k in range(problem.d) if k not in k1 and k not in k2]
        s_a = len(k1) + len(k2) + (
            sum(a[k] for k in k3) - sum(t[k] for k in k2)
        ) / A
        rows.append(
            {
                "A": A,
                "K1": [k + 1 for k in k1],
                "K2": [k + 1 for k in k2],
                "K3": [k + 1 for k in k3],
                "s_A": s_a,
            }
        )
    s = min(r["s_A"] for r in rows)
    argmin = tuple(r["A"] for r in rows if r["s_A"] == s)
    return MtpResult(s=s, argmin=argmin, table=tuple(rows))


def mtp_problem_for_simultaneous(
    beta1: float, beta2: float, theta1: float, theta2: float, eps: float = 0.0
) -> MtpProblem:
    """Exponent data that the two-line lower bound feeds the calculator:
    a = ((1-eps) lambda, 1-eps), t = ((theta1+2 eps) lambda, theta2+2 eps);
    eps = 0 is the limiting instantiation used for sandwich checks."""
    _check_two_bases(beta1, beta2)
    if eps < 0 or eps >= 0.5:
        raise DomainError(f"eps must lie in [0, 0.5), got {eps}")
    lam = math.log(beta1) / math.log(beta2)
    return MtpProblem(
        a=((1.0 - eps) * lam, 1.0 - eps),
        t=((theta1 + 2.0 * eps) * lam, theta2 + 2.0 * eps),
    )


def mtp_matches_simultaneous(
    beta1: float,
    beta2: float,
    theta1: float,
    theta2: float,
    tol: float = 1e-9,
) -> tuple[bool, float, float]:
    """Sandwich check: calculator at eps=0 vs the closed three-regime formula.

    Returns (agree within tol, calculator value, formula value).
    """
    mtp = mtp_lower_bound(
        mtp_problem_for_simultaneous(beta1, beta2, theta1, theta2, eps=0.0)
    )
    formula = dim_simultaneous(beta1, beta2, theta1, theta2).value
    return abs(mtp.s - formula) <= tol, mtp.s, formula
