"""Approximation rates, Lipschitz targets, and orbit hit detection.

A "hit" at time n means the orbit point T^n x lands strictly within a
shrinking threshold of a target value that depends on the starting point:

* one line, fixed rate:        |T^n x - f(x)|        < phi(n)
* planar target, fixed rate:   |T^n x - g(x, y)|     < phi(n)
* two lines, exponent rates:   |T_i^n x_i - f_i(x_i)| < beta_i^(-n tau_i(x_i))

All comparisons are strict, so thresholds that underflow to zero simply
produce no hits.  On a single cylinder of order n the n-fold map is affine
with slope beta^n, which is what the solver and the hit-interval bracketing
exploit; both work on that affine form rather than iterating the orbit, so
their residuals do not inherit the beta^n error amplification of iteration.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    BetaBasis,
    CylinderInterval,
    cylinder_interval,
    is_admissible,
    is_full,
    t_iterate,
    _validate_word,
)
from .errors import DomainError, PreconditionError


def _clamp01(v):
    return np.minimum(1.0, np.maximum(0.0, v))


# ---------------------------------------------------------------------------
# rate functions phi(n)
# ---------------------------------------------------------------------------


class RateFunction:
    """Positive threshold sequence phi(n), n >= 1.

    Subclasses carry an analytic convergence flag for sum phi(n) (None when
    unknown) and, when defined, the closed-form decay exponent
    alpha = lim log_beta(1/phi(n)) / n against a query base beta.
    """

    convergent: bool | None = None

    def value(self, n: int) -> float:
        raise NotImplementedError

    def log_value(self, n: int) -> float:
        """Natural log of phi(n); overridden where exp/log would underflow."""
        return math.log(self.value(n))

    def alpha_analytic(self, beta: float) -> float | None:
        return None


@dataclass(frozen=True)
class PowRate(RateFunction):
    """phi(n) = base^(-n tau), defined against a named bound base."""

    tau: float
    base: float

    def __post_init__(self):
        if self.base <= 1.0:
            raise DomainError(f"pow rate base must be > 1, got {self.base}")
        if self.tau < 0:
            raise DomainError(f"pow rate exponent must be >= 0, got {self.tau}")

    @property
    def convergent(self) -> bool:  # type: ignore[override]
        return self.tau > 0

    def value(self, n: int) -> float:
        return math.exp(-n * self.tau * math.log(self.base))

    def log_value(self, n: int) -> float:
        return -n * self.tau * math.log(self.base)

    def alpha_analytic(self, beta: float) -> float:
        return self.tau * math.log(self.base) / math.log(beta)


@dataclass(frozen=True)
class GeoRate(RateFunction):
    """phi(n) = c * rho^n with 0 < rho < 1."""

    c: float
    rho: float
    convergent = True

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise DomainError(f"geo ratio must lie in (0,1), got {self.rho}")
        if self.c <= 0:
            raise DomainError(f"geo scale must be positive, got {self.c}")

    def value(self, n: int) -> float:
        return self.c * self.rho**n

    def log_value(self, n: int) -> float:
        return math.log(self.c) + n * math.log(self.rho)

    def alpha_analytic(self, beta: float) -> float:
        return math.log(1.0 / self.rho) / math.log(beta)


@dataclass(frozen=True)
class PolyRate(RateFunction):
    """phi(n) = n^(-gamma)."""

    gamma: float

    def __post_init__(self):
        if self.gamma <= 0:
            raise DomainError(f"poly exponent must be positive, got {self.gamma}")

    @property
    def convergent(self) -> bool:  # type: ignore[override]
        return self.gamma > 1

    def value(self, n: int) -> float:
        return float(n) ** (-self.gamma)

    def alpha_analytic(self, beta: float) -> float:
        return 0.0


@dataclass(frozen=True)
class HarmonicLogRate(RateFunction):
    """phi(n) = 1 / (n * log^2(n+1)): summable yet with zero decay exponent."""

    convergent = True

    def value(self, n: int) -> float:
        return 1.0 / (n * math.log(n + 1) ** 2)

    def alpha_analytic(self, beta: float) -> float:
        return 0.0


class TableRate(RateFunction):
    """Explicit finite table of thresholds; convergence unknown by design."""

    convergent = None

    def __init__(self, values: Sequence[float]):
        vals = tuple(float(v) for v in values)
        if not vals or any(v <= 0 for v in vals):
            raise DomainError("table rate needs a nonempty list of positive values")
        self.values = vals

    def __len__(self) -> int:
        return len(self.values)

    def value(self, n: int) -> float:
        if not (1 <= n <= len(self.values)):
            raise DomainError(
                f"table rate defined for n in [1, {len(self.values)}], got {n}"
            )
        return self.values[n - 1]

    def __repr__(self) -> str:
        return f"TableRate({list(self.values)!r})"


# ---------------------------------------------------------------------------
# Lipschitz targets
# ---------------------------------------------------------------------------


class LipschitzMap1D:
    """Target f: [0,1] -> [0,1] with a known Lipschitz bound."""

    lipschitz_bound: float

    def __call__(self, x):
        raise NotImplementedError


@dataclass(frozen=True)
class Const1D(LipschitzMap1D):
    c: float
    lipschitz_bound = 0.0

    def __post_init__(self):
        if not (0.0 <= self.c <= 1.0):
            raise DomainError(f"constant target must lie in [0,1], got {self.c}")

    def __call__(self, x):
        return self.c if np.isscalar(x) else np.full_like(np.asarray(x, float), self.c)


@dataclass(frozen=True)
class Identity1D(LipschitzMap1D):
    lipschitz_bound = 1.0

    def __call__(self, x):
        return x


@dataclass(frozen=True)
class Affine1D(LipschitzMap1D):
    """x -> clamp(a*x + b) into [0,1]; clamping is 1-Lipschitz so |a| bounds."""

    a: float
    b: float

    @property
    def lipschitz_bound(self) -> float:  # type: ignore[override]
        return abs(self.a)

    def __call__(self, x):
        return _clamp01(self.a * x + self.b)


class LipschitzMap2D:
    """Target g: [0,1]^2 -> [0,1] with a known Lipschitz bound (Euclidean)."""

    lipschitz_bound: float

    def __call__(self, x, y):
        raise NotImplementedError


@dataclass(frozen=True)
class Const2D(LipschitzMap2D):
    c: float
    lipschitz_bound = 0.0

    def __post_init__(self):
        if not (0.0 <= self.c <= 1.0):
            raise DomainError(f"constant target must lie in [0,1], got {self.c}")

    def __call__(self, x, y):
        return self.c if np.isscalar(x) else np.full_like(np.asarray(x, float), self.c)


@dataclass(frozen=True)
class Affine2D(LipschitzMap2D):
    """(x, y) -> clamp(a*x + b*y + c); Euclidean Lipschitz bound hypot(a, b)."""

    a: float
    b: float
    c: float

    @property
    def lipschitz_bound(self) -> float:  # type: ignore[override]
        return math.hypot(self.a, self.b)

    def __call__(self, x, y):
        return _clamp01(self.a * x + self.b * y + self.c)


@dataclass(frozen=True)
class Lift2D(LipschitzMap2D):
    """One-variable target viewed as planar: g(x, y) = f(x) or f(y).

    Evaluates through the wrapped map unchanged, so scans that reduce a
    planar problem to a line reproduce the 1D records bit for bit.
    """

    f: LipschitzMap1D
    coord: str = "x"

    def __post_init__(self):
        if self.coord not in ("x", "y"):
            raise DomainError(f"coord must be 'x' or 'y', got {self.coord!r}")

    @property
    def lipschitz_bound(self) -> float:  # type: ignore[override]
        return self.f.lipschitz_bound

    def __call__(self, x, y):
        return self.f(x if self.coord == "x" else y)


# ---------------------------------------------------------------------------
# exponent profiles tau(x)
# ---------------------------------------------------------------------------


class TauFunction:
    """Positive exponent profile tau on [0,1] with extremes theta <= kappa."""

    def value(self, x: float) -> float:
        raise NotImplementedError

    # analytic extremes; None signals "use the grid fallback"
    def extremes(self) -> tuple[float, float] | None:
        return None


@dataclass(frozen=True)
class ConstTau(TauFunction):
    theta: float

    def __post_init__(self):
        if self.theta <= 0:
            raise DomainError(f"tau must be positive, got {self.theta}")

    def value(self, x: float) -> float:
        return self.theta

    def extremes(self) -> tuple[float, float]:
        return self.theta, self.theta


@dataclass(frozen=True)
class AffineClampedTau(TauFunction):
    """tau(x) = max(a*x + b, floor) with floor > 0 guaranteeing positivity."""

    a: float
    b: float
    floor: float

    def __post_init__(self):
        if self.floor <= 0:
            raise DomainError(f"tau floor must be positive, got {self.floor}")

    def value(self, x: float) -> float:
        return max(self.a * x + self.b, self.floor)

    def extremes(self) -> tuple[float, float]:
        # the affine part is monotone, so endpoints decide before clamping
        v0, v1 = self.b, self.a + self.b
        return max(min(v0, v1), self.floor), max(max(v0, v1), self.floor)


# ---------------------------------------------------------------------------
# hit scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HitRecord:
    """One hit time with its distance(s) and threshold(s)."""

    n: int
    distances: tuple[float, ...]
    thresholds: tuple[float, ...]


def _check_scan_args(n_max: int) -> None:
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")


def _exp_threshold(beta: float, n: int, tau_x: float) -> float:
    # beta^(-n tau); exp underflow gives 0.0, and a strict comparison against
    # 0.0 never fires, which is exactly the guaranteed-empty behavior wanted
    return math.exp(-n * tau_x * math.log(beta))


def _warn_base_order(basis1: BetaBasis, basis2: BetaBasis) -> None:
    # the two-line machinery assumes beta2 >= beta1; scans still run when the
    # order is flipped, but downstream dimension formulas would not apply
    if float(basis2.beta) < float(basis1.beta):
        warnings.warn(
            f"basis order beta2={float(basis2.beta):.6g} < "
            f"beta1={float(basis1.beta):.6g}; results are computed as given "
            "but the standing assumption beta2 >= beta1 is violated",
            UserWarning,
            stacklevel=3,
        )


def hits_1d(
    basis: BetaBasis,
    x,
    target: LipschitzMap1D,
    rate: RateFunction,
    n_max: int,
) -> list[HitRecord]:
    """Times n in [1, n_max] with |T^n x - f(x)| < phi(n).

    The target is evaluated once, at the starting point.
    """
    _check_scan_args(n_max)
    orbit = t_iterate(basis, x, n_max)
    fx = target(orbit[0])
    out = []
    for n in range(1, n_max + 1):
        dist = abs(orbit[n] - fx)
        thr = rate.value(n)
        if dist < thr:
            out.append(HitRecord(n=n, distances=(float(dist),), thresholds=(float(thr),)))
    return out


def hits_inhom_planar(
    basis: BetaBasis,
    x,
    y,
    target: LipschitzMap2D,
    rate: RateFunction,
    n_max: int,
) -> list[HitRecord]:
    """Times n with |T^n x - g(x, y)| < phi(n); only x evolves, y is a parameter."""
    _check_scan_args(n_max)
    if not (0 <= y <= 1):
        raise DomainError(f"y={y} outside [0, 1]")
    orbit = t_iterate(basis, x, n_max)
    gxy = target(orbit[0], y)
    out = []
    for n in range(1, n_max + 1):
        dist = abs(orbit[n] - gxy)
        thr = rate.value(n)
        if dist < thr:
            out.append(HitRecord(n=n, distances=(float(dist),), thresholds=(float(thr),)))
    return out


def hits_simultaneous(
    basis1: BetaBasis,
    basis2: BetaBasis,
    x,
    y,
    f1: LipschitzMap1D,
    f2: LipschitzMap1D,
    tau1: TauFunction,
    tau2: TauFunction,
    n_max: int,
) -> list[HitRecord]:
    """Times n where both lines hit: |T_i^n . - f_i(.)| < beta_i^(-n tau_i(.))."""
    _check_scan_args(n_max)
    _warn_base_order(basis1, basis2)
    ox = t_iterate(basis1, x, n_max)
    oy = t_iterate(basis2, y, n_max)
    f1x, f2y = f1(ox[0]), f2(oy[0])
    t1x, t2y = tau1.value(float(ox[0])), tau2.value(float(oy[0]))
    b1, b2 = float(basis1.beta), float(basis2.beta)
    out = []
    for n in range(1, n_max + 1):
        d1 = abs(ox[n] - f1x)
        d2 = abs(oy[n] - f2y)
        th1 = _exp_threshold(b1, n, t1x)
        th2 = _exp_threshold(b2, n, t2y)
        if d1 < th1 and d2 < th2:
            out.append(
                HitRecord(
                    n=n,
                    distances=(float(d1), float(d2)),
                    thresholds=(float(th1), float(th2)),
                )
            )
    return out


def hits_simultaneous_inhom(
    basis1: BetaBasis,
    basis2: BetaBasis,
    x,
    y,
    g1: LipschitzMap2D,
    g2: LipschitzMap2D,
    tau1: TauFunction,
    tau2: TauFunction,
    n_max: int,
) -> list[HitRecord]:
    """Planar-target version: both |T_i^n . - g_i(x, y)| < beta_i^(-n tau_i)."""
    _check_scan_args(n_max)
    _warn_base_order(basis1, basis2)
    ox = t_iterate(basis1, x, n_max)
    oy = t_iterate(basis2, y, n_max)
    g1v, g2v = g1(ox[0], oy[0]), g2(ox[0], oy[0])
    t1x, t2y = tau1.value(float(ox[0])), tau2.value(float(oy[0]))
    b1, b2 = float(basis1.beta), float(basis2.beta)
    out = []
    for n in range(1, n_max + 1):
        d1 = abs(ox[n] - g1v)
        d2 = abs(oy[n] - g2v)
        th1 = _exp_threshold(b1, n, t1x)
        th2 = _exp_threshold(b2, n, t2y)
        if d1 < th1 and d2 < th2:
            out.append(
                HitRecord(
                    n=n,
                    distances=(float(d1), float(d2)),
                    thresholds=(float(th1), float(th2)),
                )
            )
    return out


# ---------------------------------------------------------------------------
# cylinder-local solver and hit-interval bracketing
# ---------------------------------------------------------------------------


def _bisect_increasing(fn, lo: float, hi: float, width: float, max_iter: int = 200):
    """Root of an increasing fn on [lo, hi] with fn(lo) <= 0 <= fn(hi)."""
    flo = fn(lo)
    if flo >= 0.0:
        return lo
    fhi = fn(hi)
    if fhi <= 0.0:
        return hi
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= width:
            break
        if fn(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_target_point(
    basis: BetaBasis,
    word: Sequence[int],
    target: LipschitzMap1D,
    eps: float,
) -> float:
    """Point x in the full cylinder of ``word`` with |T^n x - f(x)| < eps.

    On a full cylinder [a, a + beta^-n) the n-fold map is the affine
    x -> beta^n (x - a), so the residual r(x) = beta^n (x - a) - f(x) is
    strictly increasing whenever beta^n exceeds the Lipschitz bound, with
    r(a) <= 0 <= r at the right closure; a bisection pins the root.  When the
    root lands on either closure the returned point backs off into the
    interior by beta^-n * 1e-9, shrinking geometrically until the residual
    clears eps.  The right closure is excluded from the half-open cylinder;
    the left one is included but sits on a digit boundary, where the float
    orbit of the endpoint itself can wrap to 1 - ulp instead of 0, so the
    solver never returns a point closer to an endpoint than the residual
    tolerance warrants.
    """
    w = _validate_word(basis, word)
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if not is_full(basis, w):
        raise PreconditionError(
            f"word {w} is not full for beta={basis.beta}; the solver needs the "
            "whole residual range [0,1) on the cylinder"
        )
    n = len(w)
    bn = float(basis.beta) ** n
    lip = target.lipschitz_bound
    if not bn > lip:
        raise PreconditionError(
            f"beta^n = {bn:.6g} must exceed the Lipschitz bound {lip:.6g}"
        )
    cyl = cylinder_interval(basis, w)
    a = float(cyl.left)
    width_cyl = bn**-1  # = beta^-n, the full-cylinder width
    right = a + width_cyl

    def residual(x: float) -> float:
        return bn * (x - a) - float(target(x))

    width = min(width_cyl * 1e-12, 0.5 * eps / (bn + lip + 1.0))
    x = _bisect_increasing(residual, a, right, width)

    offset = width_cyl * 1e-9
    if x >= right - offset:
        # root at (or beyond) the excluded right endpoint
        for _ in range(200):
            x = right - offset
            if abs(residual(x)) < eps:
                return x
            offset *= 0.5
        raise PreconditionError(
            f"eps={eps} below the float resolution of beta^n near the endpoint"
        )
    if x - a <= offset:
        # root at the left endpoint (f vanishes there, e.g. a clamped target
        # that is zero on the whole cylinder); the endpoint itself is a digit
        # boundary and its float orbit is unstable, so step inside
        for _ in range(200):
            x = a + offset
            if abs(residual(x)) < eps:
                return x
            offset *= 0.5
        raise PreconditionError(
            f"eps={eps} below the float resolution of beta^n near the endpoint"
        )
    if abs(residual(x)) >= eps:
        raise PreconditionError(
            f"eps={eps} below the attainable residual {abs(residual(x)):.3g} "
            "at this order under float64"
        )
    return x


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def is_empty(self) -> bool:
        return not (self.lo < self.hi)

    @property
    def length(self) -> float:
        return max(0.0, self.hi - self.lo)

    def contains(self, x: float) -> bool:
        return self.lo <= x < self.hi


EMPTY_INTERVAL = Interval(0.0, 0.0)


@dataclass(frozen=True)
class HitIntervalBracket:
    """Outer/inner bracket of {x in cylinder : |T^n x - f(x)| < beta^(-n tau(x))}.

    outer uses the slowest exponent theta (a superset), inner the fastest
    kappa (a subset); for constant tau the two coincide.
    """

    word: tuple[int, ...]
    outer: Interval
    inner: Interval
    threshold_outer: float
    threshold_inner: float


def approximate_hit_interval(
    basis: BetaBasis,
    word: Sequence[int],
    target: LipschitzMap1D,
    tau: TauFunction,
) -> HitIntervalBracket:
    """Bracket the time-n hit set on the cylinder of ``word`` (any admissible
    word, full or not).

    Requires beta^n > 2 * lipschitz_bound so the residual slope stays above
    beta^n / 2; that also gives the outer-diameter law
    |outer| <= 2 * beta^(-n theta) / (beta^n - L) <= 4 beta^(-n(1+theta)).
    Thresholds that underflow to zero yield empty intervals.
    """
    w = _validate_word(basis, word)
    if not is_admissible(basis, w):
        raise PreconditionError(f"word {w} is not admissible for beta={basis.beta}")
    n = len(w)
    bn = float(basis.beta) ** n
    lip = target.lipschitz_bound
    if not bn > 2.0 * lip:
        raise PreconditionError(
            f"beta^n = {bn:.6g} must exceed twice the Lipschitz bound {lip:.6g}"
        )
    theta, kappa = tau_extremes(tau)
    b = float(basis.beta)
    t_out = _exp_threshold(b, n, theta)
    t_in = _exp_threshold(b, n, kappa)

    cyl = cylinder_interval(basis, w)
    a, right = float(cyl.left), float(cyl.right)

    def residual(x: float) -> float:
        return bn * (x - a) - float(target(x))

    def band(t: float) -> Interval:
        if t <= 0.0:
            return EMPTY_INTERVAL
        # residual is increasing; the band {|r| < t} is an interval
        if residual(right) <= -t:
            return EMPTY_INTERVAL
        width = (right - a) * 1e-12
        lo = a if residual(a) > -t else _bisect_increasing(
            lambda u: residual(u) + t, a, right, width
        )
        hi = right if residual(right) < t else _bisect_increasing(
            lambda u: residual(u) - t, a, right, width
        )
        return Interval(lo, hi) if lo < hi else EMPTY_INTERVAL

    return HitIntervalBracket(
        word=w,
        outer=band(t_out),
        inner=band(t_in),
        threshold_outer=t_out,
        threshold_inner=t_in,
    )


def tau_extremes(tau: TauFunction) -> tuple[float, float]:
    """(theta, kappa) = (min, max) of tau on [0, 1], analytic when available."""
    ext = tau.extremes()
    if ext is not None:
        theta, kappa = ext
    else:
        theta, kappa = _grid_extremes(tau)
    if theta <= 0:
        raise DomainError(f"tau must stay positive on [0,1]; min found {theta}")
    return theta, kappa


def _grid_extremes(tau: TauFunction, points: int = 10_000) -> tuple[float, float]:
    """Grid search plus local ternary refinement; heuristic fallback."""
    xs = [i / (points - 1) for i in range(points)]
    vals = [tau.value(x) for x in xs]
    lo_i = min(range(points), key=vals.__getitem__)
    hi_i = max(range(points), key=vals.__getitem__)

    def refine(i: int, sign: float) -> float:
        lo = xs[max(0, i - 1)]
        hi = xs[min(points - 1, i + 1)]
        for _ in range(60):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if sign * tau.value(m1) < sign * tau.value(m2):
                hi = m2
            else:
                lo = m1
        return tau.value(0.5 * (lo + hi))

    return refine(lo_i, 1.0), refine(hi_i, -1.0)
