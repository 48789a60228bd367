"""Monte-Carlo measure experiments for the limsup hit sets.

Five set kinds, matching the hit scans in ``targets``:

  D  fixed point target:      |T^n x - f(x)|    < phi(n)
  R  return to start:         |T^n x - x|       < phi(n)
  W  planar Lipschitz target: |T^n x - g(x, y)| < phi(n)
  F  two lines, own points:   |T_i^n . - f_i(.)| < beta_i^(-n tau_i(.)), both
  G  two lines, planar maps:  same with g_i(x, y)

Samples are uniform on [0,1) or [0,1)^2, drawn in fixed chunks of 2048 from a
Philox generator keyed (seed, chunk index).  Chunk boundaries do not depend on
the thread count, so any --threads value reproduces the same counts bit for
bit.

Integer bases get special treatment.  float64 values are dyadic rationals, so
iterating T_2 collapses every orbit to exactly 0 within 53 steps and a target
at 0 then registers bogus hits at arbitrary depth.  Instead the orbit is read
off an i.i.d. uniform digit stream (the exact distribution of the digits of a
uniform point for integer beta): T^n x is the tail value of the stream, built
by a backward Horner pass with 64 guard digits beyond the window, giving every
orbit value an absolute error below base^-64.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import BetaBasis
from .errors import BudgetError, DomainError, PreconditionError
from .targets import (
    Const1D,
    LipschitzMap1D,
    LipschitzMap2D,
    RateFunction,
    TauFunction,
)

__all__ = ["MC_CHUNK", "MeasureExperiment", "mc_measure_dichotomy"]

MC_CHUNK = 2048
GUARD_DIGITS = 64
#: Cap on samples * N1 (per orbit line); beyond this the call refuses.
MC_CELL_BUDGET = 100_000_000

_SET_KINDS = ("D", "R", "W", "F", "G")
_BELOW_ONE = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class MeasureExperiment:
    """Outcome of one uniform-sampling hit experiment on a window."""

    kind: str
    sample_count: int
    seed: int
    window: tuple[int, int]
    hit_count: int
    hit_fraction: float
    series_convergent: bool | None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "window": list(self.window),
            "hit_count": self.hit_count,
            "hit_fraction": self.hit_fraction,
            "series_convergent": self.series_convergent,
        }


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _orbit_block(basis: BetaBasis, rng: np.random.Generator, n1: int, size: int):
    """Rows of orbit values: out[:, n] = T^n x for n = 0..n1, out[:, 0] = x."""
    b = float(basis.beta)
    out = np.empty((size, n1 + 1))
    if basis.is_integer_base:
        base = int(round(b))
        digits = rng.integers(0, base, size=(size, n1 + GUARD_DIGITS))
        v = np.zeros(size)
        for j in range(n1 + GUARD_DIGITS - 1, n1 - 1, -1):
            v = (digits[:, j] + v) / base
        np.minimum(v, _BELOW_ONE, out=v)
        out[:, n1] = v
        for n in range(n1 - 1, -1, -1):
            v = (digits[:, n] + v) / base
            np.minimum(v, _BELOW_ONE, out=v)
            out[:, n] = v
        return out
    v = rng.random(size)
    out[:, 0] = v
    for n in range(1, n1 + 1):
        t = v * b
        v = t - np.floor(t)
        np.minimum(v, _BELOW_ONE, out=v)
        out[:, n] = v
    return out


def _tau_column(tau: TauFunction, pts: np.ndarray) -> np.ndarray:
    return np.array([tau.value(float(p)) for p in pts])


def _phi_chunk_hits(kind, basis, target, thresholds, n0, n1, rng, size) -> int:
    orbit = _orbit_block(basis, rng, n1, size)
    x = orbit[:, 0]
    if kind == "D":
        fv = np.asarray(target(x), dtype=float)
    elif kind == "R":
        fv = x
    else:  # W: y is a passive second coordinate
        y = rng.random(size)
        fv = np.asarray(target(x, y), dtype=float)
    dist = np.abs(orbit[:, n0:] - fv[:, None])
    hit = (dist < thresholds[None, :]).any(axis=1)
    return int(hit.sum())


def _tau_chunk_hits(kind, basis1, basis2, target, target2, tau, tau2,
                    n0, n1, rng, size) -> int:
    ox = _orbit_block(basis1, rng, n1, size)
    oy = _orbit_block(basis2, rng, n1, size)
    x, y = ox[:, 0], oy[:, 0]
    if kind == "F":
        f1v = np.asarray(target(x), dtype=float)
        f2v = np.asarray(target2(y), dtype=float)
    else:  # G
        f1v = np.asarray(target(x, y), dtype=float)
        f2v = np.asarray(target2(x, y), dtype=float)
    ns = np.arange(n0, n1 + 1)
    th1 = np.exp(-np.outer(_tau_column(tau, x), ns) * math.log(float(basis1.beta)))
    th2 = np.exp(-np.outer(_tau_column(tau2, y), ns) * math.log(float(basis2.beta)))
    hit = (
        (np.abs(ox[:, n0:] - f1v[:, None]) < th1)
        & (np.abs(oy[:, n0:] - f2v[:, None]) < th2)
    ).any(axis=1)
    return int(hit.sum())


def mc_measure_dichotomy(
    basis: BetaBasis,
    kind: str,
    window: tuple[int, int],
    samples: int,
    seed: int = 0,
    *,
    target=None,
    target2=None,
    rate: RateFunction | None = None,
    tau: TauFunction | None = None,
    tau2: TauFunction | None = None,
    basis2: BetaBasis | None = None,
    threads: int = 1,
) -> MeasureExperiment:
    """Fraction of uniform samples with at least one hit for n in [N0, N1].

    Kinds D, R, W need ``rate`` (and D/W a target map; D defaults to the
    point 0).  Kinds F and G need both targets and ``tau`` (``tau2`` and
    ``basis2`` default to the first).  The result is reproducible bit for bit
    from (seed, config) for any ``threads``.
    """
    if kind not in _SET_KINDS:
        raise DomainError(
            f"unknown set kind {kind!r}; expected one of {', '.join(_SET_KINDS)}"
        )
    n0, n1 = int(window[0]), int(window[1])
    if not (1 <= n0 < n1):
        raise PreconditionError(f"window must satisfy 1 <= N0 < N1, got [{n0}, {n1}]")
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    if seed < 0 or seed >= 2**64:
        raise DomainError(f"seed must fit in an unsigned 64-bit word, got {seed}")
    if samples * n1 > MC_CELL_BUDGET:
        raise BudgetError(
            f"samples*N1 = {samples * n1} exceeds the {MC_CELL_BUDGET} cell cap"
        )

    if kind in ("D", "R", "W"):
        if rate is None:
            raise PreconditionError(f"kind {kind} needs a rate function phi")
        if kind == "D":
            if target is None:
                target = Const1D(0.0)
            if not isinstance(target, LipschitzMap1D):
                raise DomainError("kind D needs a one-argument target map")
        if kind == "W" and not isinstance(target, LipschitzMap2D):
            raise DomainError("kind W needs a two-argument target map")
        thresholds = np.array([rate.value(n) for n in range(n0, n1 + 1)])
        convergent = rate.convergent

        def run_chunk(i: int, size: int) -> int:
            return _phi_chunk_hits(
                kind, basis, target, thresholds, n0, n1, _chunk_rng(seed, i), size
            )

    else:
        if tau is None:
            raise PreconditionError(f"kind {kind} needs tau functions")
        tau2 = tau2 if tau2 is not None else tau
        basis2 = basis2 if basis2 is not None else basis
        want = LipschitzMap1D if kind == "F" else LipschitzMap2D
        if not (isinstance(target, want) and isinstance(target2, want)):
            arity = "one" if kind == "F" else "two"
            raise DomainError(f"kind {kind} needs two {arity}-argument target maps")
        # tau > 0 on [0,1] makes both threshold series geometric
        convergent = True

        def run_chunk(i: int, size: int) -> int:
            return _tau_chunk_hits(
                kind, basis, basis2, target, target2, tau, tau2,
                n0, n1, _chunk_rng(seed, i), size,
            )

    sizes = [
        min(MC_CHUNK, samples - i * MC_CHUNK)
        for i in range((samples + MC_CHUNK - 1) // MC_CHUNK)
    ]
    if threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(run_chunk, range(len(sizes)), sizes))
    else:
        counts = [run_chunk(i, s) for i, s in enumerate(sizes)]
    hit_count = sum(counts)
    return MeasureExperiment(
        kind=kind,
        sample_count=samples,
        seed=seed,
        window=(n0, n1),
        hit_count=hit_count,
        hit_fraction=hit_count / samples,
        series_convergent=convergent,
    )
