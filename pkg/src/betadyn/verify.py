"""Bundled property suites behind the ``verify`` CLI subcommand.

Each suite runs a fixed desk-scale budget and returns a report dict:
{"suite": name, "ok": bool, "checks": [{"name", "ok", "detail"}, ...]}.
Budgets here are chosen to finish in seconds; the test suite runs the larger
acceptance versions of the same properties.
"""

from __future__ import annotations

import math

import numpy as np

from .core import BetaBasis, cylinders, count_words, enumerate_words, renyi_bounds
from .covering import (
    critical_exponent_scan,
    full_gap_statistics,
    thm1_log_term,
    thm2_log_term,
)
from .dimension import (
    _branch_pair,
    dim_simultaneous,
    dim_wang_li,
    mtp_matches_simultaneous,
)
from .errors import DomainError
from .targets import (
    ConstTau,
    GeoRate,
    Identity1D,
    Lift2D,
    PowRate,
    hits_simultaneous,
    hits_simultaneous_inhom,
)

__all__ = ["SUITES", "run_suite"]

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
BETA_GRID = (GOLDEN, 1.9, 2.0, 2.5, math.e, 3.0)


def _check(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "ok": bool(ok), "detail": detail}


def _suite_renyi() -> list[dict]:
    checks = []
    worst = None
    ok = True
    for beta in BETA_GRID:
        basis = BetaBasis(beta)
        for n in range(1, 13):
            lo, hi = renyi_bounds(basis, n)
            c = count_words(basis, n)
            if not (lo <= c <= hi):
                ok = False
                worst = (beta, n, c, lo, hi)
    checks.append(
        _check(
            "count within geometric bounds (n <= 12)",
            ok,
            "all pairs pass" if ok else f"violated at {worst}",
        )
    )
    ok = True
    for beta in BETA_GRID:
        basis = BetaBasis(beta)
        for n in range(1, 9):
            if len(enumerate_words(basis, n)) != count_words(basis, n):
                ok = False
    checks.append(
        _check(
            "recursive count equals enumeration (n <= 8)",
            ok,
            "counts agree" if ok else "mismatch",
        )
    )
    return checks


def _suite_fullgaps() -> list[dict]:
    checks = []
    run_ok, tile_ok = True, True
    worst_run, worst_err = None, 0.0
    for beta in BETA_GRID:
        basis = BetaBasis(beta)
        for n in range(1, 9):
            stats = full_gap_statistics(basis, n)
            if stats["max_nonfull_run"] > n:
                run_ok = False
                worst_run = (beta, n, stats["max_nonfull_run"])
            cyls = cylinders(basis, n)
            err = abs(float(cyls[0].left))
            for a, b in zip(cyls, cyls[1:]):
                err = max(err, abs(float(a.right) - float(b.left)))
            err = max(err, abs(1.0 - float(cyls[-1].right)))
            worst_err = max(worst_err, err)
            if err >= 1e-12:
                tile_ok = False
    checks.append(
        _check(
            "max run of non-full cylinders <= n",
            run_ok,
            "bounded" if run_ok else f"violated at {worst_run}",
        )
    )
    checks.append(
        _check(
            "cylinders tile [0,1)",
            tile_ok,
            f"worst chaining error {worst_err:.3g}",
        )
    )
    return checks


def _suite_mtp_thm2() -> list[dict]:
    rng = np.random.default_rng(20240517)
    bad = 0
    worst = 0.0
    for _ in range(200):
        b1 = float(rng.uniform(1.2, 4.0))
        b2 = float(rng.uniform(b1, 4.0 + 1.0))
        t1 = float(rng.uniform(0.05, 2.0))
        t2 = float(rng.uniform(0.05, 2.0))
        agree, s_mtp, s_formula = mtp_matches_simultaneous(b1, b2, t1, t2)
        worst = max(worst, abs(s_mtp - s_formula))
        if not agree:
            bad += 1
    return [
        _check(
            "transference bound matches the closed formula (200 tuples)",
            bad == 0,
            f"max |difference| = {worst:.3g}",
        )
    ]


def _boundary_gap(case_a: str, case_b: str, lam: float, t1: float, t2: float) -> float:
    va = min(_branch_pair(case_a, lam, t1, t2).values())
    vb = min(_branch_pair(case_b, lam, t1, t2).values())
    return abs(va - vb)


def _suite_continuity() -> list[dict]:
    rng = np.random.default_rng(905)
    worst12 = 0.0
    for _ in range(200):
        t1 = float(rng.uniform(0.05, 2.0))
        t2 = float(rng.uniform(0.05, 2.0))
        lam = 1.0 / (1.0 + t1)  # regime boundary: (1+t1)*lam = 1
        worst12 = max(worst12, _boundary_gap("case1", "case2", lam, t1, t2))
    worst23 = 0.0
    for _ in range(200):
        t2 = float(rng.uniform(0.05, 2.0))
        t1 = float(rng.uniform(t2, t2 + 2.0))
        lam = (1.0 + t2) / (1.0 + t1)  # boundary: (1+t1)*lam = 1+t2
        worst23 = max(worst23, _boundary_gap("case2", "case3", lam, t1, t2))
    return [
        _check(
            "first/middle regime formulas agree on the boundary",
            worst12 < 1e-9,
            f"max gap {worst12:.3g}",
        ),
        _check(
            "middle/third regime formulas agree on the boundary",
            worst23 < 1e-9,
            f"max gap {worst23:.3g}",
        ),
    ]


def _suite_critical() -> list[dict]:
    b2, b3, b4 = BetaBasis(2.0), BetaBasis(3.0), BetaBasis(4.0)
    cases = [
        ("base 2, phi = 2^-n", lambda s, n: thm1_log_term(b2, PowRate(1.0, 2.0), s, n), 1.5),
        ("base 2, phi = 4^-n", lambda s, n: thm1_log_term(b2, GeoRate(1.0, 0.25), s, n), 4.0 / 3.0),
        ("base 3, phi = 3^-2n", lambda s, n: thm1_log_term(b3, PowRate(2.0, 3.0), s, n), 4.0 / 3.0),
        (
            "two lines (2, 4), theta 0.5",
            lambda s, n: thm2_log_term(b2, b4, 0.5, 0.5, "case1", 2, s, n),
            1.5,
        ),
    ]
    checks = []
    for name, fn, expect in cases:
        scan = critical_exponent_scan(fn, 1.1, 1.9)
        err = abs(scan.s_star - expect)
        checks.append(
            _check(
                f"critical exponent: {name}",
                err < 1e-5,
                f"s* = {scan.s_star:.8f}, |error| = {err:.3g}",
            )
        )
    return checks


def _suite_reduction() -> list[dict]:
    worst = 0.0
    for b in np.linspace(1.3, 4.0, 20):
        basis = float(b)
        for t1 in np.linspace(0.05, 1.8, 5):
            for t2 in np.linspace(t1, 2.2, 4):
                two = dim_simultaneous(basis, basis, float(t1), float(t2)).value
                one = dim_wang_li(basis, float(t1), float(t2))
                worst = max(worst, abs(two - one))
    checks = [
        _check(
            "equal-base formula collapses to the single-base one",
            worst < 1e-12,
            f"max |difference| = {worst:.3g}",
        )
    ]
    b1, b2 = BetaBasis(2.0), BetaBasis(3.0)
    same = True
    for x, y in ((0.37, 0.52), (1.0 / 3.0, 0.125), (0.9, 0.61)):
        a = hits_simultaneous(
            b1, b2, x, y, Identity1D(), Identity1D(), ConstTau(0.4), ConstTau(0.3), 40
        )
        b = hits_simultaneous_inhom(
            b1, b2, x, y,
            Lift2D(Identity1D(), "x"), Lift2D(Identity1D(), "y"),
            ConstTau(0.4), ConstTau(0.3), 40,
        )
        if a != b:
            same = False
    checks.append(
        _check(
            "separable planar targets reduce to the two-line scan",
            same,
            "record-for-record equal" if same else "records differ",
        )
    )
    return checks


SUITES = {
    "renyi": _suite_renyi,
    "fullgaps": _suite_fullgaps,
    "mtp-thm2": _suite_mtp_thm2,
    "continuity": _suite_continuity,
    "critical": _suite_critical,
    "reduction": _suite_reduction,
}


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise DomainError(
            f"unknown suite {name!r}; expected one of {', '.join(sorted(SUITES))}"
        )
    checks = SUITES[name]()
    return {
        "suite": name,
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
    }
