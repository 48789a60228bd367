"""Command-line surface.

Subcommands: expand, cylinders, hits, dim, mtp, content-scan, mc-measure,
verify.  Artifacts go to stdout or --out; stderr carries diagnostics only.
Exit codes: 0 success, 1 failed verification, 2 validation error, 3
budget/resource refusal.

Grammars shared by flags and config files:
  rate    pow:TAU[:BASE] | geo:C:RHO | poly:GAMMA | harmonic-log | table:V1,V2,...
  target  const:C | id | affine:A:B          (one-argument kinds D, F)
          const:C | id | id:y | affine:A:B | affine2:A:B:C   (two-argument W, G)
  tau     const:THETA | affine:A:B:FLOOR

A JSON --config document overrides flags of the same name; the canonical
experiment keys set_kind, bases, targets, rates, taus, window are accepted
where they apply.  Unknown keys are rejected.  The env var BETADYN_BUDGET
caps enumeration size for cylinder dumps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .core import (
    BetaBasis,
    DEFAULT_WORD_BUDGET,
    cylinders,
    digits,
    t_iterate,
)
from .covering import (
    content_terms_thm1,
    content_terms_thm2,
    critical_exponent_scan,
    mc_measure_dichotomy,
    thm1_log_term,
    thm2_log_term,
)
from .dimension import (
    MtpProblem,
    alpha_exponent,
    classify_simultaneous,
    dim_inhom_planar,
    dim_shrinking_target,
    dim_simultaneous,
    dim_simultaneous_inhom,
    dim_wang_li,
    mtp_lower_bound,
)
from .errors import BetadynError, BudgetError, DomainError
from .serialize import (
    content_csv,
    content_summary,
    cylinders_csv,
    hits_csv,
    json_dumps,
)
from .targets import (
    Affine1D,
    Affine2D,
    AffineClampedTau,
    Const1D,
    Const2D,
    ConstTau,
    GeoRate,
    HarmonicLogRate,
    Identity1D,
    Lift2D,
    PolyRate,
    PowRate,
    TableRate,
    hits_1d,
    hits_inhom_planar,
    hits_simultaneous,
    hits_simultaneous_inhom,
)
from .verify import SUITES, run_suite

__all__ = ["main"]


# ---------------------------------------------------------------------------
# value and grammar parsing
# ---------------------------------------------------------------------------


def _parse_number(v):
    """Accept 2.5, "2.5", "5/2" (exact), or a Fraction; '/' selects exact."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, float)):
        return float(v)
    s = str(v).strip()
    if "/" in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"bad rational literal {s!r}: {e}") from None
    try:
        return float(s)
    except ValueError:
        raise DomainError(f"bad numeric literal {s!r}") from None


def _split_spec(spec: str, name: str, counts: tuple[int, ...]) -> list[str]:
    parts = str(spec).split(":")
    if len(parts) - 1 not in counts:
        raise DomainError(f"bad {name} grammar {spec!r}")
    return parts


def _parse_rate(spec, default_base: float):
    s = str(spec).strip()
    kind = s.split(":", 1)[0]
    if kind == "pow":
        p = _split_spec(s, "rate", (1, 2))
        base = float(p[2]) if len(p) == 3 else float(default_base)
        return PowRate(float(p[1]), base)
    if kind == "geo":
        p = _split_spec(s, "rate", (2,))
        return GeoRate(float(p[1]), float(p[2]))
    if kind == "poly":
        p = _split_spec(s, "rate", (1,))
        return PolyRate(float(p[1]))
    if kind == "harmonic-log":
        _split_spec(s, "rate", (0,))
        return HarmonicLogRate()
    if kind == "table":
        p = _split_spec(s, "rate", (1,))
        return TableRate(tuple(float(t) for t in p[1].split(",")))
    raise DomainError(f"unknown rate family {kind!r} in {spec!r}")


def _parse_target_1d(spec):
    s = str(spec).strip()
    kind = s.split(":", 1)[0]
    if s == "id":
        return Identity1D()
    if kind == "const":
        p = _split_spec(s, "target", (1,))
        return Const1D(float(p[1]))
    if kind == "affine":
        p = _split_spec(s, "target", (2,))
        return Affine1D(float(p[1]), float(p[2]))
    raise DomainError(f"unknown one-argument target {spec!r}")


def _parse_target_2d(spec):
    s = str(spec).strip()
    kind = s.split(":", 1)[0]
    if s == "id" or s == "id:x":
        return Lift2D(Identity1D(), "x")
    if s == "id:y":
        return Lift2D(Identity1D(), "y")
    if kind == "const":
        p = _split_spec(s, "target", (1,))
        return Const2D(float(p[1]))
    if kind == "affine":
        p = _split_spec(s, "target", (2,))
        return Lift2D(Affine1D(float(p[1]), float(p[2])), "x")
    if kind == "affine2":
        p = _split_spec(s, "target", (3,))
        return Affine2D(float(p[1]), float(p[2]), float(p[3]))
    raise DomainError(f"unknown two-argument target {spec!r}")


def _parse_tau(spec):
    s = str(spec).strip()
    kind = s.split(":", 1)[0]
    if kind == "const":
        p = _split_spec(s, "tau", (1,))
        return ConstTau(float(p[1]))
    if kind == "affine":
        p = _split_spec(s, "tau", (3,))
        return AffineClampedTau(float(p[1]), float(p[2]), float(p[3]))
    raise DomainError(f"unknown tau family {spec!r}")


def _parse_window(v) -> tuple[int, int]:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return int(v[0]), int(v[1])
    parts = str(v).split(":")
    if len(parts) != 2:
        raise DomainError(f"window must be N0:N1, got {v!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise DomainError(f"window must be N0:N1 with integers, got {v!r}") from None


def _parse_vector(v) -> tuple[float, ...]:
    if isinstance(v, (list, tuple)):
        return tuple(float(t) for t in v)
    try:
        return tuple(float(t) for t in str(v).split(","))
    except ValueError:
        raise DomainError(f"bad vector literal {v!r}") from None


def _enumeration_budget() -> int:
    raw = os.environ.get("BETADYN_BUDGET")
    if raw is None:
        return DEFAULT_WORD_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"BETADYN_BUDGET must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# config documents
# ---------------------------------------------------------------------------


def _alias_set_kind(args, v):
    args.set = str(v)


def _alias_bases(args, v):
    vals = v if isinstance(v, (list, tuple)) else [v]
    if len(vals) not in (1, 2):
        raise DomainError("config bases must hold one or two entries")
    args.beta = vals[0]
    if len(vals) == 2:
        args.beta2 = vals[1]


def _alias_targets(args, v):
    vals = v if isinstance(v, (list, tuple)) else [v]
    if len(vals) not in (1, 2):
        raise DomainError("config targets must hold one or two entries")
    args.target = str(vals[0])
    if len(vals) == 2:
        args.target2 = str(vals[1])


def _alias_rates(args, v):
    vals = v if isinstance(v, (list, tuple)) else [v]
    if len(vals) != 1:
        raise DomainError("config rates must hold one entry")
    args.phi = str(vals[0])


def _alias_taus(args, v):
    vals = v if isinstance(v, (list, tuple)) else [v]
    if len(vals) not in (1, 2):
        raise DomainError("config taus must hold one or two entries")
    args.tau = str(vals[0])
    if len(vals) == 2:
        args.tau2 = str(vals[1])


_EXPERIMENT_ALIASES = {
    "set_kind": _alias_set_kind,
    "bases": _alias_bases,
    "targets": _alias_targets,
    "rates": _alias_rates,
    "taus": _alias_taus,
}

_CONFIG_ALIASES = {
    "hits": _EXPERIMENT_ALIASES,
    "mc-measure": _EXPERIMENT_ALIASES,
    "content-scan": {"bases": _alias_bases, "rates": _alias_rates},
}


def _apply_config(args, parser: argparse.ArgumentParser) -> None:
    path = Path(args.config)
    try:
        data = json.loads(path.read_text())
    except OSError as e:
        raise DomainError(f"cannot read config {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise DomainError(f"config {path} is not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise DomainError(f"config {path} must hold a JSON object")
    actions = {
        a.dest: a for a in parser._actions if a.dest not in ("help", "config")
    }
    aliases = _CONFIG_ALIASES.get(args.cmd, {})
    for key, value in data.items():
        if key in aliases:
            aliases[key](args, value)
        elif key in actions:
            typ = actions[key].type
            if typ is not None and value is not None:
                try:
                    value = typ(value)
                except (TypeError, ValueError) as e:
                    raise DomainError(
                        f"config field {key!r}: bad value {value!r} ({e})"
                    ) from None
            setattr(args, key, value)
        else:
            raise DomainError(
                f"unknown config field {key!r} for subcommand {args.cmd!r}"
            )


# ---------------------------------------------------------------------------
# subcommand bodies; each returns (artifact text, exit code, figure payload)
# ---------------------------------------------------------------------------


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise DomainError(
            "missing required option(s): "
            + ", ".join("--" + n for n in missing)
            + " (flags or config fields)"
        )


def _require_format(args, allowed: tuple[str, ...]) -> str:
    fmt = args.format
    if fmt not in allowed:
        raise DomainError(
            f"format {fmt!r} not supported here; choose from {', '.join(allowed)}"
        )
    return fmt


def _exactness(basis: BetaBasis) -> str:
    return "exact" if basis.is_exact else "float"


def _cmd_expand(args):
    _need(args, "beta", "x", "n")
    beta = _parse_number(args.beta)
    x = _parse_number(args.x)
    _require_format(args, ("json",))
    if args.n < 1:
        raise DomainError(f"--n must be >= 1, got {args.n}")
    basis = BetaBasis(beta)
    ds = digits(basis, x, args.n)
    orbit = t_iterate(basis, x, args.n)
    doc = {
        "beta": float(basis.beta),
        "x": float(x),
        "n": args.n,
        "digits": list(ds),
        "orbit": [float(v) for v in orbit],
        "provenance": _exactness(basis),
    }
    if basis.is_exact:
        doc["beta_exact"] = str(basis.beta)
        doc["orbit_exact"] = [str(Fraction(v)) for v in orbit]
    return json_dumps(doc), 0, None


def _cmd_cylinders(args):
    _need(args, "beta", "n")
    beta = _parse_number(args.beta)
    fmt = _require_format(args, ("json", "csv"))
    basis = BetaBasis(beta)
    cyls = cylinders(basis, args.n, budget=_enumeration_budget())
    if args.full_only:
        cyls = [c for c in cyls if c.is_full]
    fig = ("cylinders", cyls) if args.fig else None
    if fmt == "csv":
        return cylinders_csv(cyls), 0, fig
    doc = {
        "beta": float(basis.beta),
        "n": args.n,
        "count": len(cyls),
        "full_count": sum(1 for c in cyls if c.is_full),
        "provenance": _exactness(basis),
        "cylinders": [
            {
                "word": list(c.word),
                "left": float(c.left),
                "right": float(c.right),
                "length": float(c.length),
                "is_full": c.is_full,
            }
            for c in cyls
        ],
    }
    if basis.is_exact:
        for c, row in zip(cyls, doc["cylinders"]):
            row["left_exact"] = str(Fraction(c.left))
            row["right_exact"] = str(Fraction(c.right))
    return json_dumps(doc), 0, fig


def _scan_hits(args):
    _need(args, "set", "beta", "x")
    basis = BetaBasis(_parse_number(args.beta))
    kind = args.set
    x = float(_parse_number(args.x))
    if kind in ("D", "R", "W"):
        if args.phi is None:
            raise DomainError(f"set {kind} needs --phi")
        rate = _parse_rate(args.phi, float(basis.beta))
        if kind == "D":
            target = _parse_target_1d(args.target if args.target else "const:0")
            return hits_1d(basis, x, target, rate, args.n_max)
        if kind == "R":
            return hits_1d(basis, x, Identity1D(), rate, args.n_max)
        if args.target is None or args.y is None:
            raise DomainError("set W needs --target and --y")
        return hits_inhom_planar(
            basis, x, float(_parse_number(args.y)),
            _parse_target_2d(args.target), rate, args.n_max,
        )
    if args.tau is None:
        raise DomainError(f"set {kind} needs --tau")
    if args.y is None:
        raise DomainError(f"set {kind} needs --y")
    basis2 = BetaBasis(_parse_number(args.beta2)) if args.beta2 else basis
    y = float(_parse_number(args.y))
    tau = _parse_tau(args.tau)
    tau2 = _parse_tau(args.tau2) if args.tau2 else tau
    t1_spec = args.target if args.target else "id"
    t2_spec = args.target2 if args.target2 else t1_spec
    if kind == "F":
        return hits_simultaneous(
            basis, basis2, x, y,
            _parse_target_1d(t1_spec), _parse_target_1d(t2_spec),
            tau, tau2, args.n_max,
        )
    return hits_simultaneous_inhom(
        basis, basis2, x, y,
        _parse_target_2d(t1_spec), _parse_target_2d(t2_spec),
        tau, tau2, args.n_max,
    )


def _cmd_hits(args):
    fmt = _require_format(args, ("json", "csv"))
    records = _scan_hits(args)
    pairs = 2 if args.set in ("F", "G") else 1
    fig = ("hits", (records, args.n_max)) if args.fig else None
    if fmt == "csv":
        return hits_csv(records, pairs=pairs), 0, fig
    doc = {
        "set": args.set,
        "n_max": args.n_max,
        "hit_count": len(records),
        "provenance": "float",
        "hits": [
            {
                "n": r.n,
                "distances": list(r.distances),
                "thresholds": list(r.thresholds),
            }
            for r in records
        ],
    }
    return json_dumps(doc), 0, fig


def _cmd_dim(args):
    _require_format(args, ("json",))
    mode = args.mode
    if mode in ("shrinking", "planar"):
        if args.beta is None or args.phi is None:
            raise DomainError(f"dim {mode} needs --beta and --phi")
        beta = float(_parse_number(args.beta))
        rate = _parse_rate(args.phi, beta)
        alpha = alpha_exponent(rate, beta, horizon=args.horizon)
        value = (
            dim_shrinking_target(alpha.value)
            if mode == "shrinking"
            else dim_inhom_planar(alpha.value)
        )
        doc = {
            "value": value,
            "alpha": alpha.value,
            "alpha_method": alpha.method,
            "inputs": {"beta": beta, "phi": args.phi},
            "provenance": "heuristic" if alpha.heuristic else "float",
        }
        return json_dumps(doc), 0, None
    if mode in ("simul", "wangli"):
        if args.theta1 is None or args.theta2 is None:
            raise DomainError(f"dim {mode} needs --theta1 and --theta2")
        if mode == "wangli":
            if args.beta is None:
                raise DomainError("dim wangli needs --beta")
            beta = float(_parse_number(args.beta))
            value = dim_wang_li(beta, args.theta1, args.theta2)
            doc = {
                "value": value,
                "inputs": {"beta": beta, "theta1": args.theta1,
                           "theta2": args.theta2},
                "provenance": "float",
            }
            return json_dumps(doc), 0, None
        if args.beta1 is None or args.beta2 is None:
            raise DomainError("dim simul needs --beta1 and --beta2")
        report = dim_simultaneous(
            float(_parse_number(args.beta1)), float(_parse_number(args.beta2)),
            args.theta1, args.theta2,
        )
        return json_dumps(report.to_dict()), 0, None
    # simul-inhom
    if args.beta1 is None or args.beta2 is None or args.tau1 is None or args.tau2 is None:
        raise DomainError("dim simul-inhom needs --beta1 --beta2 --tau1 --tau2")
    report = dim_simultaneous_inhom(
        float(_parse_number(args.beta1)), float(_parse_number(args.beta2)),
        _parse_tau(args.tau1), _parse_tau(args.tau2),
    )
    return json_dumps(report.to_dict()), 0, None


def _cmd_mtp(args):
    _need(args, "a", "t")
    _require_format(args, ("json",))
    a = _parse_vector(args.a)
    t = _parse_vector(args.t)
    result = mtp_lower_bound(MtpProblem(a, t))
    doc = {
        "s": result.s,
        "argmin": list(result.argmin),
        "a": list(a),
        "t": list(t),
        "table": [dict(row) for row in result.table],
        "provenance": "float",
    }
    return json_dumps(doc), 0, None


def _content_term_fn(args):
    """(log-term callable of (s, n), label dict) from the scan flags."""
    if args.thm == 1:
        if args.beta is None or args.phi is None:
            raise DomainError("content-scan --thm 1 needs --beta and --phi")
        basis = BetaBasis(_parse_number(args.beta))
        rate = _parse_rate(args.phi, float(basis.beta))
        label = {"thm": 1, "beta": float(basis.beta), "phi": args.phi}
        return (
            lambda s, n: thm1_log_term(
                basis, rate, s, n, count_mode=args.count_mode
            ),
            label,
        )
    for req in ("beta1", "beta2", "theta1", "theta2"):
        if getattr(args, req) is None:
            raise DomainError("content-scan --thm 2 needs --beta1 --beta2 "
                              "--theta1 --theta2")
    b1 = BetaBasis(_parse_number(args.beta1))
    b2 = BetaBasis(_parse_number(args.beta2))
    case = args.case or classify_simultaneous(
        float(b1.beta), float(b2.beta), args.theta1, args.theta2
    )[0]
    label = {
        "thm": 2, "beta1": float(b1.beta), "beta2": float(b2.beta),
        "theta1": args.theta1, "theta2": args.theta2,
        "case": case, "branch": args.branch,
    }
    return (
        lambda s, n: thm2_log_term(
            b1, b2, args.theta1, args.theta2, case, args.branch, s, n,
            count_mode=args.count_mode,
        ),
        label,
    )


def _cmd_content_scan(args):
    term_fn, label = _content_term_fn(args)
    if args.critical:
        _require_format(args, ("json",))
        if args.s_lo is None or args.s_hi is None:
            raise DomainError("--critical needs --s-lo and --s-hi")
        scan = critical_exponent_scan(
            term_fn, args.s_lo, args.s_hi, tol=args.tol, n_max=args.n_max
        )
        doc = {
            **label,
            "s_star": scan.s_star,
            "bracket": list(scan.bracket),
            "rate_at_star": scan.rate_at_star,
            "rate_lo": scan.rate_lo,
            "rate_hi": scan.rate_hi,
            "provenance": "float",
        }
        return json_dumps(doc), 0, None
    fmt = _require_format(args, ("json", "csv"))
    if args.s is None:
        raise DomainError("content-scan needs --s (or --critical)")
    from .covering import content_scan as run_scan

    scan = run_scan(lambda n: term_fn(args.s, n), args.s, n_max=args.n_max)
    fig = ("content", scan) if args.fig else None
    if fmt == "csv":
        return content_csv(scan), 0, fig
    doc = {**label, **content_summary(scan), "provenance": "float"}
    return json_dumps(doc), 0, fig


def _windows_from(raw) -> list[tuple[int, int]]:
    if isinstance(raw, str):
        raw = [raw]
    if (
        isinstance(raw, (list, tuple))
        and len(raw) == 2
        and all(isinstance(t, (int, float)) for t in raw)
    ):
        raw = [raw]
    return [_parse_window(w) for w in raw]


def _cmd_mc_measure(args):
    _need(args, "set", "beta", "window")
    _require_format(args, ("json",))
    basis = BetaBasis(_parse_number(args.beta))
    basis2 = BetaBasis(_parse_number(args.beta2)) if args.beta2 else None
    kind = args.set
    kwargs = {"threads": args.threads, "basis2": basis2}
    if kind in ("D", "R", "W"):
        if args.phi is None:
            raise DomainError(f"set {kind} needs --phi")
        kwargs["rate"] = _parse_rate(args.phi, float(basis.beta))
        if kind == "D" and args.target:
            kwargs["target"] = _parse_target_1d(args.target)
        if kind == "W":
            if args.target is None:
                raise DomainError("set W needs --target")
            kwargs["target"] = _parse_target_2d(args.target)
    else:
        if args.tau is None:
            raise DomainError(f"set {kind} needs --tau")
        kwargs["tau"] = _parse_tau(args.tau)
        if args.tau2:
            kwargs["tau2"] = _parse_tau(args.tau2)
        parse_t = _parse_target_1d if kind == "F" else _parse_target_2d
        t1_spec = args.target if args.target else "id"
        t2_spec = args.target2 if args.target2 else t1_spec
        kwargs["target"] = parse_t(t1_spec)
        kwargs["target2"] = parse_t(t2_spec)
    windows = _windows_from(args.window)
    results = [
        mc_measure_dichotomy(basis, kind, w, args.samples, args.seed, **kwargs)
        for w in windows
    ]
    fig = ("mc", results) if args.fig else None
    if len(results) == 1:
        doc = {**results[0].to_dict(), "provenance": "float"}
    else:
        doc = {
            "experiments": [r.to_dict() for r in results],
            "provenance": "float",
        }
    return json_dumps(doc), 0, fig


def _cmd_verify(args):
    _require_format(args, ("json",))
    report = run_suite(args.suite)
    return json_dumps(report), 0 if report["ok"] else 1, None


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_common(sub, formats=("json",), fig=False):
    sub.add_argument("--out", help="write the artifact to this path instead of stdout")
    sub.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="output format (default: json)" if "csv" in formats
        else "output format (json only here; default: json)",
    )
    sub.add_argument("--config", help="JSON document whose fields override flags")
    if fig:
        sub.add_argument("--fig", help="also render a figure to this path")


def _build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(
        prog="betadyn",
        description="Expansions, cylinders, hit scans, dimension formulas, "
        "covering-sum scans, and Monte-Carlo measure experiments for "
        "beta-transformations.",
    )
    subs = parser.add_subparsers(dest="cmd", required=True)
    table = {}

    p = subs.add_parser("expand", help="digit expansion and orbit of a point")
    p.add_argument("--beta", help="base; use P/Q for exact arithmetic")
    p.add_argument("--x", help="point in [0,1); P/Q allowed")
    p.add_argument("--n", type=int, help="number of digits")
    _add_common(p)
    p.set_defaults(fn=_cmd_expand)
    table["expand"] = p

    p = subs.add_parser("cylinders", help="order-n cylinder dump")
    p.add_argument("--beta", help="base; use P/Q for exact arithmetic")
    p.add_argument("--n", type=int, help="cylinder order")
    p.add_argument("--full-only", action="store_true", help="keep full cylinders only")
    _add_common(p, formats=("json", "csv"), fig=True)
    p.set_defaults(fn=_cmd_cylinders)
    table["cylinders"] = p

    p = subs.add_parser("hits", help="finite-horizon hit scan for one point")
    p.add_argument("--set", choices=("D", "R", "W", "F", "G"),
                   help="D point target, R return, W planar, F two lines, "
                   "G two lines with planar targets")
    p.add_argument("--beta")
    p.add_argument("--beta2", help="second base for F/G (default: --beta)")
    p.add_argument("--x")
    p.add_argument("--y", help="second coordinate for W/F/G")
    p.add_argument("--target", help="target map (default: const:0 for D, id for F/G)")
    p.add_argument("--target2", help="second target for F/G (default: --target)")
    p.add_argument("--phi", help="rate grammar for D/R/W")
    p.add_argument("--tau", help="tau grammar for F/G")
    p.add_argument("--tau2", help="second tau (default: --tau)")
    p.add_argument("--n-max", type=int, default=100, help="scan horizon (default 100)")
    _add_common(p, formats=("json", "csv"), fig=True)
    p.set_defaults(fn=_cmd_hits)
    table["hits"] = p

    p = subs.add_parser("dim", help="closed-form dimension values")
    p.add_argument("mode", choices=("shrinking", "planar", "simul",
                                    "simul-inhom", "wangli"))
    p.add_argument("--beta", help="base for shrinking/planar/wangli")
    p.add_argument("--phi", help="rate grammar for shrinking/planar")
    p.add_argument("--horizon", type=int, default=64,
                   help="numeric alpha fallback horizon (default 64)")
    p.add_argument("--beta1", help="first base for simul modes")
    p.add_argument("--beta2", help="second base for simul modes")
    p.add_argument("--theta1", type=float, help="first exponent")
    p.add_argument("--theta2", type=float, help="second exponent")
    p.add_argument("--tau1", help="tau grammar (simul-inhom)")
    p.add_argument("--tau2", help="tau grammar (simul-inhom)")
    _add_common(p)
    p.set_defaults(fn=_cmd_dim)
    table["dim"] = p

    p = subs.add_parser("mtp", help="transference lower-bound calculator")
    p.add_argument("--a", help="comma-separated a_k, e.g. 1,1")
    p.add_argument("--t", help="comma-separated t_k, e.g. 0.5,1")
    _add_common(p)
    p.set_defaults(fn=_cmd_mtp)
    table["mtp"] = p

    p = subs.add_parser("content-scan", help="covering-sum partial sums or "
                        "critical-exponent search")
    p.add_argument("--thm", type=int, choices=(1, 2), default=1,
                   help="term family: 1 one line, 2 two lines (default 1)")
    p.add_argument("--beta", help="base (family 1)")
    p.add_argument("--phi", help="rate grammar (family 1)")
    p.add_argument("--beta1", help="first base (family 2)")
    p.add_argument("--beta2", help="second base (family 2)")
    p.add_argument("--theta1", type=float, help="first exponent (family 2)")
    p.add_argument("--theta2", type=float, help="second exponent (family 2)")
    p.add_argument("--case", choices=("case1", "case2", "case3"),
                   help="regime override (default: classified from parameters)")
    p.add_argument("--branch", type=int, choices=(1, 2), default=1,
                   help="covering branch (family 2, default 1)")
    p.add_argument("--s", type=float, help="exponent for the partial-sum scan")
    p.add_argument("--n-max", type=int, default=400, help="scan depth (default 400)")
    p.add_argument("--count-mode", choices=("auto", "exact", "renyi"),
                   default="auto", help="word-count source (default auto)")
    p.add_argument("--critical", action="store_true",
                   help="bisect for the critical exponent instead")
    p.add_argument("--s-lo", type=float, help="bracket low end (--critical)")
    p.add_argument("--s-hi", type=float, help="bracket high end (--critical)")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="rate tolerance at s* (default 1e-6)")
    _add_common(p, formats=("json", "csv"), fig=True)
    p.set_defaults(fn=_cmd_content_scan)
    table["content-scan"] = p

    p = subs.add_parser("mc-measure", help="uniform-sampling hit-fraction "
                        "experiment")
    p.add_argument("--set", choices=("D", "R", "W", "F", "G"))
    p.add_argument("--beta")
    p.add_argument("--beta2", help="second base for F/G")
    p.add_argument("--target", help="target map grammar")
    p.add_argument("--target2", help="second target (F/G)")
    p.add_argument("--phi", help="rate grammar (D/R/W)")
    p.add_argument("--tau", help="tau grammar (F/G)")
    p.add_argument("--tau2", help="second tau (F/G)")
    p.add_argument("--window", action="append",
                   help="window N0:N1; repeat for a trend over windows")
    p.add_argument("--samples", type=int, default=10000,
                   help="sample count (default 10000)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap; results do not depend on it (default 1)")
    _add_common(p, fig=True)
    p.set_defaults(fn=_cmd_mc_measure)
    table["mc-measure"] = p

    p = subs.add_parser("verify", help="run a bundled property suite")
    p.add_argument("suite", choices=tuple(sorted(SUITES)))
    _add_common(p)
    p.set_defaults(fn=_cmd_verify)
    table["verify"] = p

    return parser, table


def _render_figure(payload, path: str) -> None:
    from . import figures

    kind, data = payload
    if kind == "cylinders":
        figures.fig_cylinders(data, path)
    elif kind == "hits":
        records, n_max = data
        figures.fig_hits(records, n_max, path)
    elif kind == "content":
        figures.fig_content_scan(data, path)
    else:
        figures.fig_mc_trend(data, path)
    print(f"figure written to {path}", file=sys.stderr)


def main(argv=None) -> int:
    parser, table = _build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            _apply_config(args, table[args.cmd])
        text, code, fig = args.fn(args)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        if fig is not None and getattr(args, "fig", None):
            _render_figure(fig, args.fig)
        return code
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (BetadynError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
