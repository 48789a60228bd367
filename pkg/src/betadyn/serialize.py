"""JSON and CSV emitters for the library's result objects.

JSON floats are printed with 17 significant digits so artifacts round-trip
bit for bit; non-finite values become the strings "inf", "-inf", "nan"
(plain JSON has no tokens for them).  CSV output always carries a header,
uses '.' as the decimal mark, and never groups thousands.
"""

from __future__ import annotations

import io
import json
import math
from typing import Iterable, Sequence

from .core import CylinderInterval
from .covering import ContentScan
from .targets import HitRecord

__all__ = [
    "content_csv",
    "content_summary",
    "cylinders_csv",
    "hits_csv",
    "json_dumps",
    "word_string",
]


def _float_token(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return "%.17g" % x


def json_dumps(obj, indent: int = 2) -> str:
    """Serialize nested dict/list/scalar data with fixed float formatting."""

    def emit(o, depth: int) -> str:
        pad = " " * (indent * depth)
        pad1 = " " * (indent * (depth + 1))
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = (
                f"{pad1}{json.dumps(str(k))}: {emit(v, depth + 1)}"
                for k, v in o.items()
            )
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(o, (list, tuple)):
            if len(o) == 0:
                return "[]"
            scalars = all(not isinstance(v, (dict, list, tuple)) for v in o)
            if scalars and len(o) <= 12:
                return "[" + ", ".join(emit(v, depth + 1) for v in o) + "]"
            items = (pad1 + emit(v, depth + 1) for v in o)
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        if isinstance(o, bool):
            return "true" if o else "false"
        if o is None:
            return "null"
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return _float_token(o)
        if isinstance(o, str):
            return json.dumps(o)
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return emit(obj, 0) + "\n"


def word_string(word: Sequence[int]) -> str:
    """Digit word as text; dash-separated once any digit needs two characters."""
    sep = "" if all(d <= 9 for d in word) else "-"
    return sep.join(str(d) for d in word)


def _csv(rows: Iterable[Sequence]) -> str:
    out = io.StringIO()
    for row in rows:
        out.write(",".join(row))
        out.write("\n")
    return out.getvalue()


def _num(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    return str(x)


def cylinders_csv(cyls: Sequence[CylinderInterval]) -> str:
    rows = [("word", "left", "right", "length", "is_full")]
    for c in cyls:
        rows.append(
            (
                word_string(c.word),
                _num(float(c.left)),
                _num(float(c.right)),
                _num(float(c.length)),
                "true" if c.is_full else "false",
            )
        )
    return _csv(rows)


def hits_csv(records: Sequence[HitRecord], pairs: int | None = None) -> str:
    """One row per hit; column pairs (dist_i, thresh_i) sized to the records
    (or forced via ``pairs`` for an empty list)."""
    if pairs is None:
        pairs = len(records[0].distances) if records else 1
    head = ["n"]
    for i in range(1, pairs + 1):
        head += [f"dist{i}", f"thresh{i}"]
    rows = [tuple(head)]
    for r in records:
        row = [str(r.n)]
        for d, t in zip(r.distances, r.thresholds):
            row += [_num(d), _num(t)]
        rows.append(tuple(row))
    return _csv(rows)


def content_csv(scan: ContentScan) -> str:
    rows = [("n", "term_log", "partial_sum", "rate")]
    for n, lt, ps, local in scan.rows():
        rows.append((str(n), _num(lt), _num(ps), "" if local is None else _num(local)))
    return _csv(rows)


def content_summary(scan: ContentScan) -> dict:
    return {
        "s": scan.s,
        "n_start": scan.n_start,
        "n_max": scan.n_max,
        "rate": scan.rate,
        "tail_estimate": scan.tail_estimate,
        "final_partial_sum": scan.partial_sums[-1],
        "verdict": scan.verdict,
    }
