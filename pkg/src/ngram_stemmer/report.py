"""Byte-stable JSON/TSV rendering of comparison reports and stem traces.

Floats are always written with six decimals so output does not depend on
``repr`` differences between platforms; infinities become the strings
``"inf"``/``"-inf"``.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .evaluation import ComparisonReport
from .stemmer import StemResult


def fmt_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6f}"


def dump_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Minimal JSON writer: dicts keep insertion order, floats get 6 decimals."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dump_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dump_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return json.dumps(fmt_float(obj))
        return fmt_float(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_document(report: ComparisonReport, include_rows: bool = False) -> dict:
    doc: dict[str, Any] = {
        "n": report.n,
        "n_r": report.n_r,
        "w": float(report.w),
        "z": float(report.z),
        "p_two_sided": float(report.p_two_sided),
        "alpha": float(report.alpha),
        "reject_null": report.reject_null,
        "mean_ld_a": float(report.mean_ld_a),
        "mean_ld_b": float(report.mean_ld_b),
        "identical_stem_count": report.identical_stem_count,
        "method": report.method,
    }
    if include_rows:
        doc["records"] = [
            {
                "word": r.word,
                "stem_a": r.stem_a,
                "stem_b": r.stem_b,
                "ld_a": r.ld_a,
                "ld_b": r.ld_b,
                "d": r.d,
            }
            for r in report.records
        ]
    return doc


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def report_tsv(doc: dict) -> str:
    lines = [f"{k}\t{_scalar(v)}" for k, v in doc.items() if k != "records"]
    if "records" in doc:
        lines.append("")
        lines.append("word\tstem_a\tstem_b\tld_a\tld_b\td")
        for r in doc["records"]:
            lines.append("\t".join(_scalar(r[k]) for k in ("word", "stem_a", "stem_b", "ld_a", "ld_b", "d")))
    return "\n".join(lines) + "\n"


def fmt_delta(d) -> str:
    """Second-order deviation for display: ``-`` if never computed, else integer or ``-inf``."""
    if d is None:
        return "-"
    return fmt_float(d) if math.isinf(d) else str(int(d))


def _delta(d):
    return None if d is None else (d if math.isinf(d) else int(d))


def stem_record(raw: str, result: StemResult, trace: bool = False) -> dict:
    rec: dict[str, Any] = {"word": raw, "stem": result.stem}
    if trace:
        rec["stop_reason"] = result.trace.stop_reason.value
        rec["phase2_applied"] = result.trace.phase2_applied
        rec["steps"] = [
            {"i": s.i, "F": s.frequency, "lambda": s.lam, "delta": _delta(s.delta), "psi": s.psi}
            for s in result.trace.steps
        ]
    return rec


def stems_tsv(records: list[dict], trace: bool = False) -> str:
    """One row per word. With ``trace`` the steps are packed as ``i:F:lambda:delta:psi``
    items joined by ``;`` (``delta`` is ``-`` where it was never computed)."""
    if trace:
        lines = ["word\tstem\tstop_reason\tphase2_applied\tsteps"]
    else:
        lines = ["word\tstem"]
    for rec in records:
        row = [rec["word"], rec["stem"]]
        if trace:
            steps = ";".join(
                f"{s['i']}:{s['F']}:{s['lambda']}:{fmt_delta(s['delta'])}:{s['psi']}"
                for s in rec["steps"]
            )
            row += [rec["stop_reason"], _scalar(rec["phase2_applied"]), steps]
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"
