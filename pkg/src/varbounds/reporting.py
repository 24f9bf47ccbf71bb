"""CSV/JSON serialization of sweep tables and verification reports.

CSV carries a fixed header row, floats at 17 significant digits, and an
empty cell plus a reason in the companion ``*_status`` column wherever a
bound is undefined.  JSON mirrors the same schema plus metadata and is
rendered deterministically (sorted keys, no timestamps), so identical
inputs produce identical bytes.
"""

from __future__ import annotations

import io
import json
import os

import numpy as np

__all__ = ["emit", "render_csv", "render_json"]


def format_float(x: float) -> str:
    return format(float(x), ".16e")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if not np.isfinite(f):
            return "inf" if f > 0 else ("-inf" if f < 0 else "nan")
        return f
    return obj


def render_csv(obj) -> str:
    """Render a SweepTable or VerificationReport as CSV text."""
    buf = io.StringIO()
    if hasattr(obj, "columns"):  # sweep table
        buf.write(",".join(obj.columns) + "\n")
        for row in obj.rows:
            buf.write(",".join(_cell(v) for v in row) + "\n")
    else:  # verification report: one row per check
        buf.write("check,applicable,violations,max_slack,undefined_fraction\n")
        for check in sorted(obj.max_slack):
            viol = sum(1 for v in obj.violations if v.check == check)
            slack = obj.max_slack[check]
            frac = obj.undefined_fraction.get(check)
            buf.write(
                f"{check},{obj.applicable.get(check, '')},{viol},"
                f"{'' if slack is None else format_float(slack)},"
                f"{'' if frac is None else format_float(frac)}\n"
            )
    return buf.getvalue()


def render_json(obj) -> str:
    data = obj.to_json_dict()
    return json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n"


def default_output_dir() -> str | None:
    return os.environ.get("VARBOUNDS_OUT")


def resolve_out_path(path: str | None) -> str | None:
    """Apply the VARBOUNDS_OUT default directory to bare file names."""
    if path is None:
        return None
    base = default_output_dir()
    if base and not os.path.isabs(path) and os.sep not in path:
        return os.path.join(base, path)
    return path


def emit(obj, fmt: str, path: str | None = None) -> str:
    """Serialize ``obj`` to ``fmt`` ("csv" or "json"); write to ``path`` if given.

    Returns the rendered text either way.
    """
    if fmt == "csv":
        text = render_csv(obj)
    elif fmt == "json":
        text = render_json(obj)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    target = resolve_out_path(path)
    if target is not None:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
