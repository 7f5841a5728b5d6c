"""Deterministic JSON and CSV output: floats are printed with 12 significant
digits and negative zero is normalised to 0."""
from __future__ import annotations

import io
import json
from fractions import Fraction

import numpy as np

SIG_DIGITS = 12


def round_float(x: float) -> float:
    y = float(f"{float(x):.{SIG_DIGITS}g}")
    return 0.0 if y == 0 else y


def fmt_float(x: float) -> str:
    return f"{round_float(x):.{SIG_DIGITS}g}"


def to_plain(obj):
    """Recursively convert numpy scalars/arrays, complex numbers and Fractions to JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": round_float(obj.real), "im": round_float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        if not np.isfinite(obj):
            return str(float(obj))
        return round_float(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(to_plain(obj), indent=2) + "\n"


def matrix_csv(m: np.ndarray) -> str:
    out = io.StringIO()
    for row in np.asarray(m):
        out.write(",".join(str(int(x)) if float(x).is_integer() else fmt_float(x) for x in row))
        out.write("\n")
    return out.getvalue()


def matrix_coo(m: np.ndarray, offsets=None) -> str:
    """JSON header line (shape, nnz, block offsets) followed by 'row,col,value' lines."""
    m = np.asarray(m)
    rows, cols = np.nonzero(m)
    header = {"shape": list(m.shape), "nnz": int(len(rows)),
              "offsets": list(offsets) if offsets is not None else None}
    lines = [json.dumps(header)]
    for r, c in zip(rows, cols):
        x = m[r, c]
        lines.append(f"{r},{c},{int(x) if float(x).is_integer() else fmt_float(x)}")
    return "\n".join(lines) + "\n"


def spectrum_csv(eigenvalues, grading=None) -> str:
    out = ["index,eigenvalue" + (",grading" if grading is not None else "")]
    for i, x in enumerate(eigenvalues):
        row = f"{i},{fmt_float(x)}"
        if grading is not None:
            g = grading[i]
            row += f",{int(g)}" if float(g).is_integer() else f",{fmt_float(g)}"
        out.append(row)
    return "\n".join(out) + "\n"


def series_csv(times, columns: dict) -> str:
    """Time series: one row per time, complex columns split into _re and _im."""
    names, cols = ["t"], [np.asarray(times)]
    for name, vals in columns.items():
        vals = np.asarray(vals)
        if np.iscomplexobj(vals):
            names += [f"{name}_re", f"{name}_im"]
            cols += [vals.real, vals.imag]
        else:
            names.append(name)
            cols.append(vals)
    lines = [",".join(names)]
    for i in range(len(times)):
        lines.append(",".join(fmt_float(c[i]) for c in cols))
    return "\n".join(lines) + "\n"
