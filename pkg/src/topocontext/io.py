"""JSON formats for categories, empirical models and matrices.

Complex numbers are always ``{"re": ..., "im": ...}`` objects. Writers produce
one record per line in a fixed order so that ``dump(load(text)) == text``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .category import CategoryData, CategoryError, make_category
from .contextuality.scenario import EmpiricalModel, MeasurementScenario, ModelError

__all__ = [
    "category_to_json",
    "category_from_json",
    "load_category",
    "save_category",
    "model_to_json",
    "model_from_json",
    "load_model",
    "save_model",
    "matrix_to_json",
    "matrix_from_json",
]


def _num(x: float) -> float:
    # collapse -0.0 so that output does not depend on round-off sign
    x = float(x)
    return 0.0 if x == 0 else x


def _c(z: complex) -> dict:
    z = complex(z)
    return {"re": _num(z.real), "im": _num(z.imag)}


def _dumps_records(obj: dict[str, Any]) -> str:
    lines = ["{"]
    keys = list(obj)
    for n, key in enumerate(keys):
        val = obj[key]
        tail = "," if n < len(keys) - 1 else ""
        if isinstance(val, list) and val:
            lines.append(f"  {json.dumps(key)}: [")
            for i, rec in enumerate(val):
                sep = "," if i < len(val) - 1 else ""
                lines.append(f"    {json.dumps(rec)}{sep}")
            lines.append(f"  ]{tail}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val)}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def category_to_json(cat: CategoryData) -> str:
    n = cat.n_labels
    fusion = [[a, b, c, int(cat.N[a, b, c])] for a in range(n) for b in range(n) for c in range(n) if cat.N[a, b, c]]
    F = [dict(zip("abcdef", key), **_c(v)) for key, v in sorted(cat.f.items())]
    R = [dict(zip("abc", key), **_c(v)) for key, v in sorted(cat.r.items())]
    obj = {
        "name": cat.name,
        "unit": cat.unit,
        "labels": [{"id": lab.id, "name": lab.name, "dual": lab.dual} for lab in cat.labels],
        "fusion": fusion,
        "F": F,
        "R": R,
        "twists": [{"a": a, **_c(t)} for a, t in enumerate(cat.twists)],
    }
    return _dumps_records(obj)


def _complex(rec: dict, where: str) -> complex:
    try:
        return complex(float(rec["re"]), float(rec["im"]))
    except (KeyError, TypeError, ValueError):
        raise CategoryError(f"{where}: expected {{re, im}} pair, got {rec!r}") from None


def category_from_json(text: str) -> CategoryData:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CategoryError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise CategoryError("category file must hold a JSON object")
    missing = [k for k in ("labels", "unit", "fusion", "F", "R") if k not in obj]
    if missing:
        raise CategoryError(f"category file lacks fields {missing}")
    try:
        labels = sorted(obj["labels"], key=lambda rec: int(rec["id"]))
        n = len(labels)
        if [int(rec["id"]) for rec in labels] != list(range(n)):
            raise CategoryError("label ids must be 0..n-1")
        names = [str(rec["name"]) for rec in labels]
        duals = [int(rec["dual"]) for rec in labels]
        N = np.zeros((n, n, n), dtype=int)
        for quad in obj["fusion"]:
            a, b, c, m = (int(x) for x in quad)
            N[a, b, c] = m
        F = {tuple(int(rec[k]) for k in "abcdef"): _complex(rec, "F") for rec in obj["F"]}
        R = {tuple(int(rec[k]) for k in "abc"): _complex(rec, "R") for rec in obj["R"]}
        twists = None
        if "twists" in obj:
            twists = [0j] * n
            for rec in obj["twists"]:
                twists[int(rec["a"])] = _complex(rec, "twists")
        unit = int(obj["unit"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, CategoryError):
            raise
        raise CategoryError(f"malformed category file: {exc!r}") from None
    return make_category(str(obj.get("name", "file")), names, N, F, R, twists=twists, unit=unit, duals=duals)


def load_category(path: str | Path) -> CategoryData:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CategoryError(f"cannot read {path}: {exc.strerror}") from None
    return category_from_json(text)


def save_category(cat: CategoryData, path: str | Path):
    Path(path).write_text(category_to_json(cat))


def _outcome_key(values) -> str:
    return ",".join(str(v) for v in values)


def model_to_json(model: EmpiricalModel) -> str:
    sc = model.scenario
    tables = {}
    for c, t in enumerate(model.tables):
        ctx = sc.contexts[c]
        entries = {}
        for ix in np.ndindex(t.shape):
            vals = [sc.outcomes[m][i] for m, i in zip(ctx, ix)]
            entries[_outcome_key(vals)] = _num(t[ix])
        tables[str(c)] = entries
    obj = {
        "measurements": list(sc.measurements),
        "outcomes": {m: list(sc.outcomes[m]) for m in sc.measurements},
        "contexts": [list(c) for c in sc.contexts],
        "tables": tables,
    }
    return json.dumps(obj, indent=2) + "\n"


def model_from_json(text: str) -> EmpiricalModel:
    """Parse a scenario/model file; table entries not listed are zero."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc}") from None
    try:
        sc = MeasurementScenario(
            tuple(obj["measurements"]),
            tuple(tuple(c) for c in obj["contexts"]),
            {m: tuple(o) for m, o in obj["outcomes"].items()},
        )
        tables = []
        for c, ctx in enumerate(sc.contexts):
            t = np.zeros(sc.shape(c))
            lookup = {}
            for ix in np.ndindex(t.shape):
                lookup[_outcome_key(sc.outcomes[m][i] for m, i in zip(ctx, ix))] = ix
            raw = obj["tables"].get(str(c), obj["tables"].get(c))
            if raw is None:
                raise ModelError(f"no table for context {c}")
            for key, prob in raw.items():
                key = _outcome_key(s.strip() for s in str(key).split(","))
                if key not in lookup:
                    raise ModelError(f"context {c}: unknown outcome tuple {key!r}")
                t[lookup[key]] = float(prob)
            tables.append(t)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ModelError(f"malformed model file: {exc!r}") from None
    return EmpiricalModel(sc, tuple(tables))


def load_model(path: str | Path) -> EmpiricalModel:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    return model_from_json(text)


def save_model(model: EmpiricalModel, path: str | Path):
    Path(path).write_text(model_to_json(model))


def matrix_to_json(M: np.ndarray) -> list[list[dict]]:
    """Rows of ``{re, im}`` objects."""
    return [[_c(z) for z in row] for row in np.atleast_2d(M)]


def matrix_from_json(rows: list[list[dict]]) -> np.ndarray:
    return np.array([[_complex(z, "matrix") for z in row] for row in rows], dtype=complex)
