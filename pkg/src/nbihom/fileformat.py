"""Versioned JSON file format for algebras and parameter families.

Indices are 1-based on disk.  Scalars are strings (``"-3/4"``) so nothing
is parsed through a float.  A document carrying a ``parameters`` block is
a family; its entries may then be polynomial expressions.

    {
      "format": "nbihom", "version": 1,
      "dim": 3, "arity": 2, "flavor": "lie-leibniz", "weak": false,
      "provenance": {"construction": "...", "parameters": {...}},
      "parameters": {"a": ["-1", "0", "1"]},
      "alpha": [["0", "0", "0"], ...],
      "beta":  [[...], ...],
      "bracket": [{"tuple": [2, 2], "value": ["0", "c1", "0"]}, ...],
      "tau": ["t1", "0", "0"]
    }
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .algebra import FLAVORS, LinearForm, NAryBiHomAlgebra
from .family import ParamFamily
from .linalg import Matrix, to_rational

FORMAT = "nbihom"
VERSION = 1


class FormatError(ValueError):
    """Unparseable document; carries the line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class ValidationError(ValueError):
    """Well-formed document violating an invariant of the format."""


@dataclass
class Document:
    obj: NAryBiHomAlgebra | ParamFamily
    tau: LinearForm | None = None

    @property
    def is_family(self) -> bool:
        return isinstance(self.obj, ParamFamily)


def _resolve(path) -> Path:
    p = Path(path)
    if not p.exists() and p.suffix != ".json" and p.with_suffix(".json").exists():
        return p.with_suffix(".json")
    return p


def read_document(path) -> Document:
    p = _resolve(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {p}: {exc.strerror}") from exc
    return parse_document(text)


def load(path) -> NAryBiHomAlgebra | ParamFamily:
    return read_document(path).obj


def parse_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(raw, dict):
        raise ValidationError("top level must be an object")
    try:
        return _from_raw(raw)
    except (ValidationError, FormatError):
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise ValidationError(str(exc)) from exc


def _require(raw: dict, key: str):
    if key not in raw:
        raise ValidationError(f"missing required field {key!r}")
    return raw[key]


def _from_raw(raw: dict) -> Document:
    if raw.get("format") != FORMAT:
        raise ValidationError(f"format must be {FORMAT!r}")
    if raw.get("version") != VERSION:
        raise ValidationError(f"unsupported version {raw.get('version')!r}")
    dim = _require(raw, "dim")
    arity = _require(raw, "arity")
    if not isinstance(dim, int) or not isinstance(arity, int):
        raise ValidationError("dim and arity must be integers")
    flavor = raw.get("flavor", "unchecked")
    if flavor not in FLAVORS:
        raise ValidationError(f"flavor must be one of {', '.join(FLAVORS)}")
    weak = bool(raw.get("weak", False))
    is_family = "parameters" in raw

    bracket = {}
    for pos, rec in enumerate(raw.get("bracket", [])):
        try:
            t = tuple(int(i) - 1 for i in rec["tuple"])
            value = rec["value"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bracket record {pos} needs 'tuple' and 'value'") from exc
        if any(i < 0 for i in t):
            raise ValidationError(f"bracket record {pos}: indices are 1-based")
        if t in bracket:
            raise ValidationError(
                f"duplicate bracket tuple {[i + 1 for i in t]} (record {pos}): "
                "each tuple may appear once")
        bracket[t] = value

    alpha = _require(raw, "alpha")
    beta = _require(raw, "beta")
    tau = raw.get("tau")
    provenance = raw.get("provenance")

    if is_family:
        params = raw["parameters"]
        if not isinstance(params, dict):
            raise ValidationError("parameters must map names to grid lists")
        for k, g in params.items():
            if not isinstance(g, list) or not g:
                raise ValidationError(f"grid for parameter {k!r} must be a non-empty list")
        fam = ParamFamily(dim, arity, tuple(params), bracket, alpha, beta,
                          grid={k: [to_rational(x) for x in g] for k, g in params.items()},
                          tau=tau, flavor=flavor, weak=weak, provenance=provenance)
        return Document(fam)

    alg = NAryBiHomAlgebra(
        dim, arity,
        {t: [to_rational(x) for x in v] for t, v in bracket.items()},
        Matrix.from_rows([[to_rational(x) for x in row] for row in alpha]),
        Matrix.from_rows([[to_rational(x) for x in row] for row in beta]),
        flavor=flavor, weak=weak, provenance=provenance,
    )
    form = None
    if tau is not None:
        form = LinearForm([to_rational(x) for x in tau])
        if form.dim != dim:
            raise ValidationError(f"tau must have {dim} entries")
    return Document(alg, form)


def _s(x) -> str:
    return str(x).replace("**", "^")


def dumps(obj: NAryBiHomAlgebra | ParamFamily, tau: LinearForm | None = None) -> str:
    """Deterministic text: fixed key order, one matrix row / bracket record per line."""
    is_family = isinstance(obj, ParamFamily)
    header: dict[str, Any] = {
        "format": FORMAT, "version": VERSION,
        "dim": obj.dim, "arity": obj.arity, "flavor": obj.flavor, "weak": obj.weak,
    }
    if obj.provenance:
        header["provenance"] = obj.provenance
    lines = ["{"]
    for k, v in header.items():
        lines.append(f"  {json.dumps(k)}: {json.dumps(v, sort_keys=True)},")
    if is_family:
        grid = {k: [_s(x) for x in obj.grid[k]] for k in obj.params}
        lines.append('  "parameters": {')
        items = [f"    {json.dumps(k)}: {json.dumps(g)}" for k, g in grid.items()]
        lines.append(",\n".join(items))
        lines.append("  },")
        alpha = [[_s(x) for x in row] for row in obj.alpha]
        beta = [[_s(x) for x in row] for row in obj.beta]
        bracket = [(t, [_s(x) for x in v]) for t, v in obj.bracket.items()]
        tau_out = None if obj.tau is None else [_s(x) for x in obj.tau]
    else:
        alpha = [[_s(x) for x in row] for row in obj.alpha.to_rows()]
        beta = [[_s(x) for x in row] for row in obj.beta.to_rows()]
        bracket = [(t, [_s(x) for x in v]) for t, v in obj.bracket.items()]
        tau_out = None if tau is None else [_s(x) for x in tau.coeffs]
    for name, m in (("alpha", alpha), ("beta", beta)):
        rows = ",\n".join(f"    {json.dumps(r)}" for r in m)
        lines.append(f'  "{name}": [\n{rows}\n  ],' if m else f'  "{name}": [],')
    recs = ",\n".join(
        f'    {{"tuple": {json.dumps([i + 1 for i in t])}, "value": {json.dumps(v)}}}'
        for t, v in bracket
    )
    lines.append(f'  "bracket": [\n{recs}\n  ]' if bracket else '  "bracket": []')
    if tau_out is not None:
        lines[-1] += ","
        lines.append(f'  "tau": {json.dumps(tau_out)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(obj, path, tau: LinearForm | None = None) -> None:
    text = dumps(obj, tau)
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)
