"""JSON input schema (version 1) shared by every CLI command.

{
  "schema": 1,
  "symbols": [{"name": "s", "enclosure": ["lo", "hi"], "precision": bits}, ...],
  "n": int,
  "vectors": [["expr", ...n entries...], ...m rows...],
  "complex": {"m": int, "maximal_faces": [[int, ...], ...]},
  "psi": [[{"re": "expr", "im": "expr"}, ...l cols...], ...m rows...],   # optional
  "offsets": ["expr", ...m entries...]                                   # optional
}

Scalar entries are expression strings over the declared symbols; commands
ignore sections they do not need.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Optional

from .errors import InputError
from .fan import FanData
from .scalar import Scalar, parse_scalar, print_scalar
from .simplicial import SimplicialComplex
from .structure import PsiMap
from .symbols import SymbolTable

SCHEMA_VERSION = 1


@dataclass
class InputData:
    table: SymbolTable
    fan: FanData
    psi: Optional[PsiMap]
    offsets: Optional[List[Scalar]]


def _parse_entry(x, table: SymbolTable) -> Scalar:
    if isinstance(x, str):
        return parse_scalar(x, table)
    if isinstance(x, int):
        return Scalar.from_rational(table, x)
    raise InputError(f"scalar entries must be strings or integers, got {x!r}")


def load_data(data: dict) -> InputData:
    if not isinstance(data, dict):
        raise InputError("top-level JSON value must be an object")
    if data.get("schema") != SCHEMA_VERSION:
        raise InputError(
            f'missing or unsupported "schema" field (expected {SCHEMA_VERSION})'
        )
    table = SymbolTable.from_spec(data.get("symbols", []))
    try:
        n = int(data["n"])
        vectors_raw = data["vectors"]
        complex_raw = data["complex"]
    except KeyError as exc:
        raise InputError(f"missing required field {exc}")
    K = SimplicialComplex.from_spec(complex_raw)
    vectors = [[_parse_entry(x, table) for x in row] for row in vectors_raw]
    fan = FanData.create(table, n, vectors, K)
    psi = None
    if "psi" in data:
        entries = []
        for row in data["psi"]:
            entries.append(
                [
                    (_parse_entry(c["re"], table), _parse_entry(c["im"], table))
                    for c in row
                ]
            )
        psi = PsiMap.create(table, entries)
        if psi.m != fan.m:
            raise InputError("psi row count != m")
    offsets = None
    if "offsets" in data:
        offsets = [_parse_entry(x, table) for x in data["offsets"]]
        if len(offsets) != fan.m:
            raise InputError("offsets length != m")
    return InputData(table, fan, psi, offsets)


def load_file(path: str) -> InputData:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")
    return load_data(data)


def dump_data(inp: InputData) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "symbols": inp.table.to_spec(),
        "n": inp.fan.n,
        "vectors": [[print_scalar(x) for x in row] for row in inp.fan.vectors],
        "complex": inp.fan.complex.to_spec(),
    }
    if inp.psi is not None:
        out["psi"] = [
            [
                {"re": print_scalar(re), "im": print_scalar(im)}
                for re, im in row
            ]
            for row in inp.psi.entries
        ]
    if inp.offsets is not None:
        out["offsets"] = [print_scalar(x) for x in inp.offsets]
    return out
