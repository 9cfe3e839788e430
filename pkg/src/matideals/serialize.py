"""JSON and compact-string forms of fields and matrices."""

from __future__ import annotations

import json
from typing import Optional

from .gf import FieldSpec, field_from_json
from .matlin import Mat, MatrixError


def parse_mat(text: str, F: FieldSpec) -> Mat:
    """Parse ``"1,0;1,0"`` (rows split by ``;``, entries by ``,``)."""
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
    except ValueError as exc:
        raise MatrixError(f"malformed matrix string {text!r}") from exc
    return Mat.from_rows(rows, F)


def format_mat(M: Mat) -> str:
    return str(M)


def mat_to_json(M: Mat) -> dict:
    return {"n": M.rows, "field": M.field.to_json(), "rows": M.to_rows()}


def mat_from_json(obj: dict, F: Optional[FieldSpec] = None) -> Mat:
    if "field" in obj:
        G = field_from_json(obj["field"])
        if F is not None and G != F:
            raise MatrixError(f"matrix is over {G}, expected {F}")
        F = G
    if F is None:
        raise MatrixError("matrix JSON carries no field and none was given")
    M = Mat.from_rows(obj["rows"], F)
    if "n" in obj and (M.rows, M.cols) != (obj["n"], obj["n"]):
        raise MatrixError(f"declared n={obj['n']} does not match a {M.rows}x{M.cols} matrix")
    return M


def load_mat(path: str, F: Optional[FieldSpec] = None) -> Mat:
    with open(path) as fh:
        return mat_from_json(json.load(fh), F)
