"""JSON family and certificate files.

Family file::

    {"field": {"p", "t", "modulus"}, "q", "ambient_n", "k", "construction", "s",
     "size", "members": [[row, ...], ...], "tree": {...}?}

Tree constructions also carry ``"tree": {"params", "tower", "nodes"}`` where
each node is ``{"member": [row, ...], "children": [...]}``.  Big integers
are written as decimal strings.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from .constructions import FamilyNode, FamilyTree, params_A, params_B
from .field import FieldSpec
from .geometry import Subspace


class FormatError(ValueError):
    """A family file does not follow the schema."""


def dumps(obj: Any, compact: bool = True) -> str:
    if compact:
        return json.dumps(obj, separators=(",", ":")) + "\n"
    return json.dumps(obj, indent=2) + "\n"


def _rows(S: Subspace) -> list[list[int]]:
    return [list(r) for r in S.basis]


def _node_dict(node: FamilyNode) -> dict:
    return {"member": _rows(node.member), "children": [_node_dict(c) for c in node.children]}


def tree_to_dict(tree: FamilyTree) -> dict:
    return {
        "params": tree.params.to_dict(),
        "tower": [_rows(T) for T in tree.tower],
        "nodes": [_node_dict(nd) for nd in tree.roots],
    }


def family_to_dict(
    members: Sequence[Subspace],
    F: FieldSpec,
    n: int,
    k: int,
    construction: str,
    s: int | None,
    tree: FamilyTree | None = None,
    report: dict | None = None,
) -> dict:
    out: dict[str, Any] = {
        "field": F.to_dict(),
        "q": F.q,
        "ambient_n": n,
        "k": k,
        "construction": construction,
        "s": s,
        "size": len(members),
    }
    if report:
        out["report"] = report
    if tree is not None:
        out["tree"] = tree_to_dict(tree)
    out["members"] = [_rows(S) for S in members]
    return out


def _subspace(F: FieldSpec, n: int, rows: Any) -> Subspace:
    if not isinstance(rows, list) or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise FormatError(f"expected a list of rows of length {n}")
    for r in rows:
        for x in r:
            if not isinstance(x, int) or not 0 <= x < F.q:
                raise FormatError(f"entry {x!r} is not a field element code")
    S = Subspace.from_rows(F, n, rows)
    if S.dim != len(rows):
        raise FormatError("basis rows are linearly dependent")
    return S


def family_from_dict(d: dict) -> tuple[FieldSpec, int, list[Subspace], dict]:
    """Parse a family dict into ``(field, ambient_n, members, header)``."""
    try:
        F = FieldSpec.from_dict(d["field"])
        n = int(d["ambient_n"])
        raw = d["members"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed family header: {exc}") from exc
    if not isinstance(raw, list):
        raise FormatError("members must be a list")
    members = [_subspace(F, n, rows) for rows in raw]
    if len(set(members)) != len(members):
        raise FormatError("family contains repeated members")
    dims = {S.dim for S in members}
    if len(dims) > 1:
        raise FormatError("members have different dimensions")
    if "k" in d and d["k"] is not None and dims and dims != {d["k"]}:
        raise FormatError("member dimension does not match header k")
    header = {key: d.get(key) for key in ("construction", "s", "k", "q")}
    return F, n, members, header


def tree_from_dict(d: dict, F: FieldSpec) -> FamilyTree:
    p = d["params"]
    params = params_A(p["s"], p["k"]) if p["tag"] == "A" else params_B(p["s"], p["k"])
    n = params.n

    def node(obj: dict) -> FamilyNode:
        return FamilyNode(_subspace(F, n, obj["member"]), tuple(node(c) for c in obj.get("children", [])))

    tower = tuple(_subspace(F, n, rows) for rows in d["tower"])
    return FamilyTree(params, F, tower, tuple(node(o) for o in d["nodes"]))


def read_family(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read family file {path}: {exc}") from exc


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
