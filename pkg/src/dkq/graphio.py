"""Graph export/import in three containers: edge list, DIMACS, JSON.

Every container carries the same metadata block (field parameters plus
counts) so an import can rebuild the arithmetic context without access
to the code that produced the file.  Exports are deterministic byte for
byte; imports validate counts, id ranges, duplicate edges and
regularity before assembling the graph.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .builder import BipartiteGraph, assemble
from .field import make_field

__all__ = ["GraphFileError", "export_graph", "import_graph", "FORMATS"]

FORMATS = ("edgelist", "dimacs", "json")

_META_KEYS = (
    "edge_count",
    "encoding",
    "format",
    "k",
    "m",
    "modulus",
    "p",
    "point_count",
    "q",
    "version",
    "vertex_count",
)

_ENCODING = "id = side*q^k + sum(coord[i]*q^(i-1))"


class GraphFileError(ValueError):
    """Raised when a graph file is malformed or internally inconsistent."""


def _meta(g: BipartiteGraph, fmt: str) -> dict:
    f = g.field
    return {
        "edge_count": int(g.edge_count),
        "encoding": _ENCODING,
        "format": fmt,
        "k": int(g.k),
        "m": int(f.m),
        "modulus": [int(c) for c in f.modulus],
        "p": int(f.p),
        "point_count": int(g.n_points),
        "q": int(g.q),
        "version": 1,
        "vertex_count": int(g.n_vertices),
    }


def _meta_json(meta: dict) -> str:
    return json.dumps(meta, sort_keys=True, separators=(",", ":"))


def export_graph(g: BipartiteGraph, path, fmt: str = "edgelist") -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    pid, lid = g.edges()
    meta = _meta(g, fmt)
    out: list[str] = []
    if fmt == "edgelist":
        out.append(f"# {_meta_json(meta)}")
        out.extend(f"{p} {l}" for p, l in zip(pid.tolist(), lid.tolist()))
        text = "\n".join(out) + "\n"
    elif fmt == "dimacs":
        out.append(f"c {_meta_json(meta)}")
        out.append(f"p edge {g.n_vertices} {g.edge_count}")
        # DIMACS ids are 1-based
        out.extend(f"e {p + 1} {l + 1}" for p, l in zip(pid.tolist(), lid.tolist()))
        text = "\n".join(out) + "\n"
    else:
        obj = {"meta": meta, "edges": [[int(p), int(l)] for p, l in zip(pid, lid)]}
        text = json.dumps(obj, sort_keys=True) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def import_graph(path) -> BipartiteGraph:
    text = Path(path).read_text(encoding="utf-8")
    head = text.lstrip()[:1]
    if head == "#":
        fmt, meta, pid, lid = _parse_edgelist(text)
    elif head == "{":
        fmt, meta, pid, lid = _parse_json(text)
    elif head in ("c", "p"):
        fmt, meta, pid, lid = _parse_dimacs(text)
    else:
        raise GraphFileError("unrecognized graph file (expected edgelist, DIMACS or JSON)")
    return _assemble_checked(fmt, meta, pid, lid)


def _parse_meta(blob: str, fmt: str) -> dict:
    try:
        meta = json.loads(blob)
    except json.JSONDecodeError as e:
        raise GraphFileError(f"metadata is not valid JSON: {e}") from None
    if not isinstance(meta, dict):
        raise GraphFileError("metadata must be a JSON object")
    missing = [k for k in _META_KEYS if k not in meta]
    if missing:
        raise GraphFileError(f"metadata is missing keys: {', '.join(missing)}")
    if meta.get("version") != 1:
        raise GraphFileError(f"unsupported file version {meta.get('version')!r}")
    if meta.get("format") != fmt:
        raise GraphFileError(
            f"metadata says format {meta.get('format')!r} but the file is {fmt}"
        )
    for key in ("edge_count", "k", "m", "p", "point_count", "q", "vertex_count"):
        if not isinstance(meta[key], int) or meta[key] < 0:
            raise GraphFileError(f"metadata field {key!r} must be a nonnegative integer")
    return meta


def _edge_pair(token_line: str, lineno: int) -> tuple[int, int]:
    parts = token_line.split()
    if len(parts) != 2:
        raise GraphFileError(f"line {lineno}: expected 'point line', got {token_line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFileError(f"line {lineno}: non-integer vertex id") from None


def _parse_edgelist(text: str):
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise GraphFileError("edge list must start with a '# {metadata}' header")
    meta = _parse_meta(lines[0][2:], "edgelist")
    pairs = []
    for no, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        pairs.append(_edge_pair(ln, no))
    pid = np.array([p for p, _ in pairs], dtype=np.int64)
    lid = np.array([l for _, l in pairs], dtype=np.int64)
    return "edgelist", meta, pid, lid


def _parse_dimacs(text: str):
    lines = text.splitlines()
    if len(lines) < 2 or not lines[0].startswith("c "):
        raise GraphFileError("DIMACS file must open with a 'c {metadata}' comment")
    meta = _parse_meta(lines[0][2:], "dimacs")
    prob = lines[1].split()
    if len(prob) != 4 or prob[0] != "p" or prob[1] != "edge":
        raise GraphFileError(f"bad problem line {lines[1]!r}")
    try:
        nv, ne = int(prob[2]), int(prob[3])
    except ValueError:
        raise GraphFileError(f"bad problem line {lines[1]!r}") from None
    if nv != meta["vertex_count"] or ne != meta["edge_count"]:
        raise GraphFileError("problem line disagrees with metadata counts")
    pairs = []
    for no, ln in enumerate(lines[2:], start=3):
        if not ln.strip():
            continue
        if not ln.startswith("e "):
            raise GraphFileError(f"line {no}: expected an 'e u v' record")
        u, v = _edge_pair(ln[2:], no)
        pairs.append((u - 1, v - 1))
    pid = np.array([p for p, _ in pairs], dtype=np.int64)
    lid = np.array([l for _, l in pairs], dtype=np.int64)
    return "dimacs", meta, pid, lid


def _parse_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFileError(f"not valid JSON: {e}") from None
    if not isinstance(obj, dict) or "meta" not in obj or "edges" not in obj:
        raise GraphFileError("JSON graph must be an object with 'meta' and 'edges'")
    meta = _parse_meta(json.dumps(obj["meta"]), "json")
    edges = obj["edges"]
    if not isinstance(edges, list) or any(
        not isinstance(e, list) or len(e) != 2 for e in edges
    ):
        raise GraphFileError("'edges' must be a list of [point, line] pairs")
    pid = np.array([e[0] for e in edges], dtype=np.int64)
    lid = np.array([e[1] for e in edges], dtype=np.int64)
    return "json", meta, pid, lid


def _assemble_checked(fmt: str, meta: dict, pid: np.ndarray, lid: np.ndarray) -> BipartiteGraph:
    q, k = meta["q"], meta["k"]
    n_points = meta["point_count"]
    n_lines = meta["vertex_count"] - n_points
    if n_lines <= 0:
        raise GraphFileError("vertex_count must exceed point_count")
    if pid.size != meta["edge_count"]:
        raise GraphFileError(
            f"metadata promises {meta['edge_count']} edges, file has {pid.size}"
        )
    if pid.size and (pid.min() < 0 or pid.max() >= n_points):
        raise GraphFileError("point id out of range")
    if lid.size and (lid.min() < n_points or lid.max() >= meta["vertex_count"]):
        raise GraphFileError("line id out of range")
    order = np.lexsort((lid, pid))
    sp, sl = pid[order], lid[order]
    dup = (sp[1:] == sp[:-1]) & (sl[1:] == sl[:-1])
    if dup.any():
        i = int(np.flatnonzero(dup)[0])
        raise GraphFileError(f"duplicate edge {sp[i]} {sl[i]}")
    pdeg = np.bincount(pid, minlength=n_points)
    ldeg = np.bincount(lid - n_points, minlength=n_lines)
    if pdeg.size and not (pdeg == q).all():
        raise GraphFileError("irregular degree on the point side")
    if ldeg.size and not (ldeg == q).all():
        raise GraphFileError("irregular degree on the line side")
    try:
        spec = make_field(meta["q"], tuple(meta["modulus"]))
    except (TypeError, ValueError) as e:
        raise GraphFileError(f"bad field parameters in metadata: {e}") from None
    if spec.p != meta["p"] or spec.m != meta["m"]:
        raise GraphFileError("field parameters p, m disagree with q and modulus")
    return assemble(n_points, n_lines, pid, lid, k=k, q=q, field=spec)
