"""JSON documents for graphs, tensors, Kraus families, states, and reports.

Every document carries {"kind": ..., "version": "1", ...}.  Numeric constant
values are either JSON numbers or exact fraction strings "p/q"; exact values
survive a round trip unchanged, floats round-trip via repr (17 significant
digits).  Parsing runs the full invariant checks of the domain constructors.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import numpy as np

from .errors import FormatError
from .graphs import PointedGraph, pointed_graph
from .hypergroups import (
    Hypergroup,
    Number,
    StructureTensor,
    derive_involution,
    structure_tensor,
)
from .oqrw import BlockState, KrausFamily, block_state, kraus_family

FORMAT_VERSION = "1"


# ---------------------------------------------------------------------------
# Scalar values.


def encode_value(value: Number):
    if isinstance(value, bool):
        raise FormatError(f"boolean is not a constant value: {value}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    return float(value)


def decode_value(raw) -> Number:
    if isinstance(raw, bool):
        raise FormatError(f"boolean is not a constant value: {raw}")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float):
        return raw
    if isinstance(raw, str):
        try:
            if "/" in raw:
                num, den = raw.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad numeric literal {raw!r}: {exc}") from None
    raise FormatError(f"bad numeric literal {raw!r}")


def _load(text: str, kinds: tuple[str, ...]) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise FormatError("document is not a JSON object")
    kind = doc.get("kind")
    if kind not in kinds:
        raise FormatError(f"expected kind in {kinds}, found {kind!r}")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {doc.get('version')!r}")
    return doc


def _require(doc: dict, field: str):
    if field not in doc:
        raise FormatError(f"missing field {field!r}")
    return doc[field]


def _has_dict(node) -> bool:
    if isinstance(node, dict):
        return True
    if isinstance(node, (list, tuple)):
        return any(_has_dict(x) for x in node)
    return False


def _dump(doc: dict) -> str:
    """Indented JSON with short leaf arrays kept on one line."""
    compacted: list[str] = []

    def mark(node):
        if isinstance(node, (list, tuple)):
            if not _has_dict(node):
                compact = json.dumps(list(node))
                if len(compact) <= 76:
                    compacted.append(compact)
                    return f"\u0000{len(compacted) - 1}\u0000"
            return [mark(x) for x in node]
        if isinstance(node, dict):
            return {key: mark(value) for key, value in node.items()}
        return node

    text = json.dumps(mark(doc), indent=2)
    text = re.sub(r'"\\u0000(\d+)\\u0000"', lambda m: compacted[int(m.group(1))], text)
    return text + "\n"


# ---------------------------------------------------------------------------
# Graphs.


def serialize_graph(graph: PointedGraph) -> str:
    doc = {
        "kind": "graph",
        "version": FORMAT_VERSION,
        "vertices": list(graph.labels),
        "edges": [[graph.labels[u], graph.labels[v]] for u, v in graph.edges()],
        "base": graph.labels[graph.base],
    }
    if graph.window_radius is not None:
        doc["window_radius"] = graph.window_radius
    return _dump(doc)


def parse_graph(text: str) -> PointedGraph:
    doc = _load(text, ("graph",))
    labels = [str(v) for v in _require(doc, "vertices")]
    index = {label: i for i, label in enumerate(labels)}
    if len(index) != len(labels):
        raise FormatError("vertex labels are not unique")
    edges = []
    for edge in _require(doc, "edges"):
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise FormatError(f"bad edge {edge!r}")
        a, b = str(edge[0]), str(edge[1])
        if a not in index or b not in index:
            raise FormatError(f"edge {edge!r} references unknown vertex")
        edges.append((index[a], index[b]))
    base = str(_require(doc, "base"))
    if base not in index:
        raise FormatError(f"base {base!r} is not a vertex")
    window = doc.get("window_radius")
    return pointed_graph(labels, edges, index[base], window_radius=window)


# ---------------------------------------------------------------------------
# Tensors and hypergroups.


def serialize_tensor(
    tensor: StructureTensor,
    involution=None,
    kind: str = "tensor",
) -> str:
    entries = [
        [i, j, k, encode_value(v)]
        for (i, j) in sorted(tensor.rows)
        for k, v in sorted(tensor.rows[(i, j)].items())
    ]
    doc = {
        "kind": kind,
        "version": FORMAT_VERSION,
        "size": tensor.size,
        "entries": entries,
    }
    if involution is not None:
        doc["involution"] = list(involution)
    if tensor.truncation_radius is not None:
        doc["truncation_radius"] = tensor.truncation_radius
    return _dump(doc)


def serialize_hypergroup(h: Hypergroup) -> str:
    return serialize_tensor(h.tensor, involution=h.involution, kind="hypergroup")


def parse_tensor(text: str) -> StructureTensor:
    doc = _load(text, ("tensor", "hypergroup"))
    size = _require(doc, "size")
    if not isinstance(size, int) or size <= 0:
        raise FormatError(f"bad size {size!r}")
    entries = []
    for entry in _require(doc, "entries"):
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise FormatError(f"bad entry {entry!r}")
        i, j, k, raw = entry
        if not all(isinstance(x, int) for x in (i, j, k)):
            raise FormatError(f"bad entry indices in {entry!r}")
        entries.append((i, j, k, decode_value(raw)))
    return structure_tensor(size, entries, truncation_radius=doc.get("truncation_radius"))


def stored_involution(text: str):
    """The optional involution list of a tensor/hypergroup document."""
    doc = _load(text, ("tensor", "hypergroup"))
    sigma = doc.get("involution")
    return None if sigma is None else tuple(int(s) for s in sigma)


def parse_hypergroup(text: str) -> Hypergroup:
    """Parse and fully validate; raises if the axioms fail."""
    tensor = parse_tensor(text)
    sigma = stored_involution(text)
    if sigma is None:
        sigma = derive_involution(tensor)
    return Hypergroup.build(tensor, sigma)


# ---------------------------------------------------------------------------
# Kraus families and states.


def _encode_matrix(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


def _decode_matrix(raw, where: str) -> np.ndarray:
    try:
        arr = np.asarray(
            [[complex(cell[0], cell[1]) for cell in row] for row in raw]
        )
    except (TypeError, ValueError, IndexError):
        raise FormatError(f"bad matrix in {where}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise FormatError(f"matrix in {where} is not square")
    return arr


def serialize_kraus(family: KrausFamily) -> str:
    blocks = [
        {"i": i, "j": j, "k": k, "matrix": _encode_matrix(mat)}
        for (i, j, k), mat in sorted(family.blocks.items())
    ]
    doc = {
        "kind": "kraus",
        "version": FORMAT_VERSION,
        "d_size": family.d_size,
        "h_dim": family.h_dim,
        "blocks": blocks,
    }
    if family.truncation_radius is not None:
        doc["truncation_radius"] = family.truncation_radius
    return _dump(doc)


def parse_kraus(text: str) -> KrausFamily:
    doc = _load(text, ("kraus",))
    d_size = _require(doc, "d_size")
    h_dim = _require(doc, "h_dim")
    if not isinstance(d_size, int) or not isinstance(h_dim, int):
        raise FormatError("d_size and h_dim must be integers")
    blocks = {}
    for block in _require(doc, "blocks"):
        if not isinstance(block, dict):
            raise FormatError(f"bad block {block!r}")
        try:
            key = (int(block["i"]), int(block["j"]), int(block["k"]))
        except (KeyError, TypeError, ValueError):
            raise FormatError(f"bad block indices in {block!r}") from None
        if key in blocks:
            raise FormatError(f"duplicate block {key}")
        blocks[key] = _decode_matrix(block.get("matrix"), f"block {key}")
    return kraus_family(
        d_size, h_dim, blocks, truncation_radius=doc.get("truncation_radius")
    )


def serialize_state(state: BlockState) -> str:
    doc = {
        "kind": "state",
        "version": FORMAT_VERSION,
        "h_dim": state.h_dim,
        "blocks": [_encode_matrix(b) for b in state.blocks],
    }
    return _dump(doc)


def parse_state(text: str) -> BlockState:
    doc = _load(text, ("state",))
    h_dim = _require(doc, "h_dim")
    raw_blocks = _require(doc, "blocks")
    if not raw_blocks:
        raise FormatError("state has no blocks")
    blocks = [_decode_matrix(raw, f"state block {i}") for i, raw in enumerate(raw_blocks)]
    if any(b.shape != (h_dim, h_dim) for b in blocks):
        raise FormatError("state blocks disagree with h_dim")
    try:
        return block_state(blocks)
    except ValueError as exc:
        raise FormatError(f"invalid state: {exc}") from None


# ---------------------------------------------------------------------------
# Reports.


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return _encode_matrix(value) if value.ndim == 2 else [float(x) for x in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if is_dataclass(value) and not isinstance(value, type):
        return {k: _jsonable(v) for k, v in asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def report_document(check: str, payload) -> str:
    doc = {"kind": "report", "version": FORMAT_VERSION, "check": check}
    doc.update(_jsonable(payload))
    return _dump(doc)
