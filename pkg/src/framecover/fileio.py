"""Readers and writers for code / CFF text matrices, Hadamard files, graph and cover JSON.

Text matrices::

    t v
    0110...
    ...

one row per line.  Hadamard files are rows of ``+`` / ``-``.  Blank lines and
lines starting with ``#`` are ignored.

In cover JSON, explicit bicliques list vertex labels as integer lists:
a Kneser vertex is its sorted subset, a K_n vertex ``[i]``, a K^-_{m,m}
vertex ``[side, i]``, an I_t(r, w) vertex ``[side, *subset]`` (side 0 holds
the w-subsets) and a custom-graph vertex ``[id]``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .cff import CoverFreeFamily
from .codes import BinaryCode
from .combinatorics import (
    LabeledGraph,
    elements,
    format_descriptor,
    graph_from_family,
    parse_descriptor,
    to_mask,
)
from .covers import Biclique, BicliqueCover, GroundPairBiclique
from .errors import FormatError, ParameterError


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, raw, line


def parse_matrix(text, path=None):
    """Parse the ``t v`` header plus 0/1 rows; returns a uint8 array of shape (t, v)."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty matrix file", path=path)
    lineno, _, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError(f"header must be two integers 't v', got {header!r}", lineno, 1, path)
    t, v = map(int, parts)
    body = lines[1:]
    if len(body) != t:
        at = body[-1][0] + 1 if body else lineno + 1
        raise FormatError(f"header announces {t} rows, found {len(body)}", at, 1, path)
    rows = []
    for lineno, raw, line in body:
        if len(line) != v:
            raise FormatError(f"row has length {len(line)}, expected {v}", lineno, 1, path)
        for col, ch in enumerate(line, start=1):
            if ch not in "01":
                offset = raw.index(line) + col
                raise FormatError(f"unexpected character {ch!r}", lineno, offset, path)
        rows.append([int(ch) for ch in line])
    return np.array(rows, dtype=np.uint8).reshape(t, v)


def format_matrix(a):
    a = np.asarray(a)
    lines = [f"{a.shape[0]} {a.shape[1]}"] + ["".join(str(int(x)) for x in row) for row in a]
    return "\n".join(lines) + "\n"


def read_code(path):
    text = Path(path).read_text()
    a = parse_matrix(text, path)
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise FormatError("a code needs t >= 1 and v >= 1", 1, 1, path)
    return BinaryCode(a)


def write_code(code, path):
    Path(path).write_text(format_matrix(code.rows))


def read_cff(path):
    text = Path(path).read_text()
    return CoverFreeFamily.from_incidence(parse_matrix(text, path))


def write_cff(f, path):
    Path(path).write_text(format_matrix(f.incidence))


def parse_pm_matrix(text, path=None):
    rows = []
    width = None
    for lineno, raw, line in _content_lines(text):
        if width is None:
            width = len(line)
        if len(line) != width:
            raise FormatError(f"row has length {len(line)}, expected {width}", lineno, 1, path)
        row = []
        for col, ch in enumerate(line, start=1):
            if ch not in "+-":
                raise FormatError(f"unexpected character {ch!r}", lineno, raw.index(line) + col, path)
            row.append(1 if ch == "+" else -1)
        rows.append(row)
    if not rows:
        raise FormatError("empty matrix file", path=path)
    if len(rows) != width:
        raise FormatError(f"matrix is {len(rows)}x{width}, not square", path=path)
    return np.array(rows, dtype=np.int64)


def read_hadamard(path):
    from .hadamard import HadamardMatrix

    return HadamardMatrix(parse_pm_matrix(Path(path).read_text(), path))


def write_hadamard(h, path):
    Path(path).write_text(h.to_text())


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

_PARAM_NAMES = {"kneser": ("t", "r"), "inter": ("t", "r", "w"), "kn": ("n",), "kmm": ("m",)}


def family_to_json(family):
    if family[0] == "custom":
        return {"type": "custom"}
    return {"type": family[0], **dict(zip(_PARAM_NAMES[family[0]], family[1:]))}


def family_from_json(obj):
    if isinstance(obj, str):
        return ("custom",) if obj == "custom" else parse_descriptor(obj)
    kind = obj.get("type")
    if kind == "custom":
        return ("custom",)
    if kind not in _PARAM_NAMES:
        raise FormatError(f"unknown graph family {kind!r}")
    try:
        return (kind,) + tuple(int(obj[k]) for k in _PARAM_NAMES[kind])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad parameters for family {kind!r}: {exc}") from None


def graph_to_json(g, explicit=True):
    doc = {"family": family_to_json(g.family)}
    if explicit or g.family[0] == "custom":
        doc["vertices"] = list(range(g.n))
        doc["edges"] = [list(e) for e in g.sorted_edges]
    return doc


def graph_from_json(doc):
    family = family_from_json(doc.get("family", {"type": "custom"}))
    if family[0] != "custom":
        g = graph_from_family(family)
        if "edges" in doc and sorted(tuple(e) for e in doc["edges"]) != list(g.sorted_edges):
            raise FormatError(f"explicit edges disagree with the {format_descriptor(family)} family")
        return g
    try:
        n = len(doc["vertices"])
        ids = list(doc["vertices"])
        if ids != list(range(n)):
            raise FormatError("custom graph vertices must be the ids 0..n-1")
        return LabeledGraph.from_label_edges(range(n), [tuple(e) for e in doc["edges"]], ("custom",))
    except KeyError as exc:
        raise FormatError(f"custom graph is missing {exc}") from None
    except ParameterError as exc:
        raise FormatError(str(exc)) from None


def label_to_json(family, v):
    kind = family[0]
    if kind == "kneser":
        return elements(v)
    if kind == "inter":
        return [v[0], *elements(v[1])]
    if kind == "kmm":
        return [v[0], v[1]]
    return [v]


def label_from_json(family, item):
    kind = family[0]
    item = list(item)
    if kind == "kneser":
        return to_mask(item)
    if kind == "inter":
        return (item[0], to_mask(item[1:]))
    if kind == "kmm":
        return (item[0], item[1])
    if len(item) != 1:
        raise FormatError(f"vertex {item} should be a one-element list")
    return item[0]


def cover_to_json(cover):
    out = []
    for b in cover.bicliques:
        if isinstance(b, GroundPairBiclique):
            out.append({"A": elements(b.a), "B": elements(b.b), "r": b.r})
        else:
            out.append({
                "X": sorted(label_to_json(cover.target, v) for v in b.side_x),
                "Y": sorted(label_to_json(cover.target, v) for v in b.side_y),
            })
    return {"graph": format_descriptor(cover.target), "d": cover.d, "bicliques": out}


def cover_from_json(doc):
    try:
        family = family_from_json(doc["graph"])
        d = int(doc["d"])
        items = doc["bicliques"]
    except KeyError as exc:
        raise FormatError(f"cover document is missing {exc}") from None
    bicliques = []
    for k, item in enumerate(items):
        try:
            if "A" in item:
                bicliques.append(GroundPairBiclique(to_mask(item["A"]), to_mask(item["B"]), int(item["r"])))
            else:
                bicliques.append(Biclique(
                    frozenset(label_from_json(family, v) for v in item["X"]),
                    frozenset(label_from_json(family, v) for v in item["Y"]),
                ))
        except (KeyError, TypeError, ParameterError) as exc:
            raise FormatError(f"biclique {k}: {exc}") from None
    return BicliqueCover(family, d, tuple(bicliques))


def read_json(path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno, path) from None


def read_cover(path):
    return cover_from_json(read_json(path))


def write_cover(cover, path):
    Path(path).write_text(json.dumps(cover_to_json(cover), indent=1) + "\n")


def read_graph(spec):
    """A compact descriptor (``kneser:5,2``) or a path to a graph JSON file."""
    p = Path(spec)
    if p.exists():
        return graph_from_json(read_json(p))
    return graph_from_family(parse_descriptor(spec))


def write_graph(g, path, explicit=True):
    Path(path).write_text(json.dumps(graph_to_json(g, explicit)) + "\n")


def digest(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
