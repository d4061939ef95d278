"""
Graph export in DOT, edge-list CSV and structured text.

All three formats are byte-stable for a fixed graph: vertices are named by
their canonical digests and emitted in vertex order, edges in edge order.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Dict, Optional, Sequence, Union

import graphviz

from arcmodel.core.model import ModelGraph
from arcmodel.errors import UnknownFormat
from arcmodel.utils.cache import atomic_write

logger = logging.getLogger(__name__)

FORMATS = {"dot": "dot", "edge-csv": "csv", "csv": "csv", "structured-text": "json", "text": "json"}
EXTENSIONS = {"dot": ".dot", "csv": ".csv", "json": ".json"}


def normalize_format(fmt: str) -> str:
    try:
        return FORMATS[fmt]
    except KeyError:
        raise UnknownFormat(f"unknown export format {fmt!r}; expected dot, edge-csv or structured-text")


def to_dot(m: ModelGraph, witnesses: Optional[Dict[str, Sequence[int]]] = None) -> str:
    """DOT source of the graph.

    Args:
        m: The model graph
        witnesses: Optional map witness name -> indices of the vertices it meets;
            each vertex gets a ``witness`` attribute listing the witnesses meeting it
    """
    dot = graphviz.Graph(name="model", strict=False)
    dot.attr("graph", radius=str(m.radius), stab_depth=str(m.stab_depth))
    meeting: Dict[int, list] = {}
    for name, indices in sorted((witnesses or {}).items()):
        for i in indices:
            meeting.setdefault(i, []).append(name)
    for v in m.vertices:
        attrs = {"label": v.digest, "distance": str(v.distance)}
        if witnesses is not None:
            attrs["witness"] = ",".join(meeting.get(v.index, []))
        dot.node(v.digest, **attrs)
    for e in m.edges:
        dot.edge(m.vertices[e.source].digest, m.vertices[e.target].digest,
                 label=str(e.length), length=str(e.length), generator=str(e.generator))
    return dot.source


def to_csv(m: ModelGraph) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["src", "dst", "length", "generator"])
    for e in m.edges:
        writer.writerow([m.vertices[e.source].digest, m.vertices[e.target].digest, e.length, e.generator])
    return buffer.getvalue()


def to_text(m: ModelGraph) -> str:
    return json.dumps(m.to_dict(), indent=2, sort_keys=True) + "\n"


def render(m: ModelGraph, fmt: str, witnesses: Optional[Dict[str, Sequence[int]]] = None) -> str:
    kind = normalize_format(fmt)
    if kind == "dot":
        return to_dot(m, witnesses)
    if kind == "csv":
        return to_csv(m)
    return to_text(m)


def export_graph(m: ModelGraph, fmt: str, path: Union[str, Path],
                 witnesses: Optional[Dict[str, Sequence[int]]] = None) -> Path:
    """Write the graph to ``path`` in the given format.

    Raises:
        UnknownFormat: If the format is not dot, edge-csv or structured-text
    """
    path = Path(path)
    atomic_write(path, render(m, fmt, witnesses))
    logger.info(f"Exported {m!r} to {path}")
    return path
