"""
Formatting utilities for reports.

This module provides the flat CSV tables written next to report bundles and
the one-line summaries printed by the CLI.
"""

import csv
import io
import json
from typing import Dict, List, Sequence

from arcmodel.core.model import ModelGraph

WITNESS_COLUMNS = ["subsurface", "key", "status", "genus", "euler_characteristic",
                   "vertices_checked", "counterexample", "counterexample_digest", "missed_component"]
PAIR_COLUMNS = ["u", "v", "model_distance", "sum", "residual"]
QI_COLUMNS = ["index", "digest", "graph_distance", "word_weight", "deviation"]


def _table(columns: Sequence[str], rows: List[Dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
    return buffer.getvalue()


def witness_table(witnesses: List[Dict]) -> str:
    """One row per witness candidate."""
    return _table(WITNESS_COLUMNS, witnesses)


def pair_table(rows: List[Dict]) -> str:
    """One row per sampled vertex pair of the distance-formula fit."""
    flat = []
    for row in rows:
        item = dict(row)
        item["residual"] = f"{row['residual']:.6f}"
        flat.append(item)
    return _table(PAIR_COLUMNS, flat)


def qi_table(rows: List[Dict]) -> str:
    return _table(QI_COLUMNS, rows)


def format_build_summary(m: ModelGraph, key: str, cached: bool, paths: Sequence[str]) -> str:
    lines = [f"{key[:12]} {'cached' if cached else 'built'}: {m.vertex_count} vertices, {m.edge_count} edges"]
    lines.extend(f"  {p}" for p in paths)
    return "\n".join(lines)


def format_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
