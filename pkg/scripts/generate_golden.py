#!/usr/bin/env python
"""Regenerate the golden files under tests/golden/.

Each golden file records a bundled manifest's ball by coordinate keys: the
vertices with their distances and the edges with length and generator. The
script refuses to write when the built vertex set differs from brute-force
word enumeration.

Usage:
    python scripts/generate_golden.py [manifest-name ...]
"""

import argparse
import json
import logging
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from arcmodel.core.model import build_ball, golden_record, orbit_by_words  # noqa: E402
from arcmodel.ui.cli_helpers import load_manifest, prepare  # noqa: E402
from arcmodel.utils.cache import atomic_write  # noqa: E402

logger = logging.getLogger("generate_golden")

MANIFEST_DIR = ROOT / "arcmodel" / "manifests"
GOLDEN_DIR = ROOT / "tests" / "golden"
DEFAULT_MANIFESTS = ["torus-small", "genus2-small"]


def golden_for(name: str) -> dict:
    context = prepare(load_manifest(str(MANIFEST_DIR / f"{name}.json")))
    build = context.manifest.build
    reached = orbit_by_words(context.mu, context.generators, build.radius, build.stab_depth)
    m = build_ball(context.mu, context.generators, build.radius, build.stab_depth, context.base_subsurface)
    if set(reached) != {v.key for v in m.vertices}:
        raise RuntimeError(f"{name}: build found {m.vertex_count} vertices, word enumeration {len(reached)}")
    return {"manifest": name, **golden_record(m)}


def main() -> int:
    parser = argparse.ArgumentParser(description="Regenerate golden ball files")
    parser.add_argument("manifests", nargs="*", default=DEFAULT_MANIFESTS, help="Bundled manifest names")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    for name in args.manifests:
        data = golden_for(name)
        path = GOLDEN_DIR / f"{name}.json"
        atomic_write(path, json.dumps(data, indent=2, sort_keys=True) + "\n")
        logger.info(f"Wrote {path}: {len(data['vertices'])} vertices, {len(data['edges'])} edges")
    return 0


if __name__ == "__main__":
    sys.exit(main())
