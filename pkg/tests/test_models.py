from __future__ import annotations

import json
from pathlib import Path

import pytest

from arcmodel.errors import ManifestError
from arcmodel.models.base import load_document, parse_document
from arcmodel.models.curves import CurveFile
from arcmodel.models.manifest import Manifest
from arcmodel.models.report import GraphSummary, ReportBundle

from conftest import MANIFEST_DIR


def _manifest(**overrides) -> dict:
    data = {
        "schema_version": "1",
        "name": "m",
        "exhaustion": {"max_genus": 2},
        "level": 1,
        "build": {"radius": 2},
    }
    data.update(overrides)
    return data


@pytest.mark.parametrize("path", sorted(MANIFEST_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_bundled_manifests_validate(path: Path) -> None:
    manifest = load_document(Manifest, path)
    assert manifest.name == path.stem
    assert manifest.level < manifest.exhaustion.max_genus


def test_defaults() -> None:
    manifest = parse_document(Manifest, json.dumps(_manifest()))
    assert manifest.genus == 2
    assert manifest.build.stab_depth == 1
    assert manifest.generators.selection == "lickorish"
    assert manifest.outputs.formats == ["structured-text"]
    assert manifest.analysis.reports == []


def test_unknown_field_names_its_line() -> None:
    text = json.dumps(_manifest(build={"radius": 2, "radios": 3}), indent=2)
    with pytest.raises(ManifestError) as info:
        parse_document(Manifest, text, "m.json")
    assert "build.radios" in str(info.value)
    line = next(i for i, l in enumerate(text.splitlines(), 1) if '"radios"' in l)
    assert info.value.location == f"m.json:{line}"


def test_syntax_error_has_line_and_column() -> None:
    with pytest.raises(ManifestError) as info:
        parse_document(Manifest, '{\n  "name": "m",\n  oops\n}', "bad.json")
    assert info.value.location == "bad.json:3:3"


@pytest.mark.parametrize(
    "overrides",
    [
        {"level": 2},
        {"delta": "delta"},
        {"delta": "handle:x"},
        {"schema_version": "2"},
        {"build": {"radius": -1}},
        {"analysis": {"reports": ["everything"]}},
        {"outputs": {"formats": ["png"]}},
    ],
)
def test_invalid_manifests(overrides) -> None:
    with pytest.raises(ManifestError):
        parse_document(Manifest, json.dumps(_manifest(**overrides)))


def test_side_subsurface_reference() -> None:
    data = _manifest(analysis={"witness_candidates": [{"boundary": ["s_1"], "side": "alpha_1", "name": "h"}]})
    manifest = parse_document(Manifest, json.dumps(data))
    assert manifest.analysis.witness_candidates[0].side == "alpha_1"


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(ManifestError) as info:
        load_document(Manifest, tmp_path / "absent.json")
    assert "file not found" in str(info.value)


def test_curve_entries_need_one_source() -> None:
    base = {"surface": {"genus": 1, "punctures": 1}}
    with pytest.raises(ManifestError):
        parse_document(CurveFile, json.dumps({**base, "curves": [{"registry": "alpha_1", "coords": [1, 0, 1]}]}))
    with pytest.raises(ManifestError):
        parse_document(CurveFile, json.dumps({**base, "curves": []}))
    document = parse_document(CurveFile, json.dumps({**base, "curves": [{"coords": [1, 0, 1]}]}))
    assert document.curves[0].coords == [1, 0, 1]


def test_empty_report_bundle() -> None:
    graph = GraphSummary(key="k", vertices=1, edges=0, radius=0, stab_depth=0)
    bundle = ReportBundle(manifest="m", graph=graph)
    assert bundle.is_empty
