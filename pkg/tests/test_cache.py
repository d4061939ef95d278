from __future__ import annotations

from pathlib import Path

from arcmodel.utils.cache import ArtifactCache, atomic_write, content_key


def test_content_key_is_order_independent() -> None:
    assert content_key({"a": 1, "b": [1, 2]}) == content_key({"b": [1, 2], "a": 1})
    assert content_key({"a": 1}) != content_key({"a": 2})
    assert content_key({"a": 1}, version="0") != content_key({"a": 1}, version="1")


def test_atomic_write_replaces_and_leaves_no_temporaries(tmp_path: Path) -> None:
    target = tmp_path / "nested" / "out.txt"
    atomic_write(target, "first\n")
    atomic_write(target, "second\n")
    assert target.read_text(encoding="utf-8") == "second\n"
    assert [p.name for p in target.parent.iterdir()] == ["out.txt"]


def test_cache_round_trip(tmp_path: Path) -> None:
    cache = ArtifactCache(tmp_path / "cache")
    key = content_key({"name": "x"})
    assert cache.entries() == []
    assert cache.load(key) is None
    cache.store(key, "graph.json", "{}\n")
    assert cache.has(key)
    assert cache.load(key) == "{}\n"
    assert cache.entries() == [key]
