"""Content-addressed artifact cache for arcmodel.

This module provides the on-disk cache of built model balls. Entries are
keyed by a hash of the manifest payload and the code version; writes go to a
temporary file first and are renamed into place.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Union

from arcmodel import __version__

logger = logging.getLogger(__name__)


def content_key(payload: Dict, version: str = __version__) -> str:
    """Hash of a JSON payload together with the code version."""
    data = json.dumps({"payload": payload, "version": version}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(data.encode("utf-8")).hexdigest()


def atomic_write(path: Union[str, Path], text: str) -> None:
    """Write text to path through a temporary file in the same directory."""
    path = str(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


class ArtifactCache:
    """Directory of cached artifacts, one subdirectory per content key."""

    def __init__(self, cache_dir: Union[str, Path]):
        """Initialize the cache.

        Args:
            cache_dir: Directory holding the cache entries
        """
        self.cache_dir = str(cache_dir)

    def entry_dir(self, key: str) -> str:
        return os.path.join(self.cache_dir, key[:2], key)

    def has(self, key: str, name: str = "graph.json") -> bool:
        return os.path.exists(os.path.join(self.entry_dir(key), name))

    def load(self, key: str, name: str = "graph.json") -> Optional[str]:
        """Read a cached artifact.

        Returns:
            The artifact text, or None on a miss
        """
        path = os.path.join(self.entry_dir(key), name)
        if not os.path.exists(path):
            logger.debug(f"Cache miss for {key[:12]}/{name}")
            return None
        with open(path, "r", encoding="utf-8") as f:
            logger.info(f"Cache hit for {key[:12]}/{name}")
            return f.read()

    def store(self, key: str, name: str, text: str) -> str:
        path = os.path.join(self.entry_dir(key), name)
        atomic_write(path, text)
        logger.debug(f"Cached {key[:12]}/{name}")
        return path

    def entries(self) -> List[str]:
        if not os.path.exists(self.cache_dir):
            return []
        keys = []
        for prefix in sorted(os.listdir(self.cache_dir)):
            sub = os.path.join(self.cache_dir, prefix)
            if os.path.isdir(sub):
                keys.extend(sorted(os.listdir(sub)))
        return keys
