"""
Base model for arcmodel structured text files.

This module provides the shared Pydantic base and the loader that turns
JSON syntax and schema errors into ManifestError with locations.
"""

import json
import re
from pathlib import Path
from typing import Any, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from arcmodel.errors import ManifestError

M = TypeVar("M", bound="ArcModelBaseModel")


class ArcModelBaseModel(BaseModel):
    """Base model rejecting unknown fields."""
    model_config = ConfigDict(extra="forbid")


def _key_line(text: str, loc: tuple) -> int:
    """Line of the last named key of a location in the source text, 0 if not found."""
    for part in reversed(loc):
        if isinstance(part, str):
            match = re.search(r'"%s"\s*:' % re.escape(part), text)
            if match:
                return text.count("\n", 0, match.start()) + 1
    return 0


def format_location(loc: tuple) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_document(model: Type[M], text: str, source: str = "<string>") -> M:
    """Validate a JSON document against a schema model.

    Raises:
        ManifestError: On JSON syntax errors (with line and column) or schema
            errors (with the field path and, when it can be found, the line)
    """
    try:
        data: Any = json.loads(text)
    except json.JSONDecodeError as e:
        raise ManifestError(e.msg, f"{source}:{e.lineno}:{e.colno}")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = tuple(first["loc"])
        line = _key_line(text, loc)
        where = f"{source}:{line}" if line else source
        details = "; ".join(f"{format_location(tuple(err['loc']))}: {err['msg']}" for err in e.errors())
        raise ManifestError(details, where)


def load_document(model: Type[M], path: Union[str, Path]) -> M:
    """Read and validate a JSON document from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ManifestError("file not found", str(path))
    return parse_document(model, text, str(path))


def dump_document(document: BaseModel) -> str:
    """Byte-stable JSON rendering of a document."""
    return json.dumps(document.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
