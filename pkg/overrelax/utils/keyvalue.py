# overrelax/utils/keyvalue.py
"""
Flat ``key=value`` text files, one pair per line.

Parsing goes through python-dotenv with interpolation off, so blank lines,
``#`` comments and surrounding whitespace follow .env rules. Used for
experiment configs and CSV sidecar metadata.
"""
import io
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from dotenv import dotenv_values
from dotenv.parser import parse_stream

PathLike = Union[str, Path]


def _check_bindings(text: str, source: str) -> None:
    # dotenv keeps the last of repeated keys and treats a bare word as a key
    seen = set()
    for binding in parse_stream(io.StringIO(text)):
        line = binding.original.line
        if binding.error:
            raise ValueError(f"{source}:{line}: cannot parse '{binding.original.string.strip()}'")
        if binding.key is None:
            continue
        if binding.value is None:
            raise ValueError(f"{source}:{line}: expected key=value, got '{binding.key}'")
        if binding.key in seen:
            raise ValueError(f"{source}:{line}: duplicate key '{binding.key}'")
        seen.add(binding.key)


def parse_pairs(text: str, source: str = "<text>") -> Dict[str, str]:
    _check_bindings(text, source)
    values = dotenv_values(stream=io.StringIO(text), interpolate=False)
    return {key: value for key, value in values.items() if value is not None}


def read_pairs(path: PathLike) -> Dict[str, str]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_pairs(text, source=str(path))


def format_pairs(pairs: Mapping[str, Any], prefix: str = "") -> str:
    return "".join(f"{prefix}{key}={_format_value(value)}\n" for key, value in pairs.items())


def write_pairs(path: PathLike, pairs: Mapping[str, Any]) -> Path:
    path = Path(path)
    path.write_text(format_pairs(pairs), encoding="utf-8")
    return path


def _format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_format_value(v) for v in value)
    text = str(value)
    if "\n" in text:
        raise ValueError(f"Values cannot span lines: {text!r}")
    return text
