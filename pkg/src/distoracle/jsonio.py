import enum
import json
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from typing import Any, Literal

import pyjson5

from .exception import ScenarioError


class FileType(enum.Enum):
    """
    Structured file types read or written by distoracle.

    Values:
        Json (str): "json" extension.
        Json5 (str): "json5" extension, JSON with comments and trailing commas.
        Jsonl (str): "jsonl" (JSON Lines) extension.
        Toml (str): "toml" extension.
    """

    Json = "json"
    Json5 = "json5"
    Jsonl = "jsonl"
    Toml = "toml"


def check_file_type(filename: str, type_: Literal["json", "json5", "jsonl", "toml"] | None = None) -> FileType:
    """
    Checks that a filename has a supported extension.

    Args:
        filename (str): Input filename (e.g., "scenario.toml").
        type_ (str, optional): Override the extension.

    Returns:
        FileType: Enum member matching the extension.

    Raises:
        ValueError: If the extension is not one of json, json5, jsonl or toml.

    Example:
        >>> check_file_type("scenario.toml")
        <FileType.Toml: 'toml'>
        >>> check_file_type("scenario.yaml")
        ValueError: Unknown file type .yaml: scenario.yaml
    """
    ext_ = filename.split(".")[-1].lower() if type_ is None else type_
    try:
        return FileType(ext_)
    except ValueError:
        raise ValueError(f"Unknown file type .{ext_}: {filename}") from None


def load_mapping(filename: str) -> dict[str, Any]:
    """Load a single JSON, JSON5 or TOML document whose top level is a table.

    JSON and JSON5 are both parsed with pyjson5, so comments and trailing commas are accepted in either.

    Raises:
        ScenarioError: Unsupported extension, unparsable content, or a top level that is not a table.
    """
    try:
        ext_ = check_file_type(filename)
    except ValueError as e:
        raise ScenarioError(str(e)) from None
    if ext_ is FileType.Jsonl:
        raise ScenarioError(f"{filename}: a scenario must be a single document, not JSON Lines")
    try:
        if ext_ is FileType.Toml:
            with open(filename, "rb") as f:
                content = tomllib.load(f)
        else:
            with open(filename, "r", encoding="utf8") as f:
                content = pyjson5.load(f)  # type: ignore
    except (tomllib.TOMLDecodeError, pyjson5.Json5Exception) as e:
        raise ScenarioError(f"{filename}: {e}") from e
    if not isinstance(content, dict):
        raise ScenarioError(f"{filename}: top level should be a table, but now it is {type(content).__name__}")
    return content


def _make_parent(filename: str) -> None:
    parent = os.path.dirname(filename)
    if parent:
        os.makedirs(parent, exist_ok=True)


def write_json_file(data: Any, filename: str, type_: Literal["json", "jsonl"] | None = None) -> None:
    """
    Writes data to a JSON or JSONL file.

    Args:
        data (Any): A JSON document, or an iterable of records for JSONL.
        filename (str): Output file path.
        type_ (str, optional): Override the output format ("json" or "jsonl").

    Note:
        Creates parent directories if they don't exist.
        For JSON format, uses pretty printing (indent=4) and sorted keys.
        For JSONL format, writes one JSON object per line.
    """
    ext_ = check_file_type(filename, type_)
    _make_parent(filename)
    with open(filename, "w", encoding="utf8") as f:
        if ext_ is FileType.Jsonl:
            for item in data:
                json.dump(item, f, ensure_ascii=False, sort_keys=True)
                f.write("\n")
        else:
            json.dump(data, f, ensure_ascii=False, indent=4, sort_keys=True)
            f.write("\n")
