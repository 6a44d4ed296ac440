import json

import pytest

from distoracle.exception import ScenarioError
from distoracle.jsonio import FileType, check_file_type, load_mapping, write_json_file


def test_check_file_type():
    assert check_file_type("scenario.toml") is FileType.Toml
    assert check_file_type("a/b.JSON5") is FileType.Json5
    assert check_file_type("rows.out", "jsonl") is FileType.Jsonl
    with pytest.raises(ValueError, match="yaml"):
        check_file_type("scenario.yaml")


def test_load_toml(write_text):
    path = write_text("s.toml", 'families = ["gnm"]\nsizes = [16, 32]\n')
    assert load_mapping(path) == {"families": ["gnm"], "sizes": [16, 32]}


def test_load_json_and_json5(write_text):
    assert load_mapping(write_text("s.json", '{"k": [3]}')) == {"k": [3]}
    assert load_mapping(write_text("s.json5", "// grid\n{k: [3, 4,],}\n")) == {"k": [3, 4]}


@pytest.mark.parametrize(
    "name, content",
    [
        ("s.json", "[1, 2]"),
        ("s.json", "{broken"),
        ("s.toml", "sizes = ["),
        ("s.jsonl", '{"k": 1}\n'),
        ("s.yaml", "k: 1"),
    ],
)
def test_load_mapping_rejects(write_text, name, content):
    with pytest.raises(ScenarioError):
        load_mapping(write_text(name, content))


def test_write_json_creates_parents(tmp_path):
    path = tmp_path / "a" / "b" / "report.json"
    write_json_file({"b": 1, "a": [1, 2]}, str(path))
    text = path.read_text()
    assert json.loads(text) == {"a": [1, 2], "b": 1}
    assert text.index('"a"') < text.index('"b"')


def test_write_jsonl(tmp_path):
    path = tmp_path / "rows.jsonl"
    write_json_file([{"n": 1}, {"n": 2}], str(path))
    assert [json.loads(line) for line in path.read_text().splitlines()] == [{"n": 1}, {"n": 2}]
