import json

import pytest

from catalog import CATALOG
from code_file import load_code_file, parse_code_file, serialize_code_file, write_code_file
from errors import CodeFormatError, CodewordRangeError, DuplicateCodewordError


LINDSTROM_TEXT = """\
# Lindstrom pair
name = lindstrom
d = 2
code = 1, 2, 3
code = 0, 3
"""


def test_parse_text(lindstrom):
    sys = parse_code_file(LINDSTROM_TEXT)
    assert sys == lindstrom
    assert sys.name == "lindstrom"
    assert sys.codes[0] == (1, 2, 3)


def test_parse_json(lindstrom):
    sys = parse_code_file(json.dumps({"d": 2, "codes": [[1, 2, 3], [0, 3]]}))
    assert sys == lindstrom
    assert sys.name is None


def test_range_error_points_at_field():
    with pytest.raises(CodewordRangeError) as excinfo:
        parse_code_file("d = 2\ncode = 1, 4\n")
    assert excinfo.value.location == "line 2, field 2"


def test_duplicate_error_points_at_field():
    with pytest.raises(DuplicateCodewordError) as excinfo:
        parse_code_file("d = 2\ncode = 0, 3\ncode = 1, 2, 1\n")
    assert excinfo.value.location == "line 3, field 3"
    with pytest.raises(DuplicateCodewordError) as excinfo:
        parse_code_file('{"d": 2, "codes": [[0, 0]]}')
    assert excinfo.value.location == "codes[0][1]"


@pytest.mark.parametrize("text", [
    "code = 1, 2\n",                        # no dimension
    "d = 2\n",                              # no codes
    "d = 2\nd = 3\ncode = 1\n",
    "d = 2\ncode = 1,,2\n",
    "d = 2\ncode = 1, x\n",
    "d = 2\nwords = 1\n",
    "d = 0\ncode = 0\n",
    '{"d": 2}',
    '{"d": 2, "codes": [[1, "2"]]}',
    '{"d": 2, "codes": [[1, 2]]',
    "[1, 2]",
])
def test_malformed_files(text):
    with pytest.raises(CodeFormatError):
        parse_code_file(text)


def test_serialize_round_trip_over_catalog():
    for entry in CATALOG.values():
        for fmt in ("text", "json"):
            again = parse_code_file(serialize_code_file(entry.system, fmt=fmt))
            assert again == entry.system
            assert again.name == entry.name


def test_serialize_rejects_unknown_format(lindstrom):
    with pytest.raises(ValueError):
        serialize_code_file(lindstrom, fmt="yaml")


def test_write_and_load(tmp_path, lindstrom):
    path = write_code_file(tmp_path / "pair.code", lindstrom.renamed(None))
    assert path.read_text().startswith("d = 2")
    loaded = load_code_file(path)
    assert loaded == lindstrom
    assert loaded.name == "pair"
    assert [p.name for p in tmp_path.iterdir()] == ["pair.code"]


def test_load_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_code_file(tmp_path / "missing.code")
