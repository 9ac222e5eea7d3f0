## adder-ud
## code_file.py

import json
import os
import tempfile
from pathlib import Path
from typing import List, Optional, Union

from code_core import CodeSystem
from errors import CodeFormatError, CodewordRangeError, DuplicateCodewordError
from utils.logger import logger

#########################################################################################

SUPPORTED_FORMATS = ("text", "json")

class CodeFileParser:
    """Reads the one-record code file format, as plain text or JSON.

    Text form:

        # comment
        name = T4-KO
        d = 4
        code = 0, 7, 8, 14
        code = 4, 5, 10, 11

    One `code` line per constituent, in order. A leading '{' selects JSON:
    {"name": ..., "d": ..., "codes": [[...], ...]}.
    """

    def parse(self, text: str) -> CodeSystem:
        if text.lstrip().startswith("{"):
            return self._parse_json(text)
        return self._parse_text(text)

    def _parse_int(self, raw: str, location: str) -> int:
        try:
            return int(raw.strip(), 10)
        except ValueError:
            raise CodeFormatError(f"expected a decimal integer, got {raw.strip()!r}", location=location)

    def _parse_text(self, text: str) -> CodeSystem:
        name: Optional[str] = None
        d: Optional[int] = None
        codes: List[List[int]] = []
        code_lines: List[int] = []

        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            location = f"line {lineno}"
            if "=" not in line:
                raise CodeFormatError(f"expected 'key = value', got {line!r}", location=location)
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.lower()
            if key == "name":
                name = value or None
            elif key == "d":
                if d is not None:
                    raise CodeFormatError("dimension given twice", location=location)
                d = self._parse_int(value, location)
            elif key == "code":
                fields = value.split(",")
                if not value or any(not f.strip() for f in fields):
                    raise CodeFormatError("empty codeword field", location=location)
                codes.append([self._parse_int(f, f"{location}, field {k + 1}") for k, f in enumerate(fields)])
                code_lines.append(lineno)
            else:
                raise CodeFormatError(f"unknown key {key!r}", location=location)

        if d is None:
            raise CodeFormatError("missing 'd = ...' line")
        if not codes:
            raise CodeFormatError("no 'code = ...' lines")
        return self._build(d, codes, name, lambda i, j: f"line {code_lines[i]}, field {j + 1}")

    def _parse_json(self, text: str) -> CodeSystem:
        try:
            record = json.loads(text)
        except json.JSONDecodeError as e:
            raise CodeFormatError(e.msg, location=f"line {e.lineno}, column {e.colno}")
        if not isinstance(record, dict):
            raise CodeFormatError("JSON code record must be an object")
        for key in ("d", "codes"):
            if key not in record:
                raise CodeFormatError(f"missing key {key!r}")
        d, codes = record["d"], record["codes"]
        if not isinstance(d, int) or isinstance(d, bool):
            raise CodeFormatError("'d' must be an integer", location="d")
        if not isinstance(codes, list) or not codes:
            raise CodeFormatError("'codes' must be a nonempty list of lists", location="codes")
        for i, code in enumerate(codes):
            if not isinstance(code, list):
                raise CodeFormatError("constituent must be a list", location=f"codes[{i}]")
            for j, c in enumerate(code):
                if not isinstance(c, int) or isinstance(c, bool):
                    raise CodeFormatError(f"codeword {c!r} is not an integer", location=f"codes[{i}][{j}]")
        return self._build(d, codes, record.get("name"), lambda i, j: f"codes[{i}][{j}]")

    def _build(self, d: int, codes: List[List[int]], name: Optional[str], where) -> CodeSystem:
        if not 1 <= d <= 64:
            raise CodeFormatError(f"dimension must be in [1, 64], got {d}", location="d")
        # re-run the range and duplicate checks here so diagnostics point into the file
        for i, code in enumerate(codes):
            if not code:
                raise CodeFormatError(f"constituent code {i + 1} is empty")
            seen = set()
            for j, c in enumerate(code):
                if not 0 <= c < (1 << d):
                    raise CodewordRangeError(f"codeword {c} does not fit in dimension {d}", location=where(i, j))
                if c in seen:
                    raise DuplicateCodewordError(f"codeword {c} appears twice in constituent code {i + 1}",
                                                 location=where(i, j))
                seen.add(c)
        return CodeSystem(d, tuple(tuple(code) for code in codes), name=name)


_parser = CodeFileParser()

def parse_code_file(text: str) -> CodeSystem:
    return _parser.parse(text)


def serialize_code_file(sys: CodeSystem, name: Optional[str] = None, fmt: str = "text") -> str:
    """Render a system in the code file format.

    Args:
        sys: the code system to write
        name: record name; defaults to the system's own name
        fmt: "text" or "json"

    Returns:
        The file contents, newline-terminated.
    """
    name = name if name is not None else sys.name
    if fmt == "json":
        record = {"name": name, "d": sys.d, "codes": [list(code) for code in sys.codes]}
        return json.dumps(record) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown code file format {fmt!r}; expected one of {SUPPORTED_FORMATS}")
    lines = []
    if name:
        lines.append(f"name = {name}")
    lines.append(f"d = {sys.d}")
    lines.extend("code = " + ", ".join(str(c) for c in code) for code in sys.codes)
    return "\n".join(lines) + "\n"


def load_code_file(path: Union[str, Path]) -> CodeSystem:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    sys = parse_code_file(path.read_text(encoding="utf-8"))
    if sys.name is None:
        sys = sys.renamed(path.stem)
    logger.debug(f"loaded {path}", extra={'code_name': sys.name, 'users': sys.T})
    return sys


def write_code_file(path: Union[str, Path], sys: CodeSystem, fmt: str = "text") -> Path:
    """Write through a temporary file so an interrupted run leaves no partial output."""
    path = Path(path)
    text = serialize_code_file(sys, fmt=fmt)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    logger.info(f"wrote {path}", extra={'code_name': sys.name})
    return path
