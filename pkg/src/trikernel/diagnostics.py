"""Positioned, coded diagnostics shared by the parser, kernel and CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

CODES = (
    "E-PARSE",
    "E-UNBOUND",
    "E-MODALITY",
    "E-2CELL-BOUNDARY",
    "E-CONV",
    "E-UNIVERSE",
    "E-LATTICE-SIZE",
)

# Shipped schema for the line-delimited JSON diagnostic format.
DIAGNOSTIC_SCHEMA = {
    "type": "object",
    "required": ["file", "code", "message", "start", "end", "line", "column"],
    "properties": {
        "file": {"type": "string"},
        "code": {"type": "string", "enum": list(CODES)},
        "message": {"type": "string"},
        "start": {"type": "integer", "minimum": 0},
        "end": {"type": "integer", "minimum": 0},
        "line": {"type": "integer", "minimum": 1},
        "column": {"type": "integer", "minimum": 1},
        "expected": {"type": "string"},
        "actual": {"type": "string"},
    },
    "additionalProperties": False,
}


class LineMap:
    """Byte offset to 1-based (line, column) translation."""

    def __init__(self, text: str):
        self.starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self.starts.append(i + 1)

    def locate(self, offset: int) -> tuple[int, int]:
        lo, hi = 0, len(self.starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - self.starts[lo] + 1


@dataclass
class Diagnostic:
    file: str
    code: str
    message: str
    span: tuple[int, int] = (0, 0)
    line: int = 1
    column: int = 1
    expected: Optional[str] = None
    actual: Optional[str] = None

    def located(self, linemap: LineMap) -> "Diagnostic":
        line, col = linemap.locate(self.span[0])
        self.line, self.column = line, col
        return self

    def render(self) -> str:
        head = f"{self.file}:{self.line}:{self.column}: {self.code}: {self.message}"
        if self.expected is not None or self.actual is not None:
            head += f"\n  expected: {self.expected}\n  actual:   {self.actual}"
        return head

    def to_json(self) -> str:
        obj = {
            "file": self.file,
            "code": self.code,
            "message": self.message,
            "start": self.span[0],
            "end": self.span[1],
            "line": self.line,
            "column": self.column,
        }
        if self.expected is not None:
            obj["expected"] = self.expected
        if self.actual is not None:
            obj["actual"] = self.actual
        return json.dumps(obj, sort_keys=True)


def validate_json_diagnostic(line: str) -> list[str]:
    """Check one JSON diagnostic line against the shipped schema.

    Returns a list of violations; empty means valid.
    """
    problems = []
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        return [f"not JSON: {exc}"]
    if not isinstance(obj, dict):
        return ["not an object"]
    props = DIAGNOSTIC_SCHEMA["properties"]
    for req in DIAGNOSTIC_SCHEMA["required"]:
        if req not in obj:
            problems.append(f"missing field {req}")
    for key, value in obj.items():
        if key not in props:
            problems.append(f"unexpected field {key}")
            continue
        spec = props[key]
        if spec["type"] == "string" and not isinstance(value, str):
            problems.append(f"{key} must be a string")
        if spec["type"] == "integer" and not isinstance(value, int):
            problems.append(f"{key} must be an integer")
        if "enum" in spec and value not in spec["enum"]:
            problems.append(f"{key} not in {spec['enum']}")
        if "minimum" in spec and isinstance(value, int) and value < spec["minimum"]:
            problems.append(f"{key} below minimum")
    return problems


class KernelError(Exception):
    """Internal carrier for a single diagnostic; converted at the API edge."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def fail(
    code: str,
    message: str,
    span: tuple[int, int] = (0, 0),
    file: str = "<input>",
    expected: Optional[str] = None,
    actual: Optional[str] = None,
):
    raise KernelError(
        Diagnostic(
            file=file,
            code=code,
            message=message,
            span=span,
            expected=expected,
            actual=actual,
        )
    )
