"""JSON reports produced by the command-line tool."""

from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = 1


def plain(x):
    """Convert library values to JSON-ready data. Rationals become strings."""
    if isinstance(x, enum.Enum):
        return plain(x.value)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if dataclasses.is_dataclass(x):
        return {f.name: plain(getattr(x, f.name)) for f in dataclasses.fields(x)}
    return str(x)


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    seed: int | None = None
    timing: float | None = None
    schema: int = SCHEMA

    def __post_init__(self):
        self.inputs = plain(self.inputs)
        self.verdicts = plain(self.verdicts)
        self.certificates = plain(self.certificates)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)

    def text(self) -> str:
        lines = [f"{self.command}"]
        for k, v in self.verdicts.items():
            lines.append(f"  {k}: {_show(v)}")
        for k, v in self.certificates.items():
            if _is_matrix(v):
                lines.append(f"  {k}:")
                lines.extend("    [" + ", ".join(row) + "]" for row in v)
            else:
                lines.append(f"  {k}: {_show(v)}")
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        if self.timing is not None:
            lines.append(f"  time: {self.timing:.3f}s")
        return "\n".join(lines)


def _is_matrix(v) -> bool:
    return (isinstance(v, list) and v and all(isinstance(r, list) for r in v)
            and all(isinstance(e, str) for r in v for e in r))


def _show(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_show(e) for e in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_show(e)}" for k, e in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)
