"""Structured certificate record and its JSON serialization.

The JSON layout is versioned (field ``schema``); dimensions are plain
integers, rational sample points are strings like ``p/q``, and the
verdict is HEDGEHOG_CERTIFIED, FAILED(<stage>) or DEGENERATE_INPUT.
Key order is fixed at construction, so serialization is byte-stable for
identical inputs.
"""

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

CERTIFIED = "HEDGEHOG_CERTIFIED"
DEGENERATE = "DEGENERATE_INPUT"


def failed(stage: str) -> str:
    return f"FAILED({stage})"


@dataclass
class Certificate:
    input: str
    condition1: dict = field(default_factory=dict)
    condition2: dict = field(default_factory=dict)
    condition3: dict = field(default_factory=dict)
    hedgehog: dict = field(default_factory=dict)
    fractal: dict = field(default_factory=dict)
    verdict: str = ""
    t_samples: list = field(default_factory=list)

    def all_passed(self) -> bool:
        return all(section.get("pass") is True
                   for section in (self.condition1, self.condition2,
                                   self.condition3, self.hedgehog, self.fractal))

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "input": self.input,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "condition3": self.condition3,
            "hedgehog": self.hedgehog,
            "fractal": self.fractal,
            "verdict": self.verdict,
            "t_samples": list(self.t_samples),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema {data.get('schema')}")
        return cls(
            input=data["input"],
            condition1=data.get("condition1", {}),
            condition2=data.get("condition2", {}),
            condition3=data.get("condition3", {}),
            hedgehog=data.get("hedgehog", {}),
            fractal=data.get("fractal", {}),
            verdict=data.get("verdict", ""),
            t_samples=data.get("t_samples", []),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def summary_lines(self):
        yield f"input:      {self.input}"
        for name in ("condition1", "condition2", "condition3", "hedgehog", "fractal"):
            section = getattr(self, name)
            if not section:
                yield f"{name + ':':12s}skipped"
                continue
            status = "pass" if section.get("pass") else "FAIL"
            yield f"{name + ':':12s}{status}"
        yield f"verdict:    {self.verdict}"
