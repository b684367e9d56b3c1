import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

EXIT_OK = 0
EXIT_CONDITION_FAILS = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class RunReport:
    """Machine-readable record of one grl invocation."""

    command: str
    argv: List[str] = field(default_factory=list)
    results: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0
    exit_status: int = EXIT_OK

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "argv": list(self.argv),
            "results": self.results,
            "timing": {"elapsed_ms": self.elapsed_ms},
            "exit_status": self.exit_status,
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        return cls(
            command=data["command"],
            argv=list(data.get("argv", [])),
            results=data.get("results", {}),
            elapsed_ms=int(data.get("timing", {}).get("elapsed_ms", 0)),
            exit_status=int(data["exit_status"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))
