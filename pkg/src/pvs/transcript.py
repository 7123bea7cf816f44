"""Message records and the JSON-lines transcript format.

One line per message::

    {"round": 3, "phase": "sharing", "kind": "complaint", "from": 2,
     "to": "broadcast", "payload": {...}}

Field elements inside payloads are decimal strings; voter ids stay integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

BROADCAST = None

# payload keys whose integer values are voter ids rather than field elements
ID_KEYS = frozenset({"dealer", "peer", "accuser", "holder", "voter", "dealers"})


@dataclass(frozen=True, slots=True)
class Message:
    round: int
    phase: str
    kind: str
    sender: int
    to: int | None
    body: dict

    @property
    def is_broadcast(self) -> bool:
        return self.to is None

    def to_json(self) -> dict:
        return {
            "round": self.round,
            "phase": self.phase,
            "kind": self.kind,
            "from": self.sender,
            "to": "broadcast" if self.to is None else self.to,
            "payload": jsonify(self.body),
        }


def jsonify(obj, key: str | None = None):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: jsonify(v, k) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(x, key) for x in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if key in ID_KEYS else str(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


class Transcript:
    """Append-only log of every delivered message."""

    def __init__(self):
        self.messages: list[Message] = []

    def append(self, msg: Message) -> None:
        self.messages.append(msg)

    def __len__(self):
        return len(self.messages)

    def __iter__(self):
        return iter(self.messages)

    def rounds(self) -> list[int]:
        return sorted({m.round for m in self.messages})

    def to_jsonl(self) -> str:
        return "".join(json.dumps(m.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
                       for m in self.messages)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_jsonl(), encoding="utf-8")
