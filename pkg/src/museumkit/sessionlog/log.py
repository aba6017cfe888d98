"""Append-only session logs with a JSON-lines disk format.

A log file carries one header line (session id and the scene version the
events were recorded against) followed by one event object per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO, Union

from .events import InteractionEvent


class OrderingError(ValueError):
    """An event timestamp went backwards."""


@dataclass
class SessionLog:
    session_id: str
    scene_version: str
    events: list[InteractionEvent] = field(default_factory=list)

    @property
    def last_t(self) -> int:
        return self.events[-1].t if self.events else 0

    def header_dict(self) -> dict:
        return {"session_id": self.session_id, "scene_version": self.scene_version}


def record(log: SessionLog, event: InteractionEvent) -> None:
    """Append ``event``; timestamps must be non-decreasing."""
    if log.events and event.t < log.events[-1].t:
        raise OrderingError(
            f"event at t={event.t} arrived after t={log.events[-1].t}"
        )
    log.events.append(event)


def write_jsonl(log: SessionLog, target: Union[str, Path, TextIO]) -> None:
    if hasattr(target, "write"):
        _write_lines(log, target)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            _write_lines(log, fh)


def _write_lines(log: SessionLog, fh: TextIO) -> None:
    fh.write(json.dumps(log.header_dict(), sort_keys=True) + "\n")
    for ev in log.events:
        fh.write(json.dumps(ev.to_dict(), sort_keys=True) + "\n")


def read_jsonl(source: Union[str, Path, TextIO, Iterable[str]]) -> SessionLog:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh if ln.strip()]
    else:
        lines = [ln for ln in source if ln.strip()]
    if not lines:
        raise ValueError("empty session log")
    header = json.loads(lines[0])
    if "session_id" not in header or "scene_version" not in header:
        raise ValueError("first line must be a header with session_id and scene_version")
    log = SessionLog(session_id=str(header["session_id"]),
                     scene_version=str(header["scene_version"]))
    for ln in lines[1:]:
        record(log, InteractionEvent.from_dict(json.loads(ln)))
    return log
