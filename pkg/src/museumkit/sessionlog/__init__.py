from .events import InteractionEvent, EVENT_KINDS
from .log import SessionLog, OrderingError, record, read_jsonl, write_jsonl
from .replay import ReplayError, ReplayFinding, IncompleteSessionError, replay, clearance_time

__all__ = [
    "InteractionEvent",
    "EVENT_KINDS",
    "ReplayFinding",
    "SessionLog",
    "OrderingError",
    "record",
    "read_jsonl",
    "write_jsonl",
    "ReplayError",
    "IncompleteSessionError",
    "replay",
    "clearance_time",
]
