"""The interaction-event taxonomy captured from a playing visitor.

Six behavior families: touch/grab/rotate a bronze, click a text or answer
panel, and teleport; plus the two scene transitions, so a log alone can
drive a full deterministic replay.
"""

from __future__ import annotations

from dataclasses import dataclass, field

EVENT_KINDS = (
    "Teleport",         # data: point_id
    "Touch",            # data: item_id
    "Grab",             # data: item_id
    "Rotate",           # data: item_id, rotation
    "Release",          # data: item_id, pose
    "PanelOpen",        # data: exhibit_id
    "SubmitClick",      # data: -
    "EnterGame",        # data: -
    "ReturnToRoaming",  # data: -
)


@dataclass(frozen=True)
class InteractionEvent:
    t: int  # milliseconds since session start
    kind: str
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("event time must be >= 0")
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"t": self.t, "kind": self.kind, **self.data}

    @classmethod
    def from_dict(cls, d: dict) -> "InteractionEvent":
        d = dict(d)
        return cls(t=int(d.pop("t")), kind=str(d.pop("kind")), data=d)


def teleport_event(t: int, point_id: str) -> InteractionEvent:
    return InteractionEvent(t, "Teleport", {"point_id": point_id})


def touch_event(t: int, item_id: str) -> InteractionEvent:
    return InteractionEvent(t, "Touch", {"item_id": item_id})


def grab_event(t: int, item_id: str) -> InteractionEvent:
    return InteractionEvent(t, "Grab", {"item_id": item_id})


def rotate_event(t: int, item_id: str, rotation: list[float]) -> InteractionEvent:
    return InteractionEvent(t, "Rotate", {"item_id": item_id, "rotation": list(rotation)})


def release_event(t: int, item_id: str, pose: dict) -> InteractionEvent:
    return InteractionEvent(t, "Release", {"item_id": item_id, "pose": pose})


def panel_event(t: int, exhibit_id: str) -> InteractionEvent:
    return InteractionEvent(t, "PanelOpen", {"exhibit_id": exhibit_id})


def submit_event(t: int) -> InteractionEvent:
    return InteractionEvent(t, "SubmitClick")


def enter_game_event(t: int) -> InteractionEvent:
    return InteractionEvent(t, "EnterGame")


def return_event(t: int) -> InteractionEvent:
    return InteractionEvent(t, "ReturnToRoaming")
