from .config import Container, LevelConfig, Pose, ConfigError, validate_level_configs
from .session import (
    GameSession,
    AccuracyResult,
    GameError,
    IllegalTransition,
    GateClosedError,
    NotFoundError,
    new_session,
    enter_game,
    return_to_roaming,
    grab,
    release,
    assign_container,
    submit_answer,
    teleport,
)

__all__ = [
    "Container",
    "LevelConfig",
    "Pose",
    "ConfigError",
    "validate_level_configs",
    "GameSession",
    "AccuracyResult",
    "GameError",
    "IllegalTransition",
    "GateClosedError",
    "NotFoundError",
    "new_session",
    "enter_game",
    "return_to_roaming",
    "grab",
    "release",
    "assign_container",
    "submit_answer",
    "teleport",
]
