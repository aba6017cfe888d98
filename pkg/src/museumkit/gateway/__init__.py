from .app import ApiSession, SceneRejectedError, create_app

__all__ = ["ApiSession", "SceneRejectedError", "create_app"]
