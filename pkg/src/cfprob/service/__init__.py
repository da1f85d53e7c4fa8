from .app import create_app
from .ops import ModelStore, OperationError, UnknownModelError

__all__ = ["create_app", "ModelStore", "OperationError", "UnknownModelError"]
