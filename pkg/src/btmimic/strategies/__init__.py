from .catalog import build_strategy
from . import services  # noqa: F401  (leaf registration side effect)

__all__ = ["build_strategy"]
