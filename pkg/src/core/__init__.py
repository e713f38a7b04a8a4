"""Core module: settings, logging and the error hierarchy."""

from src.core.config import settings
from src.core.exceptions import QuandleHomologyError
from src.core.logging import logger

__all__ = ["settings", "logger", "QuandleHomologyError"]
