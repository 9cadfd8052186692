"""Public UI API for probprem."""

from .app import TerminalUI

__all__ = ["TerminalUI"]
