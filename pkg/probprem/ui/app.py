"""Terminal rendering of diagnostics using Rich."""

from __future__ import annotations

from typing import Sequence

from rich.console import Console

from .components.message_panel import MessagePanel
from .components import tables
from ..models import CheckResult


class TerminalUI:
    """Rich consoles for human-facing output.

    Results go to stdout through :mod:`probprem.utils`; everything rendered
    here is diagnostics, and errors always go to stderr.
    """

    def __init__(self, console: Console | None = None, err_console: Console | None = None) -> None:
        self.console = console or Console(log_path=False)
        self.err_console = err_console or Console(stderr=True, log_path=False)

    def display_info(self, message: str) -> None:
        MessagePanel.info(self.console, message)

    def display_error(self, message: str) -> None:
        MessagePanel.error(self.err_console, message)

    def show_checks(self, results: Sequence[CheckResult]) -> bool:
        """Render the check table; True when every check passed."""
        tables.show_checks(self.console, results)
        failed = [r.name for r in results if not r.passed]
        if failed:
            self.display_error(f"{len(failed)} check(s) failed: {', '.join(failed)}")
        else:
            self.display_info(f"All {len(results)} checks passed.")
        return not failed
