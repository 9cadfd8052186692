"""Table rendering helpers."""

from __future__ import annotations

from typing import Iterable

from rich import box
from rich.console import Console
from rich.table import Table

from ...models import CheckResult

ACCENT = "cyan"


def show_checks(console: Console, results: Iterable[CheckResult]) -> None:
    """Render the acceptance checks with their outcome and timing."""
    table = Table(title="Acceptance Checks", border_style=ACCENT, box=box.SIMPLE_HEAVY)
    table.add_column("Check", style=ACCENT, no_wrap=True)
    table.add_column("Result", no_wrap=True)
    table.add_column("Time", justify="right", no_wrap=True)
    table.add_column("Detail", overflow="fold")
    for result in results:
        status = "[green]pass[/]" if result.passed else "[red]FAIL[/]"
        table.add_row(result.name, status, f"{result.elapsed_seconds:.2f}s", result.detail)
    console.print(table)
