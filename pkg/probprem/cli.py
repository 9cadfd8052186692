"""Command line interface for probprem."""

from __future__ import annotations

import sys

import logfire
from pydantic import ValidationError

from .config import settings, setup_environment
from .exceptions import NoBracket, SolverError
from .ui.app import TerminalUI
from .utils import write_output

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_SOLVER_ERROR = 3


def _one_line(exc: BaseException) -> str:
    if isinstance(exc, ValidationError):
        parts = []
        for err in exc.errors():
            loc = ".".join(str(part) for part in err.get("loc", ())) or exc.title
            parts.append(f"{loc}: {err['msg']}")
        return "; ".join(parts)
    text = str(exc).strip()
    return text.splitlines()[0] if text else type(exc).__name__


def _run_check(only: list[str] | None, ui: TerminalUI) -> int:
    from .acceptance import run_checks

    results = run_checks(only)
    return EXIT_OK if ui.show_checks(results) else EXIT_CHECK_FAILED


def run(argv: list[str] | None = None, ui: TerminalUI | None = None) -> int:
    """Run one subcommand and return its exit code.

    0 on success, 1 when ``check`` finds a failing check, 2 on input errors
    (bad flags, invalid parameters, unreadable files) and 3 when a solver
    fails.

    Example:
        >>> run(["kink", "--weighting", "avar:p0=0.5", "--p0", "0.5"])  # doctest: +SKIP
        0
    """
    from .pipeline import parse_args, run_command

    try:
        args = parse_args(argv)
    except SystemExit as exc:
        # argparse has printed usage and the offending flag already
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR

    ui = ui or TerminalUI()
    try:
        setup_environment(verbose=args.verbose, use_dotenv=True)
        settings.override(tol=args.tol, grid=args.grid)
        if args.command == "check":
            return _run_check(args.only, ui)
        text = run_command(args)
        write_output(text, getattr(args, "out", None))
    except NoBracket as exc:
        ui.display_error(f"no bracket: {_one_line(exc)}")
        return EXIT_SOLVER_ERROR
    except SolverError as exc:
        ui.display_error(f"solver failure: {_one_line(exc)}")
        return EXIT_SOLVER_ERROR
    except (ValueError, OSError) as exc:
        logfire.debug("input error in {command}", command=args.command)
        ui.display_error(_one_line(exc))
        return EXIT_INPUT_ERROR
    return EXIT_OK


def main() -> None:
    """Console script entry point."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
