"""Environment setup and global configuration for probprem."""

from __future__ import annotations

from dotenv import load_dotenv
import logfire

from .settings import Settings

settings = Settings()


def setup_environment(verbose: bool = False, use_dotenv: bool = False) -> Settings:
    """Load overrides from the environment and configure logfire.

    Args:
        verbose: Print logfire spans and logs to the console. Off by default
            so that stdout carries only results.
        use_dotenv: Read a ``.env`` file before refreshing settings.

    Returns:
        The process-wide :class:`Settings`, updated in place.
    """
    if use_dotenv:
        load_dotenv()

    logfire.configure(
        send_to_logfire="if-token-present",
        service_name="probprem",
        console=logfire.ConsoleOptions(min_log_level="debug") if verbose else False,
    )

    new_settings = Settings()
    settings.__dict__.update(vars(new_settings))
    settings.verbose = verbose
    return settings


def resolve(value: float | int | None, default: float | int) -> float | int:
    """Return ``value`` unless it is ``None``, else the settings ``default``."""
    return default if value is None else value
