"""Centralized numerical defaults for probprem.

Environment variables can override defaults.

Example:
    from probprem.config import settings
    print(settings.tol)
"""

from dataclasses import dataclass, field
import os


@dataclass
class Settings:
    """Solver tolerances and grid sizes loaded from environment variables."""

    tol: float = field(
        default_factory=lambda: float(os.getenv("PROBPREM_TOL", "1e-13"))
    )
    max_iter: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_MAX_ITER", "200"))
    )
    # Points of the bracket scan preceding every bisection
    scan_points: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_SCAN_POINTS", "64"))
    )
    classify_levels: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_CLASSIFY_LEVELS", "10"))
    )
    coeff_threshold: float = field(
        default_factory=lambda: float(os.getenv("PROBPREM_COEFF_THRESHOLD", "1e-6"))
    )
    compare_grid: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_COMPARE_GRID", "257"))
    )
    premium_samples: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_PREMIUM_SAMPLES", "500"))
    )
    counterexample_samples: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_COUNTEREXAMPLE_SAMPLES", "64"))
    )
    triangle_grid: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_TRIANGLE_GRID", "101"))
    )
    seed: int = field(
        default_factory=lambda: int(os.getenv("PROBPREM_SEED", "20240917"))
    )
    verbose: bool = False

    def override(self, *, tol: float | None = None, grid: int | None = None) -> None:
        """Apply per-invocation overrides coming from the command line.

        ``grid`` replaces every grid size (comparison grid and triangle grid);
        ``None`` leaves a value untouched.

        Example:
            >>> from probprem.config import settings
            >>> settings.override(tol=1e-12)
        """
        if tol is not None:
            if tol <= 0:
                raise ValueError("tol must be positive")
            self.tol = tol
        if grid is not None:
            if grid < 3:
                raise ValueError("grid must have at least 3 points")
            self.compare_grid = grid
            self.triangle_grid = grid
