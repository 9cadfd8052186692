import os
import sys
from pathlib import Path
from typing import Iterator

import logfire
import pytest

# Ensure the project root is on sys.path for imports
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from probprem.config import settings  # noqa: E402

logfire.configure(send_to_logfire=False, console=False)


@pytest.fixture(autouse=True)
def _restore_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Run every test on default settings and undo in-place changes."""
    for name in list(os.environ):
        if name.startswith("PROBPREM_"):
            monkeypatch.delenv(name)
    saved = dict(vars(settings))
    yield
    settings.__dict__.update(saved)
