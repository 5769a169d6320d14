import os
import shutil
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("MIMB_CLI") or shutil.which("mimb")
    if not path:
        guess = Path(__file__).resolve().parents[2] / "build" / "mimb"
        path = str(guess) if guess.exists() else None
    if not path:
        pytest.skip("mimb command-line tool not found")
    return path
