import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cobschub.fgl import build_universal_fgl


@lru_cache(maxsize=None)
def _fgl(cap):
    return build_universal_fgl(cap)


@pytest.fixture(scope="session")
def fgl_factory():
    """Shared builder so the law is constructed once per cap per session."""
    return _fgl
