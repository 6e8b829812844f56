'''
Copyright 2025 HardyCheck developers

Shared pytest setup: repository root on sys.path, the `slow` marker, a quiet log.
'''
import sys
import pathlib

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

from core.log import Log


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: corpus-sized runs (deselect with -m 'not slow')"
    )


@pytest.fixture(autouse=True)
def quiet_log():
    Log.set_verbosity(0)
    Log.set_stream(None)
    yield
    Log.set_verbosity(0)
    Log.set_stream(None)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
