import random

import pytest

from fourpoint.errors import ProtocolAbort
from fourpoint.protocol import MINI, PRODUCTION, TOY, derive_session


@pytest.fixture
def toy():
    return TOY


@pytest.fixture
def mini():
    return MINI


@pytest.fixture
def production():
    return PRODUCTION


def fresh_session(profile, rng):
    """Draw (S, z) until derivation succeeds; aborts are retried by design."""
    while True:
        try:
            return derive_session(rng.randbytes(32), rng.randbytes(32),
                                  profile)
        except ProtocolAbort:
            continue


@pytest.fixture
def session_factory():
    rng = random.Random(0xF0A4)
    return lambda profile: fresh_session(profile, rng)
