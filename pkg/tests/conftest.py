"""Pytest configuration and fixtures."""

import os

import pytest
from dotenv import load_dotenv

from canweight.config import get_settings
from canweight.fixtures import COUNTEREXAMPLE, QUADRIC, TOMARI, WATANABE, WATANABE_PARTNER
from canweight.support import parse_polynomial


@pytest.fixture(scope="session", autouse=True)
def load_env():
    """Load environment variables for tests."""
    load_dotenv()


@pytest.fixture
def settings_override():
    """Set CANWEIGHT_* variables for one test and clear the settings cache."""
    original_env = os.environ.copy()

    def apply(**values):
        for key, value in values.items():
            os.environ[f"CANWEIGHT_{key.upper()}"] = str(value)
        get_settings.cache_clear()
        return get_settings()

    yield apply

    # Restore original environment
    os.environ.clear()
    os.environ.update(original_env)
    get_settings.cache_clear()


@pytest.fixture
def quadric():
    return QUADRIC.support()


@pytest.fixture
def counterexample():
    """x0*x1*x2*x3 + x0^3 + x1^2*x2^2 + x1^6 + x2^6 + x3^6."""
    return COUNTEREXAMPLE.support()


@pytest.fixture
def watanabe():
    return WATANABE[0].support()


@pytest.fixture
def watanabe_partner():
    return WATANABE_PARTNER.support()


@pytest.fixture
def tomari3():
    return TOMARI[0].support()


@pytest.fixture
def elliptic_surface():
    """x0^2 + x1^4 + x2^4, log-canonical with the single ray (2,1,1)."""
    return parse_polynomial("x0^2 + x1^4 + x2^4", 3)
