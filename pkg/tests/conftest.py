import pytest

from lora_sic.analytic import default_config


@pytest.fixture(scope="session")
def cfg():
    """The suburban reference scenario (all dataclasses are frozen)."""
    return default_config()
