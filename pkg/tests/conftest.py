import pytest

from cposlm import REFERENCE_POINT, ProbeDetuning


@pytest.fixture
def reference():
    return REFERENCE_POINT


@pytest.fixture
def on_resonance():
    return ProbeDetuning(0.0)
