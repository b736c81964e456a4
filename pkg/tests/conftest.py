import pytest

from phaselock import _integrate


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # Pay the JIT compilation cost once, before any timed assertion runs.
    _integrate.warmup()
