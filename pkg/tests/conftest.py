import pytest

from ktsolve import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the JIT kernels once so individual tests time only their work."""
    kernels.warmup()
