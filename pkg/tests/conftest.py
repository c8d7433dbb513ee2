import pytest

from offcorners import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compile once so per-test timings measure the algorithms, not numba
    _kernels.warmup()
