import pytest

from wsnsim import default_backend, use_backend, warmup


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    # Pay the JIT cost once, up front, so no individual test times it.
    warmup()
    yield


@pytest.fixture(autouse=True)
def _restore_backend():
    yield
    use_backend(default_backend())
