import pytest

from factorfree import _backend


@pytest.fixture(params=sorted(_backend.available_backends()))
def backend(request, monkeypatch):
    """Run a test once per importable kernel backend."""
    monkeypatch.setattr(_backend, "kernels", _backend.available_backends()[request.param])
    monkeypatch.setattr(_backend, "BACKEND", request.param)
    return request.param
