import pytest

from qturan import kernels


@pytest.fixture(params=["python", "compiled"])
def backend(request):
    """Run a test under both kernel backends."""
    name = request.param
    if name == "compiled" and not kernels.have_compiled():
        pytest.skip("compiled kernels not built")
    kernels.set_backend(name)
    yield name
    kernels.set_backend("auto")
