import pytest

from tanny_dowling import _kernels


@pytest.fixture(params=["numba", "numpy"])
def kernel_variant(request):
    """Name of a kernel implementation to exercise directly."""
    if request.param == "numba" and not _kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    return request.param


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
