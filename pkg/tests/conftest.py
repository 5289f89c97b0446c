import pytest

from cyclobasis import _kernels


@pytest.fixture(params=["numpy", "numba"] if _kernels.HAVE_NUMBA else ["numpy"])
def backend(request):
    saved = _kernels.get_backend()
    _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(saved)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
