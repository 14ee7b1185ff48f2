import sys

import numpy as np
import pytest

from orthosearch import _fallback


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def _compiled():
    try:
        from orthosearch import _kernels
    except ImportError:
        return None
    return _kernels


@pytest.fixture(params=["python", "cython"])
def backend(request):
    if request.param == "python":
        return _fallback
    mod = _compiled()
    if mod is None:
        pytest.skip("compiled kernels not built")
    return mod


def random_state(rng, n=2):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
