import warnings

import pytest

from lambda_eit import CANONICAL, ModelParams, RotatingWaveWarning


@pytest.fixture
def canonical():
    return ModelParams(**CANONICAL)


@pytest.fixture
def quiet_rwa():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RotatingWaveWarning)
        yield


def rel(a, b):
    """|a - b| / |b| (or |a - b| when b == 0)."""
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


_CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def record_criterion(request):
    """Store a one-line PASS/FAIL verdict; printed in the terminal summary."""
    results = request.config.stash.setdefault(_CRITERIA, {})

    def record(number, ok, detail):
        results[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(results[number])
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_CRITERIA, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
