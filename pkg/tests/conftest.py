import pytest

from thz_farfield import LinkGeometry, RadioParams

_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def fig7_radio():
    """Stationary anchor: -10 dBm, S_L 20 dB, NF 10 dB, 296 K."""
    return RadioParams(-10.0, 20.0, 10.0, 296.0)


@pytest.fixture
def backhaul():
    return LinkGeometry.stationary(300e9, 200.0)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(criterion, ok, detail):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
