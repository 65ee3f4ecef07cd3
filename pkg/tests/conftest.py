from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "residua",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("residua")

ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request: pytest.FixtureRequest) -> list:
    """Lines collected here are repeated in the terminal summary."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines):
        terminalreporter.write_line(line)
