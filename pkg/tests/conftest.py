import pytest

from hopfverify.models import ModelRegistry


@pytest.fixture(scope="session")
def reg3():
    return ModelRegistry(3)


@pytest.fixture(scope="session")
def reg6():
    return ModelRegistry(6)


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Shared list of (number, title, passed, seconds, limit, detail) records."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.stash.get(ACCEPTANCE_KEY, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, ok, secs, limit, detail in sorted(rows):
        line = f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title} ({secs:.1f} s, limit {limit} s)"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
