import pytest

_CRITERIA = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_CRITERIA] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(number, ok, detail)."""
    results = request.config.stash[_CRITERIA]

    def record(number, ok, detail):
        line = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        results[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_CRITERIA]
    if results:
        terminalreporter.write_sep("=", "acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
