import contextlib

import pytest

_acceptance_key = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_acceptance_key] = []


@pytest.fixture
def criterion(request):
    """``with criterion("label"):`` records PASS/FAIL for the acceptance summary."""
    lines = request.config.stash[_acceptance_key]

    @contextlib.contextmanager
    def record(label):
        try:
            yield
        except BaseException as exc:
            lines.append(f"FAIL  {label}  ({type(exc).__name__})")
            raise
        lines.append(f"PASS  {label}")

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
