import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from trialitycheck.charsum import SumContext  # noqa: E402

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def sum_ctx():
    """SumContext cache shared across the session, keyed by q."""
    cache: dict[int, SumContext] = {}

    def get(q: int) -> SumContext:
        if q not in cache:
            cache[q] = SumContext.build(q)
        return cache[q]

    return get


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append((doc, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {doc}")
