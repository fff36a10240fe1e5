import contextlib
import time

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Context manager recording one acceptance line; a runtime budget in seconds is enforced."""

    @contextlib.contextmanager
    def run(number: int, title: str, budget: float | None = None):
        start = time.perf_counter()
        info: dict = {}
        try:
            yield info
        except BaseException as exc:
            _CRITERIA[number] = f"criterion {number:2d} FAIL  {title}: {type(exc).__name__}: {exc}".splitlines()[0]
            print(_CRITERIA[number])
            raise
        elapsed = time.perf_counter() - start
        detail = f" ({info['detail']})" if "detail" in info else ""
        if budget is not None and elapsed > budget:
            _CRITERIA[number] = (f"criterion {number:2d} FAIL  {title}: {elapsed:.1f}s exceeds the "
                                 f"{budget:g}s budget{detail}")
            print(_CRITERIA[number])
            pytest.fail(_CRITERIA[number])
        _CRITERIA[number] = f"criterion {number:2d} PASS  {title} [{elapsed:.2f}s]{detail}"
        print(_CRITERIA[number])

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[k])
