import pytest

from dpsort import StringSet

EXAMPLE = ["eureka", "eurasia", "excells", "europar"]


@pytest.fixture
def example():
    return StringSet.from_bytes(EXAMPLE)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(test_acceptance.RESULTS.items()):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
