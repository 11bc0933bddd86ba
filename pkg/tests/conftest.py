import pytest

from profmackey.finite_group import builtin


@pytest.fixture(scope="session")
def s3():
    return builtin("S3")


@pytest.fixture(scope="session")
def c4():
    return builtin("C4")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
