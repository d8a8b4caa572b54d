import sys
from importlib import resources

import pytest

from qpcohom.document import parse_file


def data_path(name: str) -> str:
    return str(resources.files("qpcohom") / "data" / name)


def load(name: str):
    return parse_file(data_path(name))


@pytest.fixture
def fixture_doc():
    return load


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
