import sys
from pathlib import Path

import pytest

from linkcert.harness import hopf_embedding, random_embedding

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def hopf():
    return hopf_embedding()


@pytest.fixture(scope="session")
def emb10():
    return random_embedding(10, 3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
