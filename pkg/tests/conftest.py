import random

import pytest

from leftorder import corpus

ACCEPTANCE = {}


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(scope="session")
def groups():
    return {name: p for name, p, _ in corpus.entries()}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, title, note = ACCEPTANCE[key]
        line = f"criterion {key}: {'PASS' if ok else 'FAIL'}  {title}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)
