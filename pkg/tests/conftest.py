import pytest
from hypothesis import settings

from heistqft.corpus import corpus_graph, corpus_names

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL = [n for n in corpus_names(include_nonplanar=True) if n != "two_circles"]


@pytest.fixture(params=SMALL)
def small_name(request):
    return request.param


@pytest.fixture
def theta2():
    return corpus_graph("theta", 2)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}")
