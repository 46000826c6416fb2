from fractions import Fraction

import pytest

from hurwitz_scrambler import load_portrait, load_scrambler

F = Fraction

SCRAMBLERS = ("rabbit", "dendrite", "fixed_cubic", "twisted_cubic", "cubic5")


@pytest.fixture(scope="session")
def scramblers():
    return {name: load_scrambler(name) for name in SCRAMBLERS}


@pytest.fixture(scope="session")
def portraits():
    return {name: load_portrait(name) for name in ("rabbit", "dendrite", "cubic5")}


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the body raises on failure."""
    results = request.config.stash.setdefault(_ACCEPTANCE, [])

    class Recorder:
        def __init__(self):
            self.label = None

        def __call__(self, label: str):
            self.label = label
            return self

    rec = Recorder()
    yield rec
    if rec.label is not None:
        failed = request.node.stash.get(_FAILED, False)
        line = f"[{'FAIL' if failed else 'PASS'}] {rec.label}"
        results.append(line)
        print(line)


_FAILED = pytest.StashKey[bool]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and report.failed:
        item.stash[_FAILED] = True


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
