import os

import pytest

from qel import parse_corpus_lines

DATA = os.path.join(os.path.dirname(__file__), "data")

# Five sentences used for hand-checked statistics and features.
FIVE_LINES = [
    "Austin (song)\tregular\t[[Austin (song)|Austin]] is a song by [[Blake Shelton]].",
    "Austin (song)\tregular\tAustin lyrics were written by Kent.",
    "Blake Shelton\tregular\t[[Blake Shelton]] sang [[Austin (song)|Austin]] live.",
    "Austin, Texas\tregular\t[[Austin, Texas|Austin]] is a city in [[Texas]].",
    "Austin (disambiguation)\tdisambiguation\t[[Austin (song)]] a song by Blake Shelton",
]


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def five_corpus():
    return parse_corpus_lines(FIVE_LINES)



# (criterion name, passed, seconds) for every test marked with @pytest.mark.criterion
_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.failed):
        _CRITERIA.append((marker.args[0], report.passed, report.duration))


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for name, passed, seconds in _CRITERIA:
            terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  ({seconds:.2f}s)")
