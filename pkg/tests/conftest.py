import io
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from portfolio.basemap import load_basemap  # noqa: E402

HEADER = "id\tfull_title\tabbrev_title\tx\ty\tcluster\n"


def basemap_tsv(rows):
    """rows: iterable of (id, full, abbrev, x, y, cluster)."""
    return HEADER + "".join("\t".join(str(v) for v in r) + "\n" for r in rows)


def make_basemap(rows):
    return load_basemap(io.StringIO(basemap_tsv(rows)))


@pytest.fixture
def tri_map():
    # A at the origin, B and C one unit away on each axis
    return make_basemap([
        (1, "ALPHA JOURNAL", "ALPHA J", 0, 0, 1),
        (2, "BETA LETTERS", "BETA LETT", 1, 0, 1),
        (3, "GAMMA REVIEWS", "", 0, 1, 2),
    ])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")
    config._criteria = []




@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        item.config._criteria.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not config._criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in config._criteria:
        terminalreporter.write_line(f"[{status}] {name}")
