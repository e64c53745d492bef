import pytest
from hypothesis import HealthCheck, settings

from quadnets.catalog import find_entry, load_catalog
from quadnets.exact.fields import GF, QQ
from quadnets.quadric import Net

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def catalog_net(label):
    entry = find_entry(label)
    return Net.parse(entry.forms, GF(2) if entry.gf2_only else QQ)


@pytest.fixture
def net_of():
    """Build the catalog net with a given label."""
    return catalog_net


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def q_entries():
    return [e for e in load_catalog() if not e.gf2_only]


# one pass/fail line per acceptance criterion, printed after the run
_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = dict(report.user_properties).get("criterion")
    if n is not None:
        _criteria[n] = _criteria.get(n, True) and report.outcome == "passed"


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _criteria[n] else 'FAIL'}")
