from __future__ import annotations

from pathlib import Path

import pytest

from distrel import data_path, enumerate_concepts, satisfaction_context
from distrel.formats import parse_context, parse_network

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def table1():
    return parse_network(data_path("table1.json").read_text())


@pytest.fixture(scope="session")
def table3():
    return parse_network(data_path("table3.json").read_text())


@pytest.fixture(scope="session")
def ref_table2():
    return parse_context(data_path("table2.cxt").read_text())


@pytest.fixture(scope="session")
def sat_ctx(table1):
    return satisfaction_context(table1, "full")


@pytest.fixture(scope="session")
def lattice(sat_ctx):
    return enumerate_concepts(sat_ctx)


def tup(s: str):
    """``"ffttf"`` -> the full Boolean tuple over a1..a5."""
    from distrel import Tuple
    return Tuple(("a1", "a2", "a3", "a4", "a5"), tuple(s))


# -- acceptance summary -------------------------------------------------------

_results: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    n, title = crit
    entry = _results.setdefault(n, {"title": title, "ok": True, "failed": []})
    if not report.passed:
        entry["ok"] = False
        name = report.nodeid.split("::")[-1]
        if hasattr(report, "wasxfail"):
            name += f" [known: {report.wasxfail}]"
        entry["failed"].append(name)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_results):
        r = _results[n]
        status = "PASS" if r["ok"] else "FAIL"
        line = f"criterion {n}: {status}  {r['title']}"
        if r["failed"]:
            line += "  (failed: " + ", ".join(r["failed"]) + ")"
        tr.write_line(line)
