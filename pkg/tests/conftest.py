from __future__ import annotations

import pytest

from cubefree_gl2.finite_field import field_of_order

_acceptance: dict[str, tuple[str, list[str]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = report.user_properties and dict(report.user_properties).get("acceptance")
    if not label:
        return
    _, outcomes = _acceptance.setdefault(label, (label, []))
    outcomes.append(report.outcome)


@pytest.fixture(autouse=True)
def _tag_acceptance(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker is not None:
        request.node.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance):
        _, outcomes = _acceptance[label]
        ok = all(o == "passed" for o in outcomes)
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  ({outcomes.count('passed')}/{len(outcomes)} cases)")


@pytest.fixture(scope="session")
def F3():
    return field_of_order(3)


@pytest.fixture(scope="session")
def F4():
    return field_of_order(4)


@pytest.fixture(scope="session")
def F5():
    return field_of_order(5)


@pytest.fixture(scope="session")
def F7():
    return field_of_order(7)


@pytest.fixture(scope="session")
def F9():
    return field_of_order(9)
