import pytest

from isingmaps.solver import compute_up_to


@pytest.fixture(scope="session")
def state36():
    return compute_up_to(36, mode="fast")


@pytest.fixture(scope="session")
def checked24():
    return compute_up_to(24, mode="checked")


# one summary line per acceptance criterion --------------------------------------

_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key, title = props["criterion"], props.get("title", "")
    if report.when == "call" or report.failed:
        if hasattr(report, "wasxfail"):
            status = "FAIL (expected failure: " + report.wasxfail + ")"
        else:
            status = "PASS" if report.passed else "FAIL"
        if key not in _criteria or _criteria[key][0] == "PASS":
            _criteria[key] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: (int(k.split(".")[0]), k)):
        status, title = _criteria[key]
        terminalreporter.write_line(f"criterion {key}: {status.split(' (')[0]:<4} {title}"
                                    + (f"  [{status.split(' (', 1)[1][:-1]}]" if " (" in status else ""))
