import warnings

import pytest

from kgyukawa.model import TrustRegionWarning


@pytest.fixture(autouse=True)
def _quiet_trust_region():
    # individual tests opt back in with pytest.warns
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TrustRegionWarning)
        yield


@pytest.fixture(scope="session")
def verify_report():
    from kgyukawa.verify import run_verify

    return run_verify()


ACCEPTANCE = {}


@pytest.fixture
def record_criterion(request):
    """Store the outcome of one acceptance criterion for the terminal summary."""

    def record(number, label, passed, detail=""):
        ACCEPTANCE[number] = (label, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        label, passed, detail = ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number:>2} {label}: {detail}")
