import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("mfill", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("mfill")

ACCEPTANCE = {}


@pytest.fixture
def acceptance_record():
    """Record the outcome of one acceptance criterion for the summary lines."""

    def record(cid: int, title: str, ok: bool, detail: str = ""):
        ACCEPTANCE[cid] = (title, ok, detail)
        print(f"criterion {cid} ({title}): {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"criterion {cid:2d} {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
