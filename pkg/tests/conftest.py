import pytest
from hypothesis import settings

from stabmod.dvr import ring_make

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

RING_CONFIGS = [(2, 1, 6), (3, 1, 4), (3, 2, 3), (2, 2, 4), (2, 3, 3)]


@pytest.fixture(params=RING_CONFIGS, ids=lambda c: "p%d-e%d-m%d" % c)
def ring(request):
    return ring_make(*request.param)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, secs in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f} s)")
