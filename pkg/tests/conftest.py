import os

import pytest
from hypothesis import settings

from kummer_tower.genus_engine import RhoImage

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# every RhoImage built during the run, checked for the product formula at teardown
RHO_IMAGES = []


@pytest.fixture(autouse=True, scope="session")
def record_rho_images():
    orig = RhoImage.__init__

    def init(self, *args, **kwargs):
        orig(self, *args, **kwargs)
        RHO_IMAGES.append(self)

    RhoImage.__init__ = init
    yield RHO_IMAGES
    RhoImage.__init__ = orig
    bad = [r for r in RHO_IMAGES if not r.row_sums_vanish()]
    assert not bad, "row sums nonzero in %d images" % len(bad)


# criterion number -> (passed, title, detail), filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %d: %s  %s (%s)" % (n, "PASS" if ok else "FAIL", title, detail))
