import pytest

from hass import bbrpoly, setsys
from hass.numth import GroupParams, group_from_primes


@pytest.fixture(scope="session")
def m6():
    return bbrpoly.ModulusSpec.of(6)


@pytest.fixture(scope="session")
def systems(m6):
    return {n: setsys.build_set_system(n, m6) for n in range(2, 6)}


@pytest.fixture(scope="session")
def toy_group():
    # q = 1 * 2*3*5 + 1 = 31
    gp = GroupParams(eta=3, base_primes=(2, 3, 5), cofactor=1, q=31,
                     m_factors=((2, 1), (3, 1), (5, 1)))
    gp.check()
    return gp


@pytest.fixture(scope="session")
def small_groups():
    return group_from_primes([3, 5, 7]), group_from_primes([5, 7, 11])


_ACCEPTANCE = pytest.StashKey[dict]()
CRITERIA = range(1, 12)


@pytest.fixture
def record(request):
    """record(number, ok, detail): one summary line per acceptance criterion."""
    store = request.config.stash.setdefault(_ACCEPTANCE, {})

    def _record(number, ok, detail):
        store[number] = (bool(ok), detail)
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    return _record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_ACCEPTANCE, None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in CRITERIA:
        ok, detail = store.get(n, (False, "did not run to completion"))
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}")
