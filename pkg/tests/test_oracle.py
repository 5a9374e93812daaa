import pytest

from hass import ases, counting, oracle, scheme
from hass.ases import AccessStructure
from hass.errors import BudgetExceeded
from hass.numth import gen_group_params


@pytest.mark.parametrize("n", range(1, 8))
def test_cover_pair_count(n):
    assert oracle.cover_pair_count(n) == counting.s_of_n_sum(n)


def test_cover_pair_count_budget():
    with pytest.raises(BudgetExceeded):
        oracle.cover_pair_count(13)


def test_exhaustive_detects_broken_instance(toy_group):
    inst = ases.instance_from_identifiers(toy_group, {1, 2}, (7, 23, 11), mu=3)
    assert oracle.exhaustive_coalitions(inst).passed
    # claim the wrong omega: the oracle must notice
    forged = ases.AsesInstance(inst.group, inst.mu, frozenset({2, 3}), inst.identifiers,
                               inst.tokens, {})
    report = oracle.exhaustive_coalitions(forged)
    assert not report.passed and report.details["mismatches"] > 0


def test_exhaustive_detects_wrong_secret():
    tok, shr = gen_group_params(3, 10, seed=1), gen_group_params(3, 10, seed=2)
    bundle = scheme.share(tok, shr, AccessStructure.of(3, [[1, 2]]), 5, seed=0)
    assert oracle.exhaustive_coalitions(bundle, secret=5).passed
    assert not oracle.exhaustive_coalitions(bundle, secret=6).passed


def test_naive_polynomial_zero_set(systems):
    assert oracle.naive_polynomial_zero_set(systems[4].poly).passed


def test_run_grid():
    reports = oracle.run_grid("small", seed=1)
    assert reports and all(r.passed for r in reports)
    assert {r.check for r in reports} == {
        "cover_pair_count", "naive_polynomial_zero_set",
        "naive_set_intersections", "exhaustive_coalitions"}
    with pytest.raises(ValueError):
        oracle.run_grid("huge")
