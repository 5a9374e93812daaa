import random

import pytest

from hass import setsys
from hass.errors import BudgetExceeded, InvalidArgument
from hass.setsys import SymbolString

S = {2: 6, 3: 147, 4: 6940, 5: 536405}


def test_symbol_string_basics():
    x = SymbolString.parse("0102")
    assert x.n == 4 and x.chi == (1, 1, 1, 0) and x.usw == 3
    with pytest.raises(InvalidArgument):
        SymbolString.parse("04")


def test_cover_and_delta():
    x, y, z = SymbolString.parse("001"), SymbolString.parse("110"), SymbolString.parse("002")
    assert setsys.cover(x, y) and not setsys.cover(x, z)
    assert setsys.delta(x.chi, z.chi) == (1, 0, 0)


def test_classes_partition_strings():
    n = 3
    total = sum(setsys.class_size(c) for c in setsys.classes(n))
    assert total == n**n
    assert len(setsys.classes(n)) == 2**n - 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_index_count_equals_s(systems, n):
    assert systems[n].index_count == S[n]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_indexed_family_conditions(systems, n):
    ss = systems[n]
    assert ss.h % 6 == 0
    assert ss.h <= ss.h_budget()
    report = setsys.verify_intersection_conditions(ss.family)
    assert report["c2"]["pass"] and report["c4"]["pass"]
    assert "nested_pairs" in report["c3"] and "non_nested_pairs" in report["c3"]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_uniform_subsystem(systems, n):
    fam = setsys.uniform_subsystem(systems[n])
    assert len(fam) == 2**n - 1
    report = setsys.verify_intersection_conditions(fam)
    assert report["c2"]["pass"] and report["c3"]["pass"] and report["c4"]["pass"]
    assert len(report["intersection_residues"]) <= 2**2 - 1


def test_uniform_intersections_match_b_counts(systems):
    ss = systems[3]
    fam = setsys.uniform_subsystem(ss)
    reps = {}
    for s in setsys.all_strings(3):
        reps.setdefault(s.chi, s)
    for i, cx in enumerate(setsys.classes(3)):
        for j, cy in enumerate(setsys.classes(3)):
            size = len(fam.sets[i] & fam.sets[j])
            assert size == setsys.b_entry_count(ss, reps[cx], reps[cy])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cell_counts_exhaustive(systems, n):
    report = setsys.verify_cell_counts(systems[n])
    assert report["mode"] == "strings" and report["pass"]
    assert report["diagonal_count"] % 6 == 0


def test_cell_counts_sampled_mode(systems):
    report = setsys.verify_cell_counts(systems[5], exhaustive_strings=3)
    assert report["mode"] != "strings" and report["pass"]


def test_random_cells_reproducible():
    a = setsys.random_cells(5, 10, random.Random(3))
    b = setsys.random_cells(5, 10, random.Random(3))
    assert a == b and len(a) == 10


def test_budget(m6):
    with pytest.raises(BudgetExceeded):
        setsys.build_set_system(7, m6)


def test_report_shape(systems):
    rep = setsys.build_report(systems[3], verify=True)
    assert rep["index_count"] == 147 and rep["pass"]
    assert set(rep["conditions"]) == {"indexed", "uniform", "cell_counts"}
