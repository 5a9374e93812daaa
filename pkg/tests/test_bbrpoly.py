import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hass import bbrpoly
from hass.errors import BudgetExceeded, InvalidArgument


def test_modulus_spec():
    spec = bbrpoly.ModulusSpec.of(12)
    assert spec.factors == ((2, 2), (3, 1))
    assert spec.prime_powers == (4, 3) and spec.r == 2 and not spec.squarefree
    for bad in (5, 8, 9):
        with pytest.raises(InvalidArgument):
            bbrpoly.ModulusSpec.of(bad)


def test_n5_m6_closed_form(m6):
    poly = bbrpoly.build_polynomial(5, m6)
    assert poly.degree == 2
    # 1 + 3 e1 + 2 e2
    expected = {(): 1, **{(i,): 3 for i in range(5)},
                **{c: 2 for c in itertools.combinations(range(5), 2)}}
    assert poly.multilinear_form == expected


@pytest.mark.parametrize("n, degree", [(5, 2), (10, 3)])
def test_degrees(m6, n, degree):
    poly = bbrpoly.build_polynomial(n, m6)
    assert poly.degree == degree <= poly.degree_budget


@pytest.mark.parametrize("m", [6, 10, 12, 15, 18, 30])
@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_contract_various_moduli(m, n):
    report = bbrpoly.verify_contract(bbrpoly.build_polynomial(n, bbrpoly.ModulusSpec.of(m)))
    assert report.passed, report.to_json()


def test_eval_matches_eval_all(m6):
    poly = bbrpoly.build_polynomial(6, m6)
    table = bbrpoly.eval_all(poly)
    assert isinstance(table, np.ndarray) and len(table) == 64
    for z in range(64):
        value, residues = bbrpoly.eval(poly, bbrpoly.bits(z, 6))
        assert table[z] == value
        assert residues == tuple(value % pp for pp in m6.prime_powers)


@settings(max_examples=60)
@given(st.integers(2, 12), st.data())
def test_symmetric_and_multilinear_agree(n, data):
    poly = bbrpoly.build_polynomial(n, bbrpoly.ModulusSpec.of(6))
    z = tuple(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    value, _ = bbrpoly.eval(poly, z)
    assert value == poly.symmetric_value(z) % 6 == poly.integer_at(z) % 6
    assert (value == 0) == all(z)


def test_digit_test_value():
    t = bbrpoly.DigitTest(p=3, alpha=1, targets=(2,))
    # weight 2 has base-3 digit 2; weight 1 does not
    assert t.value(2) % 3 == 0 and t.value(1) % 3 == 1


def test_eval_rejects_wrong_length(m6):
    poly = bbrpoly.build_polynomial(4, m6)
    with pytest.raises(InvalidArgument):
        bbrpoly.eval(poly, (1, 0, 1))
    with pytest.raises(InvalidArgument):
        bbrpoly.eval(poly, (1, 0, 2, 1))


def test_verify_budget(m6):
    poly = bbrpoly.build_polynomial(6, m6)
    with pytest.raises(BudgetExceeded):
        bbrpoly.verify_contract(poly, max_n=5)


def test_term_budget(m6):
    with pytest.raises(BudgetExceeded):
        bbrpoly.build_polynomial(12, m6, max_terms=100)


def test_json_roundtrip(m6):
    poly = bbrpoly.build_polynomial(7, m6)
    obj = json.loads(json.dumps(poly.to_json()))
    assert obj["m"] == 6 and all(t["indices"] == sorted(t["indices"]) for t in obj["terms"])
    back = bbrpoly.IntersectionPolynomial.from_json(obj)
    assert back.multilinear_form == poly.multilinear_form
    assert back.to_json() == poly.to_json()
