import json

import pytest
from hypothesis import given, strategies as st

from hass import covvec, oracle, setsys
from hass.covvec import CoveringVector
from hass.errors import DimensionMismatch, InvalidArgument

vec = st.lists(st.integers(-20, 20), min_size=5, max_size=5)


@given(vec, vec)
def test_inner_is_dense_dot(a, b):
    u, v = CoveringVector.dense(a, 6), CoveringVector.dense(b, 6)
    assert covvec.inner(u, v) == sum(x * y for x, y in zip(a, b)) % 6
    assert (u + v).to_dense() == [(x + y) % 6 for x, y in zip(a, b)]
    assert (u - v).to_dense() == [(x - y) % 6 for x, y in zip(a, b)]


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        covvec.inner(CoveringVector.dense([1, 2], 6), CoveringVector.dense([1, 2, 3], 6))
    with pytest.raises(InvalidArgument):
        CoveringVector.sparse(3, 6, [(3, 1)])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_inner_products_are_intersections(systems, n):
    for fam in (systems[n].family, setsys.uniform_subsystem(systems[n])):
        vecs = covvec.family_vectors(fam)
        for i in range(len(fam)):
            for j in range(len(fam)):
                assert covvec.inner(vecs[i], vecs[j]) == len(fam.sets[i] & fam.sets[j]) % 6
        assert oracle.naive_set_intersections(fam).passed


@pytest.mark.parametrize("n", [3, 4, 5])
def test_covering_family_report(systems, n):
    fam = setsys.uniform_subsystem(systems[n])
    rep = covvec.verify_covering_family(covvec.family_vectors(fam), r=2)
    assert rep["pass"] and rep["S_size_ok"]
    assert set(rep["realized_S"]) <= {1, 2, 3, 4, 5}


def test_json_roundtrip(systems):
    vecs = covvec.family_vectors(setsys.uniform_subsystem(systems[3]))
    obj = json.loads(json.dumps(covvec.to_json(vecs)))
    assert covvec.from_json(obj) == vecs
