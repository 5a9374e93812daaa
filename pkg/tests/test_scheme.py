import itertools
import json
import random

import pytest

from hass import ases, scheme
from hass.ases import AccessStructure
from hass.errors import InconsistentBundle, InvalidArgument, InvalidStructure, NotAuthorized
from hass.numth import gen_group_params


def toy_bundle(toy_group):
    tok = ases.instance_from_identifiers(toy_group, {1, 2}, (7, 23, 11), mu=3)
    shr = ases.instance_from_identifiers(toy_group, {1, 2}, (11, 19, 7), mu=3)
    shares = scheme.make_shares(shr, [4, 18])
    run = scheme.Run(0, frozenset({1, 2}), tok, shr, {1: 4, 2: 18}, shares)
    return scheme.ShareBundle(toy_group, toy_group, AccessStructure.of(3, [[1, 2]]), (run,))


def test_toy_shares_and_recon(toy_group):
    bundle = toy_bundle(toy_group)
    assert dict(bundle.runs[0].shares) == {1: 21, 2: 30, 3: 17}
    public = bundle.public()
    assert scheme.recon(public, [1, 2]) == 10
    assert scheme.recon(public, [1, 2, 3]) == 10
    assert scheme.recon_strict(public, [1, 2]) == 10
    for c in ([1], [2], [3], [1, 3], [2, 3]):
        with pytest.raises(NotAuthorized):
            scheme.recon(public, c)
    with pytest.raises(NotAuthorized):
        scheme.recon_strict(public, [1, 2, 3])


def test_minimal_sets():
    assert scheme.minimal_sets([[1, 2], [1, 2, 3], [3, 4], [1, 2]]) == [frozenset({1, 2}), frozenset({3, 4})]


def test_validate_structure():
    good = scheme.validate_structure(AccessStructure.of(4, [[1, 2], [3, 4]]))
    assert good["pass"] and good["min_size"] == 2
    nested = scheme.validate_structure(AccessStructure.of(4, [[1, 2], [1, 2, 3]]))
    assert not nested["pass"] and nested["nested_pairs"]
    small = scheme.validate_structure(AccessStructure.of(6, [[1, 2], [3, 4, 5]]))
    assert not small["pass"] and small["too_small"] == [[1, 2]]


@pytest.fixture(scope="module")
def groups():
    return gen_group_params(4, 12, seed="t"), gen_group_params(4, 12, seed="s")


def test_share_and_recon_exhaustive(groups):
    tok, shr = groups
    access = AccessStructure.of(4, [[1, 2], [3, 4], [1, 3, 4]][:2])
    k = 1234 % shr.q or 1
    bundle = scheme.share(tok, shr, access, k, seed=3)
    public = bundle.public()
    for size in range(1, 5):
        for c in itertools.combinations(range(1, 5), size):
            if access.is_authorized(c):
                assert scheme.recon(public, c) == k
            else:
                with pytest.raises(NotAuthorized):
                    scheme.recon(public, c)
    assert bundle.elements_per_party() == {z: 4 for z in range(1, 5)}


def test_split_secret():
    b = scheme.split_secret(10, 3, 31, random.Random(0))
    assert len(b) == 3 and b[0] * b[1] * b[2] % 31 == 10


@pytest.mark.parametrize("k", [0, -1, "q"])
def test_share_rejects_bad_secret(groups, k):
    tok, shr = groups
    k = shr.q if k == "q" else k
    with pytest.raises(InvalidArgument):
        scheme.share(tok, shr, AccessStructure.of(3, [[1, 2]]), k, seed=0)


def test_share_rejects_invalid_structure(groups):
    tok, shr = groups
    with pytest.raises(InvalidStructure):
        scheme.share(tok, shr, AccessStructure.of(3, [[1, 2], [1, 2, 3]]), 5, seed=0)


def test_bundle_json_roundtrip(groups):
    tok, shr = groups
    bundle = scheme.share(tok, shr, AccessStructure.of(3, [[1, 2], [2, 3]]), 7, seed="r")
    text = json.dumps(bundle.to_json(), sort_keys=True)
    back = scheme.PublicBundle.from_json(json.loads(text))
    assert back == bundle.public()
    assert json.dumps(back.to_json(), sort_keys=True) == text


def test_restrict_rejects_unknown_party(groups):
    tok, shr = groups
    public = scheme.share(tok, shr, AccessStructure.of(3, [[1, 2]]), 7, seed=0).public()
    with pytest.raises(InconsistentBundle):
        public.restrict([1, 9])


def test_k_independence(groups):
    tok, shr = groups
    access = AccessStructure.of(4, [[1, 2], [2, 3, 4]])
    a = scheme.share(tok, shr, access, 5, seed=42)
    b = scheme.share(tok, shr, access, 99, seed=42)
    for ra, rb in zip(a.runs, b.runs):
        assert ra.tokens == rb.tokens
        for z in ra.shares:
            if z not in ra.omega:
                assert ra.shares[z] == rb.shares[z]


def test_random_access_structure_valid():
    rng = random.Random(0)
    for ell in range(2, 7):
        for _ in range(20):
            assert scheme.validate_structure(scheme.random_access_structure(ell, rng))["pass"]
