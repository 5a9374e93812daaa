"""Access structure encoding: identifiers, tokens and token verification.

For a minimal authorized set Omega the dealer draws an access-structure
vector v in (Z_m)^h with <v, v> = 0 mod m, splits it as v = sum_{i in Omega}
v_i, and gives party i the identifier x_i = <v, v_i> mod m.  Every party e
outside Omega gets a distinct covering party i in Omega and a vector
v_e = v_j - v_i for a fresh v_j, so x_e = <v, v_e>.  Each party then holds the
token mu^{x_z} mod q, and since sum_{Omega} x_i = <v, v> = 0 mod m = q - 1 the
tokens of Omega multiply to 1.

The sampled identifiers are kept only if, for every nonempty coalition B
other than Omega, sum_B x_i != 0 mod m and mu^{sum_B x_i} != 1 mod q.  That
makes soundness an exhaustively checked property of each emitted instance
instead of an assumption about the sampler.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
import random
from collections import Counter
from typing import Iterable, Mapping, Sequence

from .budget import budgets
from .covvec import CoveringVector, inner
from .errors import BudgetExceeded, InvalidArgument, SearchExhausted
from .numth import GroupParams, mod_pow, multiplicative_order, parse_int

Party = int


@dataclasses.dataclass(frozen=True)
class AccessStructure:
    """Parties are numbered 1..ell; ``minimal_sets`` is the basis Gamma_0."""

    ell: int
    minimal_sets: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, ell: int, sets: Iterable[Iterable[int]]) -> "AccessStructure":
        fs = tuple(frozenset(s) for s in sets)
        for s in fs:
            if not s or not s <= set(range(1, ell + 1)):
                raise InvalidArgument(f"minimal set {sorted(s)} is not a nonempty subset of 1..{ell}")
        return cls(ell, fs)

    def is_authorized(self, coalition: Iterable[int]) -> bool:
        c = set(coalition)
        return any(s <= c for s in self.minimal_sets)

    def is_antichain(self) -> bool:
        return not any(a < b for a in self.minimal_sets for b in self.minimal_sets)

    def to_json(self) -> dict:
        return {"parties": self.ell, "minimal_sets": [sorted(s) for s in self.minimal_sets]}

    @classmethod
    def from_json(cls, obj: dict) -> "AccessStructure":
        return cls.of(int(obj["parties"]), obj["minimal_sets"])


@dataclasses.dataclass(frozen=True)
class AsesInstance:
    group: GroupParams
    mu: int
    omega: frozenset[int]
    identifiers: Mapping[Party, int]  # dealer-only
    tokens: Mapping[Party, int]
    covering_map: Mapping[Party, Party]
    vector: CoveringVector | None = None
    party_vectors: Mapping[Party, CoveringVector] | None = None
    resamples: Mapping[str, int] = dataclasses.field(default_factory=dict)

    @property
    def ell(self) -> int:
        return len(self.tokens)

    @property
    def parties(self) -> list[Party]:
        return sorted(self.tokens)

    def public_json(self, run_id=0) -> dict:
        """tokens.json: what parties are allowed to see."""
        return {
            "q": format(self.group.q, "x"),
            "run_id": run_id,
            "parties": [{"id": z, "token": format(self.tokens[z], "x")} for z in self.parties],
        }

    def audit_json(self, run_id=0) -> dict:
        """Dealer-side secrets; never hand this to parties."""
        return {
            "secret": True,
            "run_id": run_id,
            "q": format(self.group.q, "x"),
            "mu": format(self.mu, "x"),
            "omega": sorted(self.omega),
            "identifiers": {str(z): format(x, "x") for z, x in sorted(self.identifiers.items())},
            "covering_map": {str(e): i for e, i in sorted(self.covering_map.items())},
            "certificate": {
                "coalitions_checked": (1 << self.ell) - 1,
                "zero_sum_coalitions": [sorted(self.omega)],
            },
            "resamples": dict(self.resamples),
        }


def load_tokens(obj: dict) -> tuple[int, dict[Party, int]]:
    return parse_int(obj["q"]), {int(p["id"]): parse_int(p["token"]) for p in obj["parties"]}


# -- sampling -------------------------------------------------------------

def _greedy_squares(value: int) -> list[int]:
    """Integers whose squares sum to ``value`` (largest square first)."""
    out = []
    while value:
        s = math.isqrt(value)
        out.append(s)
        value -= s * s
    return out


def _isotropic_vector(m: int, base_dim: int, rng: random.Random) -> CoveringVector:
    """Random v in (Z_m)^h with <v, v> = 0 mod m."""
    head = [rng.randrange(m) for _ in range(base_dim)]
    tail = _greedy_squares((-sum(a * a for a in head)) % m)
    # pad so h does not leak how many squares the tail needed
    tail += [0] * (2 * m.bit_length() + 8 - len(tail))
    return CoveringVector.dense(head + tail, m, source="access")


def _random_vector(h: int, m: int, rng: random.Random) -> CoveringVector:
    return CoveringVector.dense([rng.randrange(m) for _ in range(h)], m)


def subset_sums(values: Sequence[int], m: int) -> list[int]:
    """sums[mask] = sum of values[i] for bits i of mask, reduced mod m."""
    sums = [0]
    for x in values:
        sums += [(s + x) % m for s in sums]
    return sums


def _certificate_ok(xs: Sequence[int], omega_mask: int, m: int) -> tuple[bool, list[int]]:
    sums = subset_sums(xs, m)
    for mask in range(1, len(sums)):
        if (sums[mask] == 0) != (mask == omega_mask):
            return False, sums
    return True, sums


def _check_inputs(group: GroupParams, ell: int, omega: frozenset[int]) -> None:
    if ell < 2:
        raise InvalidArgument("ell must be >= 2")
    if not omega or not omega <= set(range(1, ell + 1)):
        raise InvalidArgument(f"omega {sorted(omega)} must be a nonempty subset of 1..{ell}")
    if len(omega) < 2:
        raise InvalidArgument("invalid omega: a single party would need identifier 0")
    if 2 * len(omega) < ell:
        raise InvalidArgument(f"invalid omega: 2*|omega| = {2 * len(omega)} < ell = {ell}")
    if group.eta < ell:
        raise InvalidArgument(f"group too small: eta = {group.eta} < ell = {ell}")
    if ell > budgets().coalition:
        raise BudgetExceeded(f"ell = {ell} exceeds coalition budget {budgets().coalition}")


def encode(group: GroupParams, ell: int, omega: Iterable[int], seed,
           exclude: Iterable[int] = (), max_retries: int | None = None) -> AsesInstance:
    """Encode one minimal authorized set.

    ``exclude`` lists identifiers already used elsewhere (e.g. earlier runs
    of the same bundle) that must not be reused.
    """
    omega = frozenset(omega)
    _check_inputs(group, ell, omega)
    max_retries = budgets().retries if max_retries is None else max_retries
    rng = random.Random(f"ases:{seed}")
    m, q = group.m, group.q
    parties = list(range(1, ell + 1))
    inside = sorted(omega)
    outside = [z for z in parties if z not in omega]
    omega_mask = sum(1 << (z - 1) for z in inside)
    excluded = set(exclude)
    stats: Counter[str] = Counter()

    for _ in range(max_retries):
        v = _isotropic_vector(m, ell + 2, rng)
        h = v.h
        vecs: dict[Party, CoveringVector] = {}
        for z in inside[:-1]:
            vecs[z] = _random_vector(h, m, rng)
        last = v
        for z in inside[:-1]:
            last = last - vecs[z]
        vecs[inside[-1]] = last
        cover_of = dict(zip(outside, rng.sample(inside, len(outside))))
        for e in outside:
            vj = _random_vector(h, m, rng)
            vecs[e] = vj - vecs[cover_of[e]]
        x = {z: inner(v, vecs[z]) for z in parties}
        xs = [x[z] for z in parties]

        if any(xi == 0 for xi in xs):
            stats["zero_identifier"] += 1
            continue
        if len(set(xs)) < ell or excluded.intersection(xs):
            stats["collision"] += 1
            continue
        ok, sums = _certificate_ok(xs, omega_mask, m)
        if not ok:
            stats["certificate"] += 1
            continue
        unauthorized = {s for mask, s in enumerate(sums) if mask and mask != omega_mask}
        for _ in range(max_retries):
            mu = rng.randrange(2, q)
            # mu^s = 1 exactly when ord(mu) divides s
            order = multiplicative_order(mu, q, group.m_factors)
            if all(s % order for s in unauthorized):
                break
            stats["mu"] += 1
        else:
            continue
        return AsesInstance(
            group=group, mu=mu, omega=omega,
            identifiers=x,
            tokens={z: mod_pow(mu, x[z], q) for z in parties},
            covering_map=cover_of, vector=v, party_vectors=vecs,
            resamples=dict(stats),
        )
    raise SearchExhausted(f"no valid identifiers after {max_retries} attempts: {dict(stats)}")


def instance_from_identifiers(group: GroupParams, omega: Iterable[int],
                              identifiers: Sequence[int], mu: int) -> AsesInstance:
    """Build an instance from given identifiers (parties 1..len), validating it."""
    omega = frozenset(omega)
    ell = len(identifiers)
    _check_inputs(group, ell, omega)
    m, q = group.m, group.q
    xs = [x % m for x in identifiers]
    if any(x == 0 for x in xs) or len(set(xs)) != ell:
        raise InvalidArgument("identifiers must be nonzero and pairwise distinct mod m")
    omega_mask = sum(1 << (z - 1) for z in omega)
    ok, sums = _certificate_ok(xs, omega_mask, m)
    if not ok:
        raise InvalidArgument("identifiers fail the soundness certificate")
    if not 1 < mu < q:
        raise InvalidArgument("mu must lie in Z_q^* minus {1}")
    if any(pow(mu, s, q) == 1 for mask, s in enumerate(sums) if mask and mask != omega_mask):
        raise InvalidArgument("mu has an order dividing some unauthorized sum")
    parties = range(1, ell + 1)
    return AsesInstance(
        group=group, mu=mu, omega=omega,
        identifiers=dict(zip(parties, xs)),
        tokens={z: mod_pow(mu, xs[z - 1], q) for z in parties},
        covering_map={},
    )


# -- verification ---------------------------------------------------------

def _product(values: Iterable[int], q: int) -> int:
    out = 1
    for v in values:
        out = out * v % q
    return out


def hsver_strict(tokens: Iterable[int], q: int) -> bool:
    """True iff the product of exactly these tokens is 1 mod q."""
    tokens = list(tokens)
    if not tokens:
        raise InvalidArgument("empty token set")
    return _product(tokens, q) == 1


def hsver_monotone(tokens: Mapping[Party, int] | Sequence[int], q: int,
                   max_size: int | None = None) -> tuple[bool, tuple | None]:
    """Search for the smallest sub-coalition whose tokens multiply to 1.

    ``tokens`` is either a party->token mapping (witness = party ids) or a
    sequence (witness = positions).  Ties at equal size go to the
    lexicographically first subset.
    """
    items = sorted(tokens.items()) if isinstance(tokens, Mapping) else list(enumerate(tokens))
    limit = budgets().coalition if max_size is None else max_size
    if len(items) > limit:
        raise BudgetExceeded(f"coalition of {len(items)} exceeds budget {limit}")
    for size in range(1, len(items) + 1):
        for combo in itertools.combinations(items, size):
            if _product((t for _, t in combo), q) == 1:
                return True, tuple(k for k, _ in combo)
    return False, None


def collision_heuristic(r: int) -> float:
    """Reference identifier-collision probability 1 / (2^r - 1)^2."""
    return 1.0 / (2**r - 1) ** 2
