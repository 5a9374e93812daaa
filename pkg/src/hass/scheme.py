"""Access-structure-hiding secret sharing on top of the encoding scheme.

One run per minimal authorized set Omega.  A run uses two independent
encodings of Omega: one over (q, mu) yields the access-structure tokens, one
over (q', gamma) yields exponents y with gamma^{sum_Omega y} = 1.  The secret
k is split multiplicatively as k = prod_{i in Omega} b_i mod q' and

    s_i = b_i * gamma^{y_i}  (i in Omega),      s_j = gamma^{y_j}  (j not in Omega).

Reconstruction finds, per run, the sub-coalition whose tokens multiply to 1
and multiplies exactly those shares; multiplying every share of a strict
superset of Omega would leave stray gamma^{y_e} factors.
"""
from __future__ import annotations

import dataclasses
import math
import random
from typing import Iterable, Mapping, Sequence

from . import ases
from .ases import AccessStructure, AsesInstance, Party
from .budget import budgets
from .errors import (BudgetExceeded, InconsistentBundle, InvalidArgument,
                     InvalidStructure, NotAuthorized)
from .numth import GroupParams, is_prime, parse_int


def minimal_sets(authorized: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    """Drop every listed set that strictly contains another listed set."""
    sets = list(dict.fromkeys(frozenset(s) for s in authorized))
    if not sets:
        raise InvalidArgument("empty list of authorized sets")
    return [s for s in sets if not any(t < s for t in sets)]


def validate_structure(access: AccessStructure, ell: int | None = None) -> dict:
    ell = access.ell if ell is None else ell
    need = max(2, math.ceil(ell / 2))
    too_small = [sorted(s) for s in access.minimal_sets if len(s) < need]
    nested = [[sorted(a), sorted(b)] for a in access.minimal_sets
              for b in access.minimal_sets if a < b]
    return {
        "ell": ell,
        "min_size": need,
        "antichain": not nested,
        "nested_pairs": nested,
        "too_small": too_small,
        "pass": bool(access.minimal_sets) and not nested and not too_small,
    }


@dataclasses.dataclass(frozen=True)
class Run:
    run_id: int
    omega: frozenset[int]
    token_instance: AsesInstance
    share_instance: AsesInstance
    b: Mapping[Party, int]  # dealer-only
    shares: Mapping[Party, int]

    @property
    def tokens(self) -> Mapping[Party, int]:
        return self.token_instance.tokens


@dataclasses.dataclass(frozen=True)
class ShareBundle:
    token_group: GroupParams
    share_group: GroupParams
    access: AccessStructure
    runs: tuple[Run, ...]

    @property
    def q(self) -> int:
        return self.token_group.q

    @property
    def qprime(self) -> int:
        return self.share_group.q

    def elements_per_party(self) -> dict[Party, int]:
        counts = {z: 0 for z in range(1, self.access.ell + 1)}
        for run in self.runs:
            for z in run.tokens:
                counts[z] += 1
            for z in run.shares:
                counts[z] += 1
        return counts

    def public(self) -> "PublicBundle":
        return PublicBundle(
            q=self.q, qprime=self.qprime,
            runs=tuple((r.run_id, dict(r.tokens), dict(r.shares)) for r in self.runs),
        )

    def to_json(self) -> dict:
        return self.public().to_json()

    def audit_json(self) -> dict:
        return {
            "secret": True,
            "access": self.access.to_json(),
            "runs": [{
                "run_id": r.run_id,
                "tokens": r.token_instance.audit_json(r.run_id),
                "shares": r.share_instance.audit_json(r.run_id),
                "b": {str(i): format(v, "x") for i, v in sorted(r.b.items())},
            } for r in self.runs],
        }


@dataclasses.dataclass(frozen=True)
class PublicBundle:
    """What the parties jointly hold: per run, one token and one share each."""

    q: int
    qprime: int
    runs: tuple[tuple[int, dict[Party, int], dict[Party, int]], ...]

    def to_json(self) -> dict:
        return {
            "q": format(self.q, "x"),
            "qprime": format(self.qprime, "x"),
            "runs": [{
                "run_id": run_id,
                "tokens": [{"id": z, "token": format(t, "x")} for z, t in sorted(tokens.items())],
                "shares": [{"id": z, "share": format(s, "x")} for z, s in sorted(shares.items())],
            } for run_id, tokens, shares in self.runs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PublicBundle":
        runs = []
        for r in obj["runs"]:
            tokens = {int(t["id"]): parse_int(t["token"]) for t in r["tokens"]}
            shares = {int(s["id"]): parse_int(s["share"]) for s in r["shares"]}
            runs.append((int(r["run_id"]), tokens, shares))
        return cls(parse_int(obj["q"]), parse_int(obj["qprime"]), tuple(runs))

    def restrict(self, coalition: Iterable[Party]) -> "PublicBundle":
        """Only the pairs held by ``coalition``."""
        c = set(coalition)
        runs = []
        for run_id, tokens, shares in self.runs:
            if set(tokens) != set(shares):
                raise InconsistentBundle(f"run {run_id}: token and share holders differ")
            missing = c - set(tokens)
            if missing:
                raise InconsistentBundle(f"run {run_id}: no pair for parties {sorted(missing)}")
            runs.append((run_id, {z: tokens[z] for z in c}, {z: shares[z] for z in c}))
        return PublicBundle(self.q, self.qprime, tuple(runs))


def split_secret(k: int, size: int, qprime: int, rng: random.Random) -> list[int]:
    """``size`` units of Z_q'^* whose product is k: draw all but the last."""
    b = [rng.randrange(1, qprime) for _ in range(size - 1)]
    prod = math.prod(b) % qprime
    b.append(k * pow(prod, -1, qprime) % qprime)
    return b


def make_shares(share_instance: AsesInstance, b: Sequence[int]) -> dict[Party, int]:
    """s_i = b_i gamma^{y_i} on Omega (in increasing party order), gamma^{y_j} elsewhere."""
    qp = share_instance.group.q
    inside = sorted(share_instance.omega)
    if len(b) != len(inside):
        raise InvalidArgument("need one b value per member of omega")
    shares = dict(share_instance.tokens)
    for i, bi in zip(inside, b):
        shares[i] = bi * shares[i] % qp
    return shares


def _check_secret(k: int, qprime: int) -> None:
    if not 1 <= k < qprime:
        raise InvalidArgument(f"invalid secret: k must lie in Z_q'^* = [1, {qprime - 1}]")


def share(token_params: GroupParams, share_params: GroupParams, access: AccessStructure,
          k: int, seed) -> ShareBundle:
    report = validate_structure(access)
    if not report["pass"]:
        raise InvalidStructure(f"access structure rejected: {report}")
    if not is_prime(share_params.q):
        raise InvalidArgument("q' must be prime")
    _check_secret(k, share_params.q)
    ell = access.ell
    used_tokens: set[int] = set()
    used_shares: set[int] = set()
    runs = []
    for run_id, omega in enumerate(sorted(access.minimal_sets, key=sorted)):
        tok = ases.encode(token_params, ell, omega, f"{seed}:run{run_id}:token", exclude=used_tokens)
        shr = ases.encode(share_params, ell, omega, f"{seed}:run{run_id}:share", exclude=used_shares)
        used_tokens.update(tok.identifiers.values())
        used_shares.update(shr.identifiers.values())
        b = split_secret(k, len(omega), share_params.q, random.Random(f"{seed}:run{run_id}:b"))
        runs.append(Run(run_id, omega, tok, shr, dict(zip(sorted(omega), b)), make_shares(shr, b)))
    return ShareBundle(token_params, share_params, access, tuple(runs))


def _product(values: Iterable[int], mod: int) -> int:
    out = 1
    for v in values:
        out = out * v % mod
    return out


def recon(public: PublicBundle, coalition: Iterable[Party], max_size: int | None = None) -> int:
    """Secret from a coalition's pairs, via the token witness of some run."""
    coalition = sorted(set(coalition))
    limit = budgets().recon_coalition if max_size is None else max_size
    if len(coalition) > limit:
        raise BudgetExceeded(f"coalition of {len(coalition)} exceeds recon budget {limit}")
    held = public.restrict(coalition)
    for _, tokens, shares in held.runs:
        found, witness = ases.hsver_monotone(tokens, held.q, max_size=limit)
        if found:
            return _product((shares[z] for z in witness), held.qprime)
    raise NotAuthorized(f"coalition {coalition} is not authorized in any run")


def recon_strict(public: PublicBundle, coalition: Iterable[Party]) -> int:
    """Literal variant: multiply every share of a run whose full token product is 1.

    Only coalitions equal to some Omega succeed.
    """
    held = public.restrict(coalition)
    for _, tokens, shares in held.runs:
        if tokens and ases.hsver_strict(tokens.values(), held.q):
            return _product(shares.values(), held.qprime)
    raise NotAuthorized(f"no run certifies exactly {sorted(set(coalition))}")


def random_access_structure(ell: int, rng: random.Random, max_sets: int = 3) -> AccessStructure:
    """Random valid structure: up to ``max_sets`` incomparable sets of size >= max(2, ceil(ell/2))."""
    need = max(2, math.ceil(ell / 2))
    count = rng.randint(1, max_sets)
    picked = []
    for _ in range(count):
        size = rng.randint(need, ell)
        picked.append(frozenset(rng.sample(range(1, ell + 1), size)))
    return AccessStructure(ell, tuple(sorted(minimal_sets(picked), key=sorted)))
