"""Brute-force verifiers.

These are deliberately naive: raw enumeration and raw set operations.  They
only call into the constructions to obtain the outputs under test.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
import random
import time
from collections import Counter

from . import covvec, scheme
from .ases import AsesInstance, hsver_monotone
from .budget import budgets
from .errors import BudgetExceeded, NotAuthorized
from .scheme import ShareBundle
from .setsys import SetFamily


@dataclasses.dataclass
class OracleReport:
    check: str
    instance: str
    passed: bool
    witness: object = None
    elapsed: float = 0.0
    details: dict = dataclasses.field(default_factory=dict)

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def _surjections(n: int, k: int) -> int:
    # inclusion-exclusion, independent of the Stirling recurrence
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1))


def cover_pair_count(n: int) -> int:
    """Number of pairs (x, y) of strings in {0..n-1}^n using the same symbols."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 12:
        raise BudgetExceeded(f"n={n} beyond the class-size oracle budget")
    if n > 6:
        return sum(math.comb(n, k) * _surjections(n, k) ** 2 for k in range(1, n + 1))
    strings = list(itertools.product(range(n), repeat=n))
    if len(strings) ** 2 <= 100_000:
        return sum(1 for x in strings for y in strings if x == y or set(x) == set(y))
    hist = Counter(frozenset(s) for s in strings)
    return sum(c * c for c in hist.values())


def _coalitions(ell: int):
    parties = range(1, ell + 1)
    for size in range(1, ell + 1):
        yield from itertools.combinations(parties, size)


def exhaustive_coalitions(obj: AsesInstance | ShareBundle, secret: int | None = None) -> OracleReport:
    """Classify every coalition directly from the minimal sets and compare with
    token verification (and reconstruction, for bundles)."""
    start = time.perf_counter()
    if isinstance(obj, AsesInstance):
        ell, minimal = obj.ell, [obj.omega]
        desc = f"ases q={obj.group.q} ell={ell} omega={sorted(obj.omega)}"
        limit = budgets().coalition
    else:
        ell, minimal = obj.access.ell, list(obj.access.minimal_sets)
        desc = f"bundle q={obj.q} q'={obj.qprime} ell={ell} sets={[sorted(s) for s in minimal]}"
        limit = budgets().recon_coalition
    if ell > limit:
        raise BudgetExceeded(f"ell={ell} exceeds budget {limit}")

    mismatches = []
    checked = authorized_count = 0
    for coalition in _coalitions(ell):
        checked += 1
        authorized = any(all(p in coalition for p in s) for s in minimal)
        authorized_count += authorized
        if isinstance(obj, AsesInstance):
            found, witness = hsver_monotone({z: obj.tokens[z] for z in coalition}, obj.group.q)
            ok = found == authorized and (not found or set(witness) == set(obj.omega))
            got = {"hsver": found, "witness": witness}
        else:
            try:
                value = scheme.recon(obj.public(), coalition)
                got = {"recon": value}
                ok = authorized and (secret is None or value == secret)
            except NotAuthorized:
                got = {"recon": None}
                ok = not authorized
        if not ok:
            mismatches.append({"coalition": list(coalition), "authorized": authorized, **got})
    return OracleReport(
        check="exhaustive_coalitions", instance=desc, passed=not mismatches,
        witness=mismatches[:10] or None, elapsed=time.perf_counter() - start,
        details={"coalitions": checked, "authorized": authorized_count,
                 "mismatches": len(mismatches)},
    )


def naive_set_intersections(family: SetFamily, label: str = "") -> OracleReport:
    """Raw pairwise intersections against covering-vector inner products."""
    start = time.perf_counter()
    m = family.modulus.m
    raw = [set(s) for s in family.sets]
    vecs = covvec.family_vectors(family)
    bad = []
    pairs = 0
    for i in range(len(raw)):
        for j in range(i, len(raw)):
            pairs += 1
            size = len(raw[i] & raw[j])
            ip = covvec.inner(vecs[i], vecs[j])
            w = covvec.hadamard_weight(vecs[i], vecs[j])
            if ip != size % m or w != size:
                bad.append({"pair": [i, j], "intersection": size, "inner": ip, "weight": w})
    return OracleReport(
        check="naive_set_intersections",
        instance=label or f"family m={m} sets={len(raw)} h={family.h}",
        passed=not bad, witness=bad[:10] or None,
        elapsed=time.perf_counter() - start, details={"pairs": pairs},
    )


def naive_polynomial_zero_set(poly) -> OracleReport:
    """Evaluate every monomial by hand at every 0/1 input."""
    start = time.perf_counter()
    n, m = poly.n, poly.modulus.m
    bad = []
    for z in itertools.product((0, 1), repeat=n):
        total = 0
        for idx, c in poly.multilinear_form.items():
            if all(z[i] == 1 for i in idx):
                total += c
        value = total % m
        if (value == 0) != all(z):
            bad.append({"z": list(z), "value": value})
        elif any(value % pp > 1 for pp in poly.modulus.prime_powers):
            bad.append({"z": list(z), "value": value, "reason": "residue"})
    return OracleReport("naive_polynomial_zero_set", f"n={n} m={m}", not bad,
                        bad[:10] or None, time.perf_counter() - start)


def run_grid(grid: str = "default", seed: int = 0) -> list[OracleReport]:
    """m = 6, n in 2..5 for the combinatorics; ell in 2..6 for the protocol."""
    from . import bbrpoly, counting, setsys
    from .numth import gen_group_params
    from . import ases

    if grid not in ("default", "small"):
        raise ValueError(f"unknown grid {grid!r}")
    ns = range(2, 6) if grid == "default" else range(2, 4)
    ells = range(2, 7) if grid == "default" else range(2, 4)
    spec = bbrpoly.ModulusSpec.of(6)
    reports = []
    for n in ns:
        start = time.perf_counter()
        brute, closed = cover_pair_count(n), counting.s_of_n_sum(n)
        reports.append(OracleReport("cover_pair_count", f"n={n}", brute == closed,
                                    None if brute == closed else {"oracle": brute, "sum": closed},
                                    time.perf_counter() - start))
        ss = setsys.build_set_system(n, spec)
        reports.append(naive_polynomial_zero_set(ss.poly))
        reports.append(naive_set_intersections(ss.family, f"indexed n={n} m=6"))
        reports.append(naive_set_intersections(setsys.uniform_subsystem(ss), f"uniform n={n} m=6"))
    rng = random.Random(f"grid:{seed}")
    for ell in ells:
        tok = gen_group_params(ell, 8, f"{seed}:{ell}:t")
        shr = gen_group_params(ell, 8, f"{seed}:{ell}:s")
        access = scheme.random_access_structure(ell, rng)
        omega = sorted(access.minimal_sets[0])
        reports.append(exhaustive_coalitions(ases.encode(tok, ell, omega, f"{seed}:{ell}")))
        k = rng.randrange(1, shr.q)
        bundle = scheme.share(tok, shr, access, k, f"{seed}:{ell}")
        reports.append(exhaustive_coalitions(bundle, secret=k))
    return reports
