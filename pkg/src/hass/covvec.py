"""Covering vectors over Z_m derived from set families."""
from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidArgument
from .setsys import SetFamily


@dataclasses.dataclass(frozen=True)
class CoveringVector:
    """Sparse vector in (Z_m)^h; ``coords`` maps position -> nonzero residue."""

    h: int
    m: int
    coords: tuple[tuple[int, int], ...]
    source: object = None

    @classmethod
    def sparse(cls, h: int, m: int, items: Iterable[tuple[int, int]], source=None) -> "CoveringVector":
        acc: dict[int, int] = {}
        for i, v in items:
            if not 0 <= i < h:
                raise InvalidArgument(f"position {i} outside 0..{h - 1}")
            acc[i] = (acc.get(i, 0) + v) % m
        return cls(h, m, tuple(sorted((i, v) for i, v in acc.items() if v)), source)

    @classmethod
    def dense(cls, values: Sequence[int], m: int, source=None) -> "CoveringVector":
        return cls.sparse(len(values), m, enumerate(values), source)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coords)

    def to_dense(self) -> list[int]:
        out = [0] * self.h
        for i, v in self.coords:
            out[i] = v
        return out

    def __add__(self, other: "CoveringVector") -> "CoveringVector":
        _check(self, other)
        return CoveringVector.sparse(self.h, self.m, self.coords + other.coords)

    def __sub__(self, other: "CoveringVector") -> "CoveringVector":
        _check(self, other)
        return CoveringVector.sparse(self.h, self.m, self.coords + tuple((i, -v) for i, v in other.coords))


def _check(u: CoveringVector, v: CoveringVector) -> None:
    if u.h != v.h:
        raise DimensionMismatch(f"dimensions differ: {u.h} vs {v.h}")
    if u.m != v.m:
        raise InvalidArgument(f"moduli differ: {u.m} vs {v.m}")


def from_set(family: SetFamily, index: int) -> CoveringVector:
    """0/1 incidence vector of ``family.sets[index]`` read into Z_m."""
    if not 0 <= index < len(family.sets):
        raise InvalidArgument(f"unknown set index {index}")
    return CoveringVector.sparse(
        family.h, family.modulus.m, ((e, 1) for e in family.sets[index]), source=index)


def family_vectors(family: SetFamily) -> list[CoveringVector]:
    return [from_set(family, i) for i in range(len(family.sets))]


def inner(u: CoveringVector, v: CoveringVector) -> int:
    _check(u, v)
    if len(u.coords) > len(v.coords):
        u, v = v, u
    vd = v.as_dict()
    return sum(x * vd.get(i, 0) for i, x in u.coords) % u.m


def hadamard_weight(u: CoveringVector, v: CoveringVector) -> int:
    """Hamming weight of the coordinatewise product reduced mod m."""
    _check(u, v)
    vd = v.as_dict()
    return sum(1 for i, x in u.coords if (x * vd.get(i, 0)) % u.m)


def verify_covering_family(family: Sequence[CoveringVector], S: set[int] | None = None,
                           r: int | None = None) -> dict:
    """Check both covering-family clauses over all pairs.

    ``S`` defaults to the residue set the family actually realises; ``r``
    (number of prime divisors of m) enables the |S| <= 2^r - 1 comparison.
    """
    if not family:
        raise InvalidArgument("family must be nonempty")
    m = family[0].m
    self_bad = [i for i, v in enumerate(family) if inner(v, v)]
    realized: set[int] = set()
    clause2_bad = []
    for i, j in itertools.combinations(range(len(family)), 2):
        ip = inner(family[i], family[j])
        w = hadamard_weight(family[i], family[j])
        if w % m == 0:
            if ip != 0:
                clause2_bad.append({"pair": [i, j], "inner": ip, "weight": w})
        else:
            if ip == 0 or (S is not None and ip not in S):
                clause2_bad.append({"pair": [i, j], "inner": ip, "weight": w})
            realized.add(ip)
    bound = 2**r - 1 if r is not None else None
    size_ok = bound is None or len(realized) <= bound
    return {
        "vectors": len(family),
        "self_orthogonal": {"pass": not self_bad, "witnesses": self_bad[:10]},
        "clause2": {"pass": not clause2_bad, "violations": len(clause2_bad),
                    "witnesses": clause2_bad[:10]},
        "realized_S": sorted(realized),
        "S_bound": bound,
        "S_size_ok": size_ok,
        "pass": not self_bad and not clause2_bad and size_ok,
    }


def to_json(family: Sequence[CoveringVector]) -> dict:
    if not family:
        raise InvalidArgument("family must be nonempty")
    return {
        "h": family[0].h,
        "m": family[0].m,
        "vectors": [{"source": v.source, "coords_sparse": [[i, x] for i, x in v.coords]}
                    for v in family],
    }


def from_json(obj: dict) -> list[CoveringVector]:
    h, m = int(obj["h"]), int(obj["m"])
    return [CoveringVector.sparse(h, m, ((int(i), int(x)) for i, x in v["coords_sparse"]),
                                  source=v.get("source"))
            for v in obj["vectors"]]
