"""Set systems built from the intersection polynomial.

Strings x in {0..n-1}^n are compared through their characteristic vectors
chi(x) (which symbols occur).  The matrix A has entry
a_{x,y} = Q(delta(chi x, chi y)) mod m with delta = bitwise XNOR, and A splits
as sum_I coeff_I * B_I where B_I[x,y] = prod_{j in I} delta_j.

Two families are exposed:

* the indexed family: one set per zero cell of A, over a universe with one
  element per B-copy (monomial I, copy c); the set holds the copies whose
  B-entry is 1 at that cell;
* the uniform subsystem: one set per characteristic class, over the refined
  universe (I, c, pattern) with pattern in {0,1}^I, where class chi owns
  (I, c, chi restricted to I).  Intersections count the B-copies on which two
  classes agree, i.e. equal the integer B-entry count a_{x,y}.

Cells only depend on the characteristic classes, so the string space is
walked class by class with multiplicity k! S(n, k).
"""
from __future__ import annotations

import dataclasses
import itertools
import random

from . import bbrpoly
from .bbrpoly import IntersectionPolynomial, ModulusSpec
from .budget import budgets
from .counting import surjections
from .errors import BudgetExceeded, DimensionMismatch, InvalidArgument

Chi = tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class SymbolString:
    symbols: tuple[int, ...]

    def __post_init__(self):
        n = len(self.symbols)
        if n == 0 or any(not 0 <= s < n for s in self.symbols):
            raise InvalidArgument(f"symbols must lie in 0..{n - 1}")

    @classmethod
    def parse(cls, text: str) -> "SymbolString":
        return cls(tuple(int(ch) for ch in text))

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def chi(self) -> Chi:
        present = set(self.symbols)
        return tuple(int(j in present) for j in range(self.n))

    @property
    def usw(self) -> int:
        """Unique-symbol weight."""
        return sum(self.chi)


def all_strings(n: int):
    for symbols in itertools.product(range(n), repeat=n):
        yield SymbolString(symbols)


def delta(a: Chi, b: Chi) -> Chi:
    return tuple(int(u == v) for u, v in zip(a, b))


def cover(x: SymbolString, y: SymbolString) -> bool:
    if x.n != y.n:
        raise DimensionMismatch("strings must have equal length")
    return x == y or x.chi == y.chi


def matrix_entry(poly: IntersectionPolynomial, x: SymbolString, y: SymbolString) -> int:
    if x.n != poly.n or y.n != poly.n:
        raise DimensionMismatch("string length must match polynomial arity")
    value, _ = bbrpoly.eval(poly, delta(x.chi, y.chi))
    return value


def classes(n: int) -> list[Chi]:
    """Nonempty characteristic vectors (every string uses some symbol)."""
    return [c for c in itertools.product((0, 1), repeat=n) if any(c)]


def class_size(chi: Chi) -> int:
    return surjections(len(chi), sum(chi))


@dataclasses.dataclass(frozen=True)
class SetFamily:
    """A family of subsets of ``range(len(universe))``."""

    modulus: ModulusSpec
    universe: tuple
    sets: tuple[frozenset[int], ...]
    labels: tuple

    @property
    def h(self) -> int:
        return len(self.universe)

    def __len__(self) -> int:
        return len(self.sets)


@dataclasses.dataclass(frozen=True)
class Cell:
    """All string pairs (x, y) with chi(x) = cx, chi(y) = cy."""

    cx: Chi
    cy: Chi
    multiplicity: int
    members: frozenset[int]


@dataclasses.dataclass(frozen=True)
class SetSystem:
    modulus: ModulusSpec
    n: int
    poly: IntersectionPolynomial
    universe: tuple[tuple[tuple[int, ...], int], ...]  # (monomial, copy 1..coeff)
    cells: tuple[Cell, ...]
    dedupe: bool

    @property
    def h(self) -> int:
        return len(self.universe)

    @property
    def index_count(self) -> int:
        return sum(c.multiplicity for c in self.cells)

    @property
    def family(self) -> SetFamily:
        """Extensional family (deduplicated unless built with dedupe=False)."""
        if not self.dedupe:
            sets = tuple(c.members for c in self.cells)
            labels = tuple((c.cx, c.cy) for c in self.cells)
        else:
            seen: dict[frozenset[int], list] = {}
            for c in self.cells:
                seen.setdefault(c.members, []).append((c.cx, c.cy))
            sets = tuple(seen)
            labels = tuple(tuple(v) for v in seen.values())
        return SetFamily(self.modulus, self.universe, sets, labels)

    @property
    def distinct_count(self) -> int:
        return len({c.members for c in self.cells})

    def h_budget(self) -> int:
        """Q(n, ..., n) with the reduced coefficients."""
        return sum(c * self.n ** len(idx) for idx, c in self.poly.multilinear_form.items())


def _universe(poly: IntersectionPolynomial):
    return tuple((idx, copy) for idx, c in poly.terms() for copy in range(1, c + 1))


def _agrees(idx: tuple[int, ...], d: Chi) -> bool:
    return all(d[i] for i in idx)


def build_set_system(n: int, spec: ModulusSpec, dedupe: bool = True,
                     max_n: int | None = None) -> SetSystem:
    max_n = budgets().setsys_n if max_n is None else max_n
    if n > max_n:
        raise BudgetExceeded(f"n={n} exceeds set-system budget {max_n}")
    poly = bbrpoly.build_polynomial(n, spec)
    universe = _universe(poly)
    m = spec.m

    by_delta: dict[Chi, tuple[int, frozenset[int]]] = {}
    cells = []
    cls = classes(n)
    for cx in cls:
        for cy in cls:
            d = delta(cx, cy)
            if d not in by_delta:
                members = frozenset(k for k, (idx, _) in enumerate(universe) if _agrees(idx, d))
                by_delta[d] = (poly.integer_at(d) % m, members)
            a, members = by_delta[d]
            if a == 0:
                cells.append(Cell(cx, cy, class_size(cx) * class_size(cy), members))
    return SetSystem(spec, n, poly, universe, tuple(cells), dedupe)


def b_entry_count(ss: SetSystem, x: SymbolString, y: SymbolString) -> int:
    """Count B-copies equal to 1 at (x, y) by walking the universe."""
    d = delta(x.chi, y.chi)
    return sum(1 for idx, _ in ss.universe if _agrees(idx, d))


def uniform_subsystem(ss: SetSystem) -> SetFamily:
    """One set per characteristic class over the (monomial, copy, pattern) universe."""
    universe = []
    where = {}
    for idx, copy in ss.universe:
        for pattern in itertools.product((0, 1), repeat=len(idx)):
            where[(idx, copy, pattern)] = len(universe)
            universe.append((idx, copy, pattern))
    cls = classes(ss.n)
    sets = tuple(
        frozenset(where[(idx, copy, tuple(chi[i] for i in idx))] for idx, copy in ss.universe)
        for chi in cls
    )
    return SetFamily(ss.modulus, tuple(universe), sets, tuple(cls))


# -- verification ---------------------------------------------------------

MAX_WITNESSES = 10


def verify_intersection_conditions(family: SetFamily) -> dict:
    """Exhaustive check of the size and pairwise-intersection conditions.

    Returns a report; failures are listed with witnesses, never raised.
    """
    m = family.modulus.m
    pps = family.modulus.prime_powers
    sets = family.sets
    c2_bad = [i for i, s in enumerate(sets) if len(s) % m]
    nested = non_nested = 0
    c3_bad, c4_bad = [], []
    residues = set()
    for i, j in itertools.combinations(range(len(sets)), 2):
        g, hh = sets[i], sets[j]
        inter = len(g & hh)
        residues.add(inter % m)
        if g < hh or hh < g:
            nested += 1
            if inter % m:
                c3_bad.append({"pair": [i, j], "nested": True, "intersection": inter})
        else:
            non_nested += 1
            if inter % m == 0:
                c3_bad.append({"pair": [i, j], "nested": False, "intersection": inter})
        if any(inter % pp > 1 for pp in pps):
            c4_bad.append({"pair": [i, j], "intersection": inter,
                           "residues": [inter % pp for pp in pps]})

    def part(bad, **extra):
        return {"pass": not bad, "violations": len(bad), "witnesses": bad[:MAX_WITNESSES], **extra}

    return {
        "sets": len(sets),
        "h": family.h,
        "pairs": len(sets) * (len(sets) - 1) // 2,
        "c2": part([{"set": i, "size": len(sets[i])} for i in c2_bad]),
        "c3": part(c3_bad, nested_pairs=nested, non_nested_pairs=non_nested),
        "c4": part(c4_bad),
        "intersection_residues": sorted(residues),
    }


def verify_cell_counts(ss: SetSystem, exhaustive_strings: int = 4) -> dict:
    """B-entry counts: equal diagonal divisible by m, zero mod m iff cover,
    and strictly below the diagonal count off the cover relation.

    For n <= ``exhaustive_strings`` every pair of strings is visited;
    otherwise one representative pair per pair of classes.
    """
    m, poly = ss.modulus.m, ss.poly
    count_cache: dict[Chi, int] = {}

    def count(cx: Chi, cy: Chi) -> int:
        d = delta(cx, cy)
        if d not in count_cache:
            count_cache[d] = poly.integer_at(d)
        return count_cache[d]

    if ss.n <= exhaustive_strings:
        chis = [s.chi for s in all_strings(ss.n)]
        pairs = ((a, b) for a in chis for b in chis)
        mode = "strings"
    else:
        pairs = ((a, b) for a in classes(ss.n) for b in classes(ss.n))
        mode = "classes"

    diagonal = count((1,) * ss.n, (1,) * ss.n)
    diag_values = set()
    ii_bad, iii_bad = [], []
    visited = 0
    for cx, cy in pairs:
        visited += 1
        c = count(cx, cy)
        if cx == cy:
            diag_values.add(c)
        covered = cx == cy
        if (c % m == 0) != covered and len(ii_bad) < MAX_WITNESSES:
            ii_bad.append({"cx": cx, "cy": cy, "count": c})
        if not covered and not c < diagonal and len(iii_bad) < MAX_WITNESSES:
            iii_bad.append({"cx": cx, "cy": cy, "count": c, "diagonal": diagonal})
    i_ok = len(diag_values) == 1 and diagonal % m == 0
    return {
        "mode": mode,
        "pairs_visited": visited,
        "diagonal_count": diagonal,
        "i": {"pass": i_ok, "diagonal_values": sorted(diag_values)},
        "ii": {"pass": not ii_bad, "witnesses": ii_bad},
        "iii": {"pass": not iii_bad, "witnesses": iii_bad},
        "pass": i_ok and not ii_bad and not iii_bad,
    }


def random_cells(n: int, count: int, rng: random.Random) -> list[tuple[SymbolString, SymbolString]]:
    def one():
        return SymbolString(tuple(rng.randrange(n) for _ in range(n)))
    return [(one(), one()) for _ in range(count)]


def build_report(ss: SetSystem, verify: bool = True) -> dict:
    report = {
        "n": ss.n,
        "m": ss.modulus.m,
        "index_count": ss.index_count,
        "distinct_count": ss.distinct_count,
        "h": ss.h,
        "h_budget": ss.h_budget(),
        "degree": ss.poly.degree,
    }
    if verify:
        uni = uniform_subsystem(ss)
        report["conditions"] = {
            "indexed": verify_intersection_conditions(ss.family),
            "uniform": verify_intersection_conditions(uni),
            "cell_counts": verify_cell_counts(ss),
        }
        report["uniform"] = {"sets": len(uni), "h": uni.h}
        c = report["conditions"]
        report["pass"] = (
            c["indexed"]["c2"]["pass"] and c["indexed"]["c4"]["pass"]
            and c["uniform"]["c2"]["pass"] and c["uniform"]["c3"]["pass"]
            and c["uniform"]["c4"]["pass"] and c["cell_counts"]["pass"]
        )
    return report

