"""Low-degree polynomial that vanishes mod m only at the all-ones input.

Construction, for m = prod p_i^alpha_i with r > 1 distinct primes:

* pick digit counts a_i >= 1 with prod p_i^a_i > n, growing whichever prime
  has the smallest next power (this keeps max p_i^a_i, hence the degree, low);
* modulo p_i, test ``weight(z) == n (mod p_i^a_i)`` digit by digit.  Digit j
  of the weight is C(weight, p^j) mod p (Lucas), and C(weight, p^j) is the
  elementary symmetric polynomial e_{p^j}(z).  A digit matches iff
  ``1 - (e_{p^j} - c_j)^(p-1)`` is 1 mod p;
* Q_i = 1 - prod_j (match indicator) is 0/1 mod p_i; for alpha_i > 1 it is
  lifted to 0/1 mod p_i^alpha_i by raising to the power p_i^(alpha_i - 1);
* CRT the Q_i together.

Because the tests are symmetric, all arithmetic is done in the basis of
elementary symmetric polynomials e_0..e_n, where the multilinear product is
e_i e_j = sum_t C(i+j-t, i) C(i, t) e_{i+j-t}.  The multilinear form is then
read off: every k-subset of variables gets the coefficient of e_k.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from .budget import budgets
from .errors import (BudgetExceeded, DimensionMismatch, InvalidArgument,
                     UnsupportedModulus)
from .numth import crt_combine, factor_small


@dataclasses.dataclass(frozen=True)
class ModulusSpec:
    m: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if math.prod(p**a for p, a in self.factors) != self.m:
            raise InvalidArgument("factors do not multiply to m")
        if len(self.factors) < 2:
            raise InvalidArgument(f"m = {self.m} needs at least two distinct prime divisors")

    @classmethod
    def of(cls, m: int) -> "ModulusSpec":
        if m < 6:
            raise InvalidArgument("m must be >= 6")
        return cls(m, tuple(sorted(factor_small(m).items())))

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**a for p, a in self.factors)

    @property
    def squarefree(self) -> bool:
        return all(a == 1 for _, a in self.factors)


@dataclasses.dataclass(frozen=True)
class DigitTest:
    """``weight == n (mod p^len(targets))`` checked through base-p digits."""

    p: int
    alpha: int
    targets: tuple[int, ...]  # base-p digits of n, least significant first

    @property
    def modulus(self) -> int:
        return self.p**self.alpha

    def value(self, weight: int) -> int:
        """Q_i at a weight: 0 if every digit matches, else 1."""
        w = weight
        for c in self.targets:
            if w % self.p != c:
                return 1
            w //= self.p
        return 0


@dataclasses.dataclass(frozen=True)
class IntersectionPolynomial:
    n: int
    modulus: ModulusSpec
    symmetric_form: tuple[DigitTest, ...]
    multilinear_form: dict[tuple[int, ...], int]
    degree: int
    degree_budget: int

    def terms(self) -> Iterable[tuple[tuple[int, ...], int]]:
        return sorted(self.multilinear_form.items(), key=lambda t: (len(t[0]), t[0]))

    def integer_at(self, z: Sequence[int]) -> int:
        """Sum of reduced coefficients over monomials supported by z, no mod."""
        ones = {i for i, b in enumerate(z) if b}
        return sum(c for idx, c in self.multilinear_form.items() if ones.issuperset(idx))

    def symmetric_value(self, z: Sequence[int]) -> int:
        """Evaluate through the digit tests, bypassing the multilinear form."""
        w = sum(z)
        value, _ = crt_combine((t.value(w), t.modulus) for t in self.symmetric_form)
        return value

    def total_multiplicity(self) -> int:
        return sum(self.multilinear_form.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.modulus.m,
            "terms": [{"indices": list(idx), "coeff": c} for idx, c in self.terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntersectionPolynomial":
        """Rebuild the digit tests from (n, m) and take the terms from the file."""
        base = build_polynomial(int(obj["n"]), ModulusSpec.of(int(obj["m"])))
        terms = {}
        for t in obj["terms"]:
            idx = tuple(int(i) for i in t["indices"])
            if list(idx) != sorted(set(idx)) or (idx and not 0 <= idx[-1] < base.n):
                raise InvalidArgument(f"bad monomial {idx}")
            terms[idx] = int(t["coeff"]) % base.modulus.m
        return base.with_terms(terms)

    def with_terms(self, terms: dict[tuple[int, ...], int]) -> "IntersectionPolynomial":
        terms = {k: v for k, v in terms.items() if v}
        degree = max((len(k) for k in terms), default=0)
        return dataclasses.replace(self, multilinear_form=terms, degree=degree)


def choose_digit_counts(n: int, spec: ModulusSpec) -> list[int]:
    counts = [1] * spec.r
    primes = [p for p, _ in spec.factors]
    while math.prod(p**a for p, a in zip(primes, counts)) <= n:
        i = min(range(spec.r), key=lambda i: (primes[i] ** (counts[i] + 1), i))
        counts[i] += 1
    return counts


def _digits(n: int, p: int, count: int) -> tuple[int, ...]:
    out = []
    for _ in range(count):
        out.append(n % p)
        n //= p
    return tuple(out)


# -- arithmetic in the elementary symmetric basis, truncated at degree n --

def _e_mul(a: list[int], b: list[int], n: int, mod: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            for t in range(min(i, j) + 1):
                k = i + j - t
                if k > n:
                    continue
                out[k] = (out[k] + x * y * math.comb(k, i) * math.comb(i, t)) % mod
    return out


def _e_pow(a: list[int], e: int, n: int, mod: int) -> list[int]:
    result = _e_const(1, n, mod)
    for _ in range(e):
        result = _e_mul(result, a, n, mod)
    return result


def _e_const(c: int, n: int, mod: int) -> list[int]:
    out = [0] * (n + 1)
    out[0] = c % mod
    return out


def _e_basis(k: int, n: int) -> list[int]:
    out = [0] * (n + 1)
    if k <= n:
        out[k] = 1
    return out


def _component(test: DigitTest, n: int) -> list[int]:
    """Q_i in the e-basis, coefficients mod p^alpha."""
    p, mod = test.p, test.modulus
    prod = _e_const(1, n, mod)
    for j, c in enumerate(test.targets):
        shifted = _e_basis(p**j, n)
        shifted[0] = (shifted[0] - c) % mod
        match = [(-x) % mod for x in _e_pow(shifted, p - 1, n, mod)]
        match[0] = (match[0] + 1) % mod
        prod = _e_mul(prod, match, n, mod)
    q = [(-x) % mod for x in prod]
    q[0] = (q[0] + 1) % mod
    if test.alpha > 1:
        q = _e_pow(q, p ** (test.alpha - 1), n, mod)
    return q


def degree_budget(n: int, spec: ModulusSpec) -> int:
    counts = choose_digit_counts(n, spec)
    bound = max((p**a - 1) * p ** (alpha - 1)
                for (p, alpha), a in zip(spec.factors, counts))
    return min(bound, n)


def build_polynomial(n: int, spec: ModulusSpec, max_terms: int | None = None) -> IntersectionPolynomial:
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    max_terms = budgets().poly_terms if max_terms is None else max_terms
    counts = choose_digit_counts(n, spec)
    tests = tuple(
        DigitTest(p, alpha, _digits(n, p, a))
        for (p, alpha), a in zip(spec.factors, counts)
    )
    budget = degree_budget(n, spec)
    n_terms = sum(math.comb(n, k) for k in range(budget + 1))
    if n_terms > max_terms:
        if not spec.squarefree:
            raise UnsupportedModulus(
                f"prime-power modulus {spec.m} at n={n} needs up to {n_terms} terms")
        raise BudgetExceeded(f"n={n} needs up to {n_terms} terms (budget {max_terms})")

    components = [_component(t, n) for t in tests]
    sym = [
        crt_combine((comp[k], t.modulus) for comp, t in zip(components, tests))[0]
        for k in range(n + 1)
    ]
    multilinear = {}
    for k, c in enumerate(sym):
        if c:
            for idx in itertools.combinations(range(n), k):
                multilinear[idx] = c
    degree = max((k for k, c in enumerate(sym) if c), default=0)
    return IntersectionPolynomial(n, spec, tests, multilinear, degree, budget)


def eval(poly: IntersectionPolynomial, z: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Value mod m through the multilinear form, plus residues mod each p_i^alpha_i."""
    if len(z) != poly.n:
        raise DimensionMismatch(f"expected {poly.n} inputs, got {len(z)}")
    if any(b not in (0, 1) for b in z):
        raise InvalidArgument("inputs must be 0/1")
    value = poly.integer_at(z) % poly.modulus.m
    return value, tuple(value % pp for pp in poly.modulus.prime_powers)


def eval_all(poly: IntersectionPolynomial) -> np.ndarray:
    """Values mod m at every z, z encoded as the integer sum z_i 2^i."""
    m = poly.modulus.m
    if m >= 2**31:
        raise UnsupportedModulus("vectorised evaluation needs m < 2^31")
    inputs = np.arange(1 << poly.n, dtype=np.int64)
    out = np.zeros_like(inputs)
    for idx, c in poly.multilinear_form.items():
        mask = sum(1 << i for i in idx)
        out += np.where((inputs & mask) == mask, c, 0)
        out %= m
    return out


def bits(z: int, n: int) -> tuple[int, ...]:
    return tuple((z >> i) & 1 for i in range(n))


@dataclasses.dataclass
class ContractReport:
    n: int
    m: int
    passed: bool
    zero_set_ok: bool
    residues_ok: bool
    degree: int
    degree_budget: int
    growth_reference: float  # n^(1/r)
    evaluations: int
    witness: tuple[int, ...] | None = None
    witness_reason: str | None = None

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def verify_contract(poly: IntersectionPolynomial, max_n: int | None = None) -> ContractReport:
    """Exhaustively check the zero set and the per-prime-power residue range."""
    max_n = budgets().poly_exhaustive_n if max_n is None else max_n
    if poly.n > max_n:
        raise BudgetExceeded(f"n={poly.n} exceeds exhaustive budget {max_n}")
    n, spec = poly.n, poly.modulus
    values = eval_all(poly)
    full = (1 << n) - 1
    witness = reason = None

    zero_at = np.flatnonzero(values == 0)
    zero_set_ok = zero_at.tolist() == [full]
    if not zero_set_ok:
        reason = "zero set differs from {all-ones}"
        stray = [z for z in zero_at.tolist() if z != full]
        witness = bits(stray[0] if stray else full, n)

    residues_ok = True
    for pp in spec.prime_powers:
        bad = np.flatnonzero((values % pp) > 1)
        if bad.size:
            residues_ok = False
            if witness is None:
                witness = bits(int(bad[0]), n)
                reason = f"residue mod {pp} outside {{0,1}}"
            break
    return ContractReport(
        n=n, m=spec.m, passed=zero_set_ok and residues_ok,
        zero_set_ok=zero_set_ok, residues_ok=residues_ok,
        degree=poly.degree, degree_budget=poly.degree_budget,
        growth_reference=n ** (1 / spec.r), evaluations=1 << n,
        witness=witness, witness_reason=reason,
    )
