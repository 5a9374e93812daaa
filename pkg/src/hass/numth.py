"""Modular arithmetic and group-parameter generation.

Everything here works on plain Python integers (arbitrary precision).
Randomness is always drawn from a ``random.Random`` built from an explicit
seed so that protocol transcripts are reproducible.
"""
from __future__ import annotations

import dataclasses
import math
import random
from collections import Counter
from typing import Iterable, Sequence

from .budget import budgets
from .errors import InvalidArgument, NonCoprimeModuli, SearchExhausted

TRIAL_DIVISION_LIMIT = 10**10
MR_ROUNDS = 64


def _small_primes(count: int) -> list[int]:
    out, c = [], 2
    while len(out) < count:
        if all(c % p for p in out if p * p <= c):
            out.append(c)
        c += 1
    return out


_MR_BASES = _small_primes(MR_ROUNDS)


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus (square-and-multiply)."""
    if modulus < 2:
        raise InvalidArgument("modulus must be >= 2")
    if exponent < 0:
        raise InvalidArgument("exponent must be non-negative")
    return pow(base, exponent, modulus)


def crt_combine(residues: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Combine ``(residue, modulus)`` pairs with pairwise-coprime moduli.

    Returns ``(x, M)`` where ``M`` is the product of the moduli and ``x`` is
    the unique residue in ``[0, M)`` agreeing with every input.
    """
    x, big = 0, 1
    for r, mod in residues:
        if mod < 1:
            raise InvalidArgument("moduli must be positive")
        if math.gcd(big, mod) != 1:
            raise NonCoprimeModuli(f"modulus {mod} shares a factor with {big}")
        # x + big*t = r (mod mod)
        t = ((r - x) * pow(big, -1, mod)) % mod if mod > 1 else 0
        x += big * t
        big *= mod
        x %= big
    return x, big


def _trial_division(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test.

    Exact trial division below ``TRIAL_DIVISION_LIMIT``; above it, Miller-Rabin
    with the first 64 primes as bases (deterministic, and provably exact for
    n < 3.3e24).
    """
    if n < 0:
        raise InvalidArgument("n must be non-negative")
    if n < TRIAL_DIVISION_LIMIT:
        return _trial_division(n)
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    return _miller_rabin(n)


def totient_of_prime(q: int) -> int:
    if not is_prime(q):
        raise InvalidArgument(f"{q} is not prime")
    return q - 1


def factor_small(n: int) -> dict[int, int]:
    """Trial-division factorisation; only meant for small cofactors."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    out: Counter[int] = Counter()
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] += 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] += 1
    return dict(out)


def multiplicative_order(a: int, q: int, m_factors: Iterable[tuple[int, int]]) -> int:
    """Order of ``a`` in Z_q^*, given the factorisation of q - 1."""
    if math.gcd(a, q) != 1:
        raise InvalidArgument("a must be a unit mod q")
    factors = list(m_factors)
    order = math.prod(p**e for p, e in factors)
    for p, e in factors:
        for _ in range(e):
            if pow(a, order // p, q) != 1:
                break
            order //= p
    return order


@dataclasses.dataclass(frozen=True)
class GroupParams:
    """Prime ``q = u * prod(base_primes) + 1`` with ``m = q - 1`` fully factored."""

    eta: int
    base_primes: tuple[int, ...]
    cofactor: int
    q: int
    m_factors: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return self.q - 1

    @property
    def r(self) -> int:
        """Number of distinct primes dividing m."""
        return len(self.m_factors)

    @property
    def w(self) -> int:
        return math.prod(self.base_primes)

    def check(self) -> None:
        """Raise ``InvalidArgument`` if an invariant does not hold."""
        if len(set(self.base_primes)) != self.eta or self.eta < 1:
            raise InvalidArgument("base primes must be eta distinct primes")
        if not all(is_prime(p) for p in self.base_primes):
            raise InvalidArgument("base primes must be prime")
        if self.q != self.cofactor * self.w + 1 or not is_prime(self.q):
            raise InvalidArgument("q must be a prime equal to u*prod(p)+1")
        if math.prod(p**a for p, a in self.m_factors) != self.m:
            raise InvalidArgument("m_factors do not multiply back to m")
        if not all(is_prime(p) and a >= 1 for p, a in self.m_factors):
            raise InvalidArgument("m_factors must be prime powers")

    def to_json(self) -> dict:
        return {
            "eta": self.eta,
            "base_primes": [format(p, "x") for p in self.base_primes],
            "cofactor": format(self.cofactor, "x"),
            "q": format(self.q, "x"),
            "m_factors": [{"p": format(p, "x"), "alpha": a} for p, a in self.m_factors],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GroupParams":
        gp = cls(
            eta=int(obj["eta"]),
            base_primes=tuple(parse_int(p) for p in obj["base_primes"]),
            cofactor=parse_int(obj["cofactor"]),
            q=parse_int(obj["q"]),
            m_factors=tuple((parse_int(f["p"]), int(f["alpha"])) for f in obj["m_factors"]),
        )
        gp.check()
        return gp


def parse_int(value) -> int:
    """Integers in files are lowercase hex strings; JSON numbers are decimal."""
    if isinstance(value, bool):
        raise InvalidArgument("boolean is not an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        s = value.strip().lower()
        if s.startswith("0x"):
            s = s[2:]
        try:
            return int(s, 16)
        except ValueError:
            raise InvalidArgument(f"not a hex integer: {value!r}") from None
    raise InvalidArgument(f"cannot parse integer from {value!r}")


def _squarefree(factors: dict[int, int]) -> bool:
    return all(a == 1 for a in factors.values())


def group_from_primes(
    base_primes: Sequence[int],
    max_cofactor: int | None = None,
    squarefree: bool = True,
) -> GroupParams:
    """Search u = 1, 2, ... until ``u * prod(base_primes) + 1`` is prime.

    With ``squarefree`` set, cofactors that would give q - 1 a repeated prime
    factor are skipped.
    """
    primes = tuple(sorted(base_primes))
    if len(set(primes)) != len(primes) or not all(is_prime(p) for p in primes):
        raise InvalidArgument("base primes must be distinct primes")
    bound = budgets().cofactor if max_cofactor is None else max_cofactor
    w = math.prod(primes)
    for u in range(1, bound + 1):
        q = u * w + 1
        if not is_prime(q):
            continue
        factors = Counter(factor_small(u))
        for p in primes:
            factors[p] += 1
        if squarefree and not _squarefree(factors):
            continue
        return GroupParams(
            eta=len(primes),
            base_primes=primes,
            cofactor=u,
            q=q,
            m_factors=tuple(sorted(factors.items())),
        )
    raise SearchExhausted(f"no prime q = u*{w}+1 with u <= {bound}")


def random_primes(count: int, bits: int, rng: random.Random) -> list[int]:
    """``count`` distinct primes with exactly ``bits`` bits."""
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    if bits <= 20:
        pool = [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]
        if len(pool) < count:
            raise InvalidArgument(f"only {len(pool)} primes have {bits} bits, need {count}")
        return sorted(rng.sample(pool, count))
    found: set[int] = set()
    while len(found) < count:
        c = rng.randrange(lo, hi + 1) | 1
        if is_prime(c):
            found.add(c)
    return sorted(found)


def gen_group_params(ell: int, prime_bits: int, seed, max_cofactor: int | None = None) -> GroupParams:
    """Generate eta = ell distinct ``prime_bits``-bit primes and a prime q over them.

    Toy sizes are accepted; no size is claimed to be secure.
    """
    if ell < 2:
        raise InvalidArgument("ell must be >= 2")
    if prime_bits < 2:
        raise InvalidArgument("prime_bits must be >= 2")
    rng = random.Random(f"group:{seed}")
    primes = random_primes(ell, prime_bits, rng)
    return group_from_primes(primes, max_cofactor=max_cofactor)
