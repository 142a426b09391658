"""Exact integer number theory used throughout the package.

gcd/lcm over coefficient vectors, the Möbius function (pointwise and
sieved), squarefree tests, trial-division factorization, and three
independent routes to zeta(n): partial sums, the Euler product, and the
Bernoulli closed form for even n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError, ResourceError, UsageError

# Largest sieve (number of int8 entries) built without complaint.
MAX_SIEVE_LIMIT = 2 * 10**8

# Upper end of the range served by the cached prime list in factorize().
_TRIAL_DIVISION_RANGE = 10**7


def gcd_many(coeffs: Sequence[int]) -> int:
    """Nonnegative gcd of a nonempty list; the all-zero list gives 0."""
    coeffs = list(coeffs)
    if not coeffs:
        raise UsageError("gcd_many needs at least one integer")
    return math.gcd(*(int(c) for c in coeffs))


def lcm_many(coeffs: Sequence[int]) -> int:
    """Least common multiple of positive integers.

    Python integers are unbounded, so the result never wraps around.
    """
    coeffs = [int(c) for c in coeffs]
    if not coeffs:
        raise UsageError("lcm_many needs at least one integer")
    if any(c <= 0 for c in coeffs):
        raise UsageError(f"lcm_many needs positive integers, got {coeffs}")
    return math.lcm(*coeffs)


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (sieve of Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[p]:
            is_prime[p * p :: 2 * p] = False
    return np.flatnonzero(is_prime)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(math.isqrt(_TRIAL_DIVISION_RANGE) + 1))


@dataclass(frozen=True)
class Factorization:
    input: int
    prime_powers: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_powers)

    def value(self) -> int:
        return math.prod(p**e for p, e in self.prime_powers)


def factorize(m: int) -> Factorization:
    """Trial division; exact for any m, fast for m <= 10**7."""
    m = int(m)
    if m <= 0:
        raise UsageError(f"factorize needs a positive integer, got {m}")
    powers = []
    rest = m

    def strip(p: int) -> None:
        nonlocal rest
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            powers.append((p, e))

    for p in _small_primes():
        if p * p > rest:
            break
        strip(p)
    else:
        # ran out of cached primes: continue with odd candidates
        p = _small_primes()[-1] + 2
        while p * p <= rest:
            strip(p)
            p += 2
    if rest > 1:
        powers.append((rest, 1))
    return Factorization(m, tuple(powers))


def mobius(m: int) -> int:
    m = int(m)
    if m <= 0:
        raise UsageError(f"mobius needs m >= 1, got {m}")
    fac = factorize(m)
    if any(e > 1 for _, e in fac.prime_powers):
        return 0
    return -1 if len(fac.prime_powers) % 2 else 1


def is_squarefree(m: int) -> bool:
    return mobius(m) != 0


@dataclass(frozen=True, eq=False)
class MobiusTable:
    """Sieved Möbius values mu(1..limit).

    ``table[m]`` gives mu(m) for 1 <= m <= limit. The backing array is
    read-only, so a table can be shared freely.
    """

    limit: int
    _mu: np.ndarray  # index 0 unused (holds 0)

    @property
    def values(self) -> np.ndarray:
        """mu(1), ..., mu(limit) as a read-only int8 view."""
        return self._mu[1:]

    def __getitem__(self, m):
        if isinstance(m, (int, np.integer)) and not 1 <= m <= self.limit:
            raise IndexError(f"{m} outside 1..{self.limit}")
        return self._mu[m]

    def __len__(self) -> int:
        return self.limit

    def multiples(self, a: int, count: int) -> np.ndarray:
        """mu(a), mu(2a), ..., mu(count*a)."""
        if a * count > self.limit:
            raise UsageError(f"table limit {self.limit} < {a}*{count}")
        return self._mu[a : a * count + 1 : a]

    def mertens(self) -> int:
        return int(self._mu.sum(dtype=np.int64))


def sieve_mobius(limit: int, max_limit: int | None = None) -> MobiusTable:
    limit = int(limit)
    if limit < 1:
        raise UsageError(f"sieve limit must be >= 1, got {limit}")
    cap = MAX_SIEVE_LIMIT if max_limit is None else max_limit
    if limit > cap:
        raise ResourceError(f"sieve limit {limit} exceeds budget {cap}")

    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(limit).tolist():
        mu[p::p] *= -1
        sq = p * p
        if sq <= limit:
            mu[sq::sq] = 0
    mu.flags.writeable = False
    return MobiusTable(limit, mu)


def zeta_partial(n: int, terms: int) -> float:
    """sum_{l=1}^{terms} l**-n, accumulated from the smallest terms up."""
    if n < 2:
        raise DomainError(f"zeta series diverges for n={n} < 2")
    if terms < 1:
        raise UsageError(f"terms must be >= 1, got {terms}")
    chunk = 10**6
    partials = []
    hi = terms
    while hi >= 1:
        lo = max(1, hi - chunk + 1)
        ell = np.arange(hi, lo - 1, -1, dtype=np.float64)
        partials.append(float(np.sum(ell ** (-float(n)))))
        hi = lo - 1
    return math.fsum(partials)


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{j} C(j+1, k) B_k = 0 for j >= 1, B_0 = 1
    bs = [Fraction(1)]
    for j in range(1, m + 1):
        acc = sum((math.comb(j + 1, k) * bs[k] for k in range(j)), Fraction(0))
        bs.append(-acc / (j + 1))
    return tuple(bs)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (convention B_1 = -1/2)."""
    if m < 0:
        raise UsageError(f"bernoulli index must be >= 0, got {m}")
    return _bernoulli_table(m)[m]


def zeta_even_closed(n: int) -> float:
    """zeta(n) = (2 pi)^n |B_n| / (2 n!) for even n >= 2."""
    if n < 2 or n % 2:
        raise DomainError(f"closed form needs even n >= 2, got {n}")
    coeff = abs(bernoulli(n)) / (2 * math.factorial(n))
    return float(coeff) * (2 * math.pi) ** n


def zeta_euler_product(n: int, prime_bound: int) -> float:
    """1 / prod_{p <= prime_bound} (1 - p**-n)."""
    if n < 2:
        raise DomainError(f"Euler product diverges for n={n} < 2")
    ps = primes_up_to(int(prime_bound)).astype(np.float64)
    log_prod = math.fsum(np.log1p(-(ps ** (-float(n)))).tolist())
    return math.exp(-log_prod)


@lru_cache(maxsize=None)
def inverse_zeta(n: int, terms: int = 10**6) -> float:
    """1/zeta(n): Bernoulli route for even n, partial sums otherwise."""
    if n % 2 == 0:
        return 1.0 / zeta_even_closed(n)
    return 1.0 / zeta_partial(n, terms)


def divisors(m: int) -> list[int]:
    fac = factorize(m)
    divs = [1]
    for p, e in fac.prime_powers:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)

