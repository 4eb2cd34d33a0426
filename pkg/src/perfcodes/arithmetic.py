"""Exact integer primitives: square roots, valuations, cubefree parts, S-units."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from sympy import isprime, perfect_power, primerange

DEFAULT_FACT_CEILING = 10**6

# quadratic residues used to reject non-squares before calling isqrt
_SQUARE_FILTERS = {m: frozenset(r * r % m for r in range(m)) for m in (64, 63, 65, 11)}


class FactorizationError(ArithmeticError):
    """Raised when a number cannot be fully factored under the trial-division ceiling."""


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...]

    def __post_init__(self):
        primes = tuple(int(p) for p in self.primes)
        if not primes:
            raise ValueError("prime set must be nonempty")
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError(f"primes must be strictly increasing: {primes}")
        for p in primes:
            if p < 2 or not isprime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", primes)

    @classmethod
    def of(cls, primes: Iterable[int]) -> "PrimeSet":
        return cls(tuple(sorted(set(primes))))

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        return p in self.primes

    @property
    def product(self) -> int:
        return math.prod(self.primes)


@dataclass(frozen=True)
class FactoredInteger:
    """sign * prod(p**e) with the (p, e) pairs kept sorted and e > 0."""

    factors: tuple[tuple[int, int], ...] = ()
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        cleaned = tuple(sorted((int(p), int(e)) for p, e in self.factors if e))
        if any(e < 0 for _, e in cleaned):
            raise ValueError("exponents must be nonnegative")
        if len({p for p, _ in cleaned}) != len(cleaned):
            raise ValueError("duplicate prime in factorization")
        object.__setattr__(self, "factors", cleaned)

    @classmethod
    def from_dict(cls, exponents: dict[int, int], sign: int = 1) -> "FactoredInteger":
        return cls(tuple(exponents.items()), sign)

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def value(self) -> int:
        return self.sign * math.prod(p**e for p, e in self.factors)

    def __int__(self):
        return self.value

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        exps = self.exponents
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        return FactoredInteger.from_dict(exps, self.sign * other.sign)

    def __str__(self):
        if not self.factors:
            body = "1"
        else:
            body = "·".join(f"{p}" if e == 1 else f"{p}^{e}" for p, e in self.factors)
        return body if self.sign > 0 else f"-{body}"


def isqrt(n: int) -> int:
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def as_perfect_square(n: int) -> int | None:
    if n < 0:
        return None
    for m, residues in _SQUARE_FILTERS.items():
        if n % m not in residues:
            return None
    r = math.isqrt(n)
    return r if r * r == n else None


def padic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _split_off(n: int, primes: Iterable[int], exps: dict[int, int]) -> int:
    for p in primes:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = exps.get(p, 0) + e
    return n


def factor_over(n: int, support: PrimeSet | Iterable[int]) -> FactoredInteger | None:
    """Exponent vector of ``n`` over ``support``, or None if another prime divides it."""
    if n < 1:
        raise ValueError("factor_over expects a positive integer")
    exps: dict[int, int] = {}
    rest = _split_off(n, support, exps)
    if rest != 1:
        return None
    return FactoredInteger.from_dict(exps)


def factorize(
    n: int, support: Iterable[int] = (), ceiling: int = DEFAULT_FACT_CEILING
) -> FactoredInteger:
    """Full factorization by trial division, support primes first.

    After all primes up to ``ceiling`` are removed, a leftover cofactor is
    accepted only if it is prime; otherwise FactorizationError is raised.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if n < 0 else 1
    exps: dict[int, int] = {}
    rest = _split_off(abs(n), support, exps)
    if rest > 1:
        for p in primerange(2, ceiling + 1):
            if p * p > rest:
                break
            if rest % p == 0:
                rest = _split_off(rest, (p,), exps)
        if rest > 1:
            if not isprime(rest):
                raise FactorizationError(
                    f"cofactor {rest} of {n} is composite with no prime factor <= {ceiling}"
                )
            exps[rest] = exps.get(rest, 0) + 1
    return FactoredInteger.from_dict(exps, sign)


def cubefree_decompose(
    m: int, support: Iterable[int] = (), ceiling: int = DEFAULT_FACT_CEILING
) -> tuple[int, int]:
    """Return (m0, m1) with m = m0 * m1**3 and m0 cubefree."""
    if m <= 0:
        raise ValueError("cubefree_decompose expects a positive integer")
    m0 = m1 = 1
    for p, e in factorize(m, support, ceiling).factors:
        m0 *= p ** (e % 3)
        m1 *= p ** (e // 3)
    return m0, m1


def is_prime_power(q: int) -> bool:
    if q < 2:
        raise ValueError("is_prime_power expects q >= 2")
    if isprime(q):
        return True
    power = perfect_power(q)
    return bool(power) and isprime(power[0])


def s_unit_stream(support: PrimeSet | Iterable[int], bound: int) -> Iterator[FactoredInteger]:
    """Yield every integer <= bound supported on ``support``, in increasing order."""
    primes = tuple(support)
    for _, exps in s_unit_values(primes, bound):
        yield FactoredInteger(tuple(zip(primes, exps)))


def s_unit_values(primes: tuple[int, ...], bound: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Ordered (value, exponent tuple) pairs behind :func:`s_unit_stream`.

    Each product is generated once: a value is only extended by primes at or
    after the largest prime it already contains, so the heap holds the
    frontier rather than the full output.
    """
    if bound < 1:
        return
    heap: list[tuple[int, int, tuple[int, ...]]] = [(1, 0, (0,) * len(primes))]
    while heap:
        value, start, exps = heapq.heappop(heap)
        yield value, exps
        for i in range(start, len(primes)):
            nxt = value * primes[i]
            if nxt <= bound:
                bumped = exps[:i] + (exps[i] + 1,) + exps[i + 1 :]
                heapq.heappush(heap, (nxt, i, bumped))
