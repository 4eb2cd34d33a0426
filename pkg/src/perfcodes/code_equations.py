"""Sphere sizes, the perfect-code condition and the passage to x^2 + b = c*y."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arithmetic import FactoredInteger, PrimeSet, factor_over, factorize, is_prime_power

MIN_WORD_LENGTH = 5
MIN_ALPHABET = 6


class OutOfScopeAlphabet(ValueError):
    """q is a prime power or smaller than 6.

    ``reason`` is a short machine-readable tag ("prime power" or "q < 6").
    """

    def __init__(self, q: int, reason: str):
        super().__init__(f"q={q} is out of scope: {reason}")
        self.q = q
        self.reason = reason


@dataclass(frozen=True)
class Alphabet:
    q: int
    support: PrimeSet
    multiplicities: tuple[int, ...]

    @classmethod
    def of(cls, q: int) -> "Alphabet":
        if q < MIN_ALPHABET:
            raise OutOfScopeAlphabet(q, "q < 6")
        if is_prime_power(q):
            raise OutOfScopeAlphabet(q, "prime power")
        f = factorize(q)
        return cls(q, PrimeSet(tuple(p for p, _ in f.factors)), tuple(e for _, e in f.factors))

    def __post_init__(self):
        if math.prod(p**v for p, v in zip(self.support, self.multiplicities)) != self.q:
            raise ValueError("support and multiplicities do not reconstruct q")
        if len(self.support) < 2 or self.q < MIN_ALPHABET:
            raise OutOfScopeAlphabet(self.q, "prime power" if self.q >= MIN_ALPHABET else "q < 6")

    @property
    def valuation(self) -> dict[int, int]:
        return dict(zip(self.support, self.multiplicities))


@dataclass(frozen=True)
class CodeCandidate:
    q: int
    n: int
    M: FactoredInteger

    def key(self) -> tuple[int, FactoredInteger]:
        return (self.n, self.M)


@dataclass(frozen=True)
class RNEquation:
    """x^2 + b = c*y with y ranging over integers supported on ``support``.

    ``absorbed`` holds prime powers moved from c into y (the factor 8 for even
    q); subtracting them from a solution's y gives the exponents of S(n).
    """

    b: int
    c: int
    support: PrimeSet
    q: Alphabet | None = None
    halved: bool = False
    absorbed: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("c must be positive")
        if math.gcd(self.c, self.support.product) != 1:
            raise ValueError(f"c={self.c} shares a prime with the support {self.support.primes}")

    def holds(self, x: int, y: int) -> bool:
        return x * x + self.b == self.c * y


def _q(alphabet: Alphabet | int) -> int:
    return alphabet.q if isinstance(alphabet, Alphabet) else int(alphabet)


def sphere_size(alphabet: Alphabet | int, n: int) -> int:
    q = _q(alphabet)
    return 1 + n * (q - 1) + n * (n - 1) // 2 * (q - 1) ** 2


def discriminant_constant(q: int) -> int:
    """The constant D_q = 8 - (q-3)^2 left after completing the square."""
    return 8 - (q - 3) ** 2


def n_to_x(q: int, n: int) -> int:
    return 2 * n * (q - 1) + 3 - q


def x_to_n(alphabet: Alphabet | int, x: int) -> int | None:
    q = _q(alphabet)
    n, rem = divmod(x + q - 3, 2 * (q - 1))
    if rem or n < MIN_WORD_LENGTH:
        return None
    return n


def perfect_condition_check(alphabet: Alphabet, n: int) -> CodeCandidate | None:
    """Candidate (n, M) with M = q^n / S(n), or None when S(n) does not divide q^n."""
    if n < MIN_WORD_LENGTH:
        return None
    s = factor_over(sphere_size(alphabet, n), alphabet.support)
    if s is None:
        return None
    sphere = s.exponents
    m_exps = {}
    for p, v in alphabet.valuation.items():
        e = n * v - sphere.get(p, 0)
        if e < 0:
            return None
        m_exps[p] = e
    if not any(m_exps.values()):
        return None
    return CodeCandidate(alphabet.q, n, FactoredInteger.from_dict(m_exps))


def to_rn_equation(alphabet: Alphabet) -> RNEquation:
    q = alphabet.q
    dq = discriminant_constant(q)
    if q % 2:
        # x and D_q are both even here; divide through by 4
        return RNEquation(dq // 4, 2, alphabet.support, alphabet, halved=True)
    return RNEquation(dq, 1, alphabet.support, alphabet, absorbed=((2, 3),))


def brute_force_oracle(alphabet: Alphabet, n_max: int) -> list[CodeCandidate]:
    """Scan every word length in [5, n_max] directly against q^n / S(n)."""
    out = []
    for n in range(MIN_WORD_LENGTH, n_max + 1):
        cand = perfect_condition_check(alphabet, n)
        if cand is not None:
            out.append(cand)
    return out
