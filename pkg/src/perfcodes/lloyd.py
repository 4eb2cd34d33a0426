"""Lloyd polynomial test for perfect 2-error-correcting codes, in exact arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arithmetic import as_perfect_square


@dataclass(frozen=True)
class LloydVerdict:
    passes: bool
    roots: tuple[Fraction, ...]
    discriminant: int

    @property
    def integer_roots(self) -> tuple[int, ...]:
        return tuple(int(r) for r in self.roots if r.denominator == 1)


def gen_binomial(m: int, i: int) -> int:
    """C(m, i) extended polynomially to any integer m (including negative)."""
    if i < 0:
        return 0
    num = 1
    for j in range(i):
        num *= m - j
    return num // math.factorial(i)


def lloyd_eval(q: int, n: int, e: int, x: int) -> Fraction:
    total = sum(
        (-1) ** i * (q - 1) ** (e - i) * gen_binomial(x - 1, i) * gen_binomial(n - x, e - i)
        for i in range(e + 1)
    )
    return Fraction(total)


def lloyd2_coefficients(q: int, n: int) -> tuple[int, int, int]:
    """(A, B, C) with 2*L_2(x) = A x^2 + B x + C."""
    r = q - 1
    a = r * r + 2 * r + 1
    b = -(r * r) * (2 * n - 1) - 2 * r * (n + 1) - 3
    c = r * r * n * (n - 1) + 2 * r * n + 2
    return a, b, c


def check_two_integer_roots(q: int, n: int) -> LloydVerdict:
    return quadratic_root_verdict(*lloyd2_coefficients(q, n), n)


def quadratic_root_verdict(a: int, b: int, c: int, n: int) -> LloydVerdict:
    """Does a x^2 + b x + c = 0 have two distinct integer roots in [1, n]?"""
    disc = b * b - 4 * a * c
    g = math.gcd(a, b, c)
    ra, rb, rc = a // g, b // g, c // g
    root = as_perfect_square(rb * rb - 4 * ra * rc)
    if root is None:
        return LloydVerdict(False, (), disc)
    roots = tuple(sorted({Fraction(-rb - root, 2 * ra), Fraction(-rb + root, 2 * ra)}))
    ints = [r for r in roots if r.denominator == 1 and 1 <= r <= n]
    # a double root (disc == 0) collapses to one element and cannot pass
    return LloydVerdict(len(ints) == 2, roots, disc)
