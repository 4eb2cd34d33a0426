"""Solving x^2 + b = c*y over S-units.

Two routes are provided. :func:`solve_bounded` walks the S-units up to a bound
in increasing order and keeps those for which c*y - b is a square. The Mordell
route maps each solution to an integral point on Y^2 = X^3 - d^2 b for one of
finitely many d, and :func:`lift_integral_point` maps such points back; the
points themselves have to come from outside (see :mod:`perfcodes.curvefile`).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from itertools import product

from .arithmetic import (
    DEFAULT_FACT_CEILING,
    FactoredInteger,
    FactorizationError,
    as_perfect_square,
    cubefree_decompose,
    factor_over,
    factorize,
    s_unit_values,
)
from .code_equations import (
    Alphabet,
    CodeCandidate,
    RNEquation,
    perfect_condition_check,
    to_rn_equation,
    x_to_n,
)

log = logging.getLogger(__name__)

DEFAULT_SIEVE_MODULI = (16, 9, 5, 7, 11, 13)
A_S_THRESHOLD = 500_000


class Source(str, enum.Enum):
    BOUNDED_SEARCH = "bounded_search"
    LIFTED_POINT = "lifted_point"


class PointNotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class RNSolution:
    x: int
    y: FactoredInteger
    source: Source = Source.BOUNDED_SEARCH

    def key(self) -> tuple[int, int]:
        return (self.x, self.y.value)

    def sphere_exponents(self, eq: RNEquation) -> dict[int, int]:
        """Exponents of y with the absorbed constant removed (may go negative)."""
        exps = self.y.exponents
        for p, e in eq.absorbed:
            exps[p] = exps.get(p, 0) - e
        return {p: e for p, e in exps.items() if e}


@dataclass(frozen=True)
class IntegralPoint:
    X: int
    Y: int


@dataclass(frozen=True)
class MordellCurve:
    d: int
    k: int
    a_S: int | None

    @property
    def small_conductor_bound(self) -> bool | None:
        """a_S below the 500000 cut-off; None when a_S could not be computed."""
        return None if self.a_S is None else self.a_S < A_S_THRESHOLD

    def contains(self, pt: IntegralPoint) -> bool:
        return pt.Y * pt.Y == pt.X**3 + self.k


def admissible_residues(eq: RNEquation, modulus: int) -> frozenset[int]:
    """Residues r of y mod ``modulus`` for which c*r - b is a square mod ``modulus``.

    A y outside this set cannot give a square c*y - b, so the set is only ever
    used to skip S-units.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    squares = {t * t % modulus for t in range(modulus)}
    return frozenset(r for r in range(modulus) if (eq.c * r - eq.b) % modulus in squares)


def solve_bounded(
    eq: RNEquation, y_bound: int, sieve_moduli=DEFAULT_SIEVE_MODULI
) -> list[RNSolution]:
    """All solutions with 1 <= y <= y_bound, x >= 0, sorted by y."""
    sieve = [(m, admissible_residues(eq, m)) for m in sieve_moduli or ()]
    sieve = [(m, res) for m, res in sieve if len(res) < m]
    primes = eq.support.primes
    out = []
    for y, exps in s_unit_values(primes, y_bound):
        if any(y % m not in res for m, res in sieve):
            continue
        x = as_perfect_square(eq.c * y - eq.b)
        if x is not None:
            out.append(RNSolution(x, FactoredInteger(tuple(zip(primes, exps)))))
    return out


def enumerate_d(eq: RNEquation) -> list[int]:
    c0, _ = cubefree_decompose(eq.c)
    primes = eq.support.primes
    values = {
        c0 * math.prod(p**a for p, a in zip(primes, combo))
        for combo in product(range(3), repeat=len(primes))
    }
    return sorted(values)


def a_S_invariant(b: int, d: int, ceiling: int = DEFAULT_FACT_CEILING) -> tuple[int, bool]:
    """1728 * prod p^min(ord_p(b d^2), 2), and whether it is below 500000."""
    if b == 0 or d == 0:
        raise ValueError("b*d^2 must be nonzero")
    exps = factorize(b, ceiling=ceiling).exponents
    for p, e in factorize(d, ceiling=ceiling).factors:
        exps[p] = exps.get(p, 0) + 2 * e
    a_s = 1728 * math.prod(p ** min(e, 2) for p, e in exps.items())
    return a_s, a_s < A_S_THRESHOLD


def build_mordell(eq: RNEquation, d: int, ceiling: int = DEFAULT_FACT_CEILING) -> MordellCurve:
    try:
        a_s, _ = a_S_invariant(eq.b, d, ceiling)
    except FactorizationError as exc:
        log.warning("a_S unavailable for d=%d: %s", d, exc)
        a_s = None
    return MordellCurve(d, -d * d * eq.b, a_s)


def curve_inventory(eq: RNEquation, ceiling: int = DEFAULT_FACT_CEILING) -> list[MordellCurve]:
    return [build_mordell(eq, d, ceiling) for d in enumerate_d(eq)]


def forward_map(eq: RNEquation, sol: RNSolution) -> tuple[int, IntegralPoint]:
    """Send a solution (x, y) to its curve index d and the point (d z, d x)."""
    c0, c1 = cubefree_decompose(eq.c)
    y0 = y1 = 1
    for p, e in sol.y.factors:
        y0 *= p ** (e % 3)
        y1 *= p ** (e // 3)
    d = c0 * y0
    z = c1 * y1
    return d, IntegralPoint(d * z, d * sol.x)


def lift_integral_point(eq: RNEquation, d: int, pt: IntegralPoint) -> RNSolution | None:
    curve = MordellCurve(d, -d * d * eq.b, None)
    if not curve.contains(pt):
        raise PointNotOnCurve(f"({pt.X}, {pt.Y}) is not on Y^2 = X^3 + {curve.k}")
    c0, c1 = cubefree_decompose(eq.c)
    # y > 0 forces z > 0, hence X = d z > 0
    if pt.X <= 0 or pt.Y % d or pt.X % (c1 * d) or d % c0:
        return None
    y = (d // c0) * (pt.X // (c1 * d)) ** 3
    fy = factor_over(y, eq.support)
    x = abs(pt.Y) // d
    if fy is None or not eq.holds(x, y):
        return None
    return RNSolution(x, fy, Source.LIFTED_POINT)


def solutions_to_candidates(alphabet: Alphabet, sols) -> list[CodeCandidate]:
    eq = to_rn_equation(alphabet)
    found: dict[int, CodeCandidate] = {}
    for sol in sols:
        x = 2 * sol.x if eq.halved else sol.x
        n = x_to_n(alphabet, x)
        if n is None or n in found:
            continue
        cand = perfect_condition_check(alphabet, n)
        if cand is not None:
            found[n] = cand
    return [found[n] for n in sorted(found)]
