"""Exit criteria for the package. Each test records one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the lines are printed in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

import random
import time

import pytest

from perfcodes.arithmetic import FactoredInteger, is_prime_power
from perfcodes.cli import main
from perfcodes.code_equations import (
    Alphabet,
    brute_force_oracle,
    discriminant_constant,
    n_to_x,
    sphere_size,
    to_rn_equation,
)
from perfcodes.lloyd import check_two_integer_roots
from perfcodes.pipeline import RunConfig, Verdict, classify, reproduce_table2, run_range, y_bound_for
from perfcodes.rn_solver import build_mordell, forward_map, lift_integral_point, solve_bounded

RESULTS: list[str] = []

TABLE2 = {
    15: (11, {3: 4, 5: 10}),
    21: (52, {3: 40, 7: 52}),
    46: (93, {2: 79, 23: 91}),
}
NONEXISTENCE = {
    Verdict.NO_CANDIDATES_UP_TO_BOUND,
    Verdict.ALL_CANDIDATES_ELIMINATED_BY_LLOYD,
    Verdict.UNCONDITIONAL_NONEXISTENCE,
}


def record(num, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, detail


def npp(lo, hi):
    return [q for q in range(max(lo, 6), hi + 1) if not is_prime_power(q)]


def test_criterion_1_table2(capsys):
    start = time.perf_counter()
    check = reproduce_table2(RunConfig(n_max=10**4))
    code = main(["table2-check", "--n-max", "10000"])
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    found = {}
    for q in TABLE2:
        rep = classify(q, RunConfig(n_max=10**4))
        found[q] = [(c.n, c.M) for c in rep.candidates]
    expected = {q: [(n, FactoredInteger.from_dict(e))] for q, (n, e) in TABLE2.items()}
    ok = check.passed and code == 0 and found == expected and elapsed < 10
    record(1, ok, f"Table 2 rows matched exactly with no extras, {elapsed:.2f}s (< 10s)")


def test_criterion_2_lloyd():
    failures = [q for q, (n, _) in TABLE2.items() if check_two_integer_roots(q, n).passes]
    golay = check_two_integer_roots(3, 11)
    rep5 = check_two_integer_roots(2, 5)
    ok = not failures and golay.passes and golay.integer_roots == (6, 9) and rep5.passes
    record(2, ok, "Lloyd rejects (15,11), (21,52), (46,93); accepts (3,11) roots {6,9} and (2,5)")


def test_criterion_3_q94_curve():
    eq = to_rn_equation(Alphabet.of(94))
    k = build_mordell(eq, 4418).k
    record(3, eq.b == -8273 and k == 161478403652, f"q=94, d=4418: k = {k}")


def test_criterion_4_range_sweep(capsys):
    start = time.perf_counter()
    code = main(["range", "--from", "6", "--to", "200"])
    capsys.readouterr()
    res = run_range(6, 200, RunConfig())
    elapsed = time.perf_counter() - start
    ok = (
        code == 0
        and not res.survivors
        and res.aggregate["aborted_at"] is None
        and res.aggregate["q_with_candidates"] == [15, 21, 46]
        and all(r.verdict in NONEXISTENCE for r in res.reports if not r.skipped)
        and elapsed < 600
    )
    record(4, ok, f"range 6..200: no survivors, candidates only for {res.aggregate['q_with_candidates']}, {elapsed:.1f}s")


def test_criterion_5_oracle_equivalence():
    mismatches = []
    qs = npp(6, 100)
    for q in qs:
        rn = [(c.n, c.M) for c in classify(q, RunConfig(n_max=10**4), points={}).candidates]
        oracle = [c.key() for c in brute_force_oracle(Alphabet.of(q), 10**4)]
        if set(rn) != set(oracle):
            mismatches.append(q)
    record(5, not mismatches, f"RN path == brute force for {len(qs)} q <= 100 at n_max=10^4 (mismatches: {mismatches})")


def test_criterion_6_round_trip():
    total = recovered = 0
    for q in npp(6, 100):
        alphabet = Alphabet.of(q)
        eq = to_rn_equation(alphabet)
        for sol in solve_bounded(eq, y_bound_for(alphabet, 10**6)):
            total += 1
            d, pt = forward_map(eq, sol)
            if not build_mordell(eq, d).contains(pt):
                continue
            back = lift_integral_point(eq, d, pt)
            if back is not None and (back.x, back.y) == (sol.x, sol.y):
                recovered += 1
    record(6, total > 0 and recovered == total, f"round trip {recovered}/{total} solutions")


def _random_pairs(count=10**4, seed=20240501):
    rng = random.Random(seed)
    qs = npp(6, 2000)
    return [(rng.choice(qs), rng.randint(5, 10**6)) for _ in range(count)]


def test_criterion_7_completing_the_square():
    bad = [
        (q, n)
        for q, n in _random_pairs()
        if n_to_x(q, n) ** 2 + discriminant_constant(q) != 8 * sphere_size(q, n)
    ]
    record(7, not bad, f"x^2 + D_q = 8 S(n) on 10^4 random (q, n); failures: {bad[:3]}")


@pytest.mark.xfail(strict=True, reason="sign as written is false: q=6, n=5 gives 2207 vs 2209")
def test_criterion_7_literal_sign_as_written():
    assert all(8 * sphere_size(q, n) + discriminant_constant(q) == n_to_x(q, n) ** 2 for q, n in _random_pairs(100))


def test_criterion_8_known_results():
    qs = [6, 10, 15, 21, 22, 26, 30, 35, 12, 18, 24, 48, 72, 96, 108, 144, 162, 192]
    verdicts = {q: classify(q, RunConfig(n_max=10**6), points={}).verdict for q in qs}
    bad = {q: v for q, v in verdicts.items() if v not in NONEXISTENCE}
    record(8, not bad, f"non-existence at n_max=10^6 for {len(qs)} known q (bad: {bad})")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
