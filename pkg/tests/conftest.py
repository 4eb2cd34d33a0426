from perfcodes.arithmetic import is_prime_power


def non_prime_powers(lo, hi):
    return [q for q in range(max(lo, 6), hi + 1) if not is_prime_power(q)]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
