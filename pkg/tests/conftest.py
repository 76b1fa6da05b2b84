from itertools import permutations

import pytest


def brute_des(p):
    return sum(1 for a, b in zip(p, p[1:]) if a > b)


def brute_counts(n):
    """{(d, first, last): count} by plain itertools, independent of the package oracle."""
    out = {}
    for p in permutations(range(1, n + 1)):
        key = (brute_des(p), p[0], p[-1])
        out[key] = out.get(key, 0) + 1
    return out


@pytest.fixture(scope="session")
def brute():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = brute_counts(n)
        return cache[n]
    return get


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or \
        __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES, key=lambda s: int(s.split("[")[1].split("]")[0])):
        terminalreporter.write_line(line)
