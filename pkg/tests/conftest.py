from itertools import combinations
from math import gcd

import numpy as np
import pytest


def minor_gcds(rows):
    """Determinantal divisors d_k = gcd of all k x k minors (independent SNF oracle)."""
    a = np.array(rows, dtype=object)
    m, n = a.shape if a.size else (len(rows), 0)
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in combinations(range(m), k):
            for c in combinations(range(n), k):
                g = gcd(g, _det(a[np.ix_(r, c)]))
        out.append(g)
    return out


def _det(a):
    n = len(a)
    if n == 1:
        return int(a[0][0])
    return sum((-1) ** j * int(a[0][j]) * _det(np.delete(np.delete(a, 0, 0), j, 1)) for j in range(n))


def invariant_factors_from_minors(rows):
    dk = minor_gcds(rows)
    out, prev = [], 1
    for v in dk:
        if v == 0:
            break
        out.append(v // prev)
        prev = v
    return out


def naive_closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
