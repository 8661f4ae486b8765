"""Shared helpers for the test suite."""
from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from sympy import factorint
from sympy.utilities.iterables import partitions

from deligne_calc.fusion import direct_sum, group_ring, tambara_yamagami
from deligne_calc.groups import group_new


def abelian_group_types(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists of every abelian group of the given order, one per iso type."""
    per_prime = []
    for p, e in factorint(order).items():
        parts = []
        for part in partitions(e):
            exps = sorted(itertools.chain.from_iterable([k] * m for k, m in part.items()),
                          reverse=True)
            parts.append([p**k for k in exps])
        per_prime.append(parts)
    out = []
    for choice in itertools.product(*per_prime):
        width = max((len(c) for c in choice), default=0)
        factors = [1] * width
        for c in choice:
            for i, q in enumerate(c):
                factors[i] *= q
        out.append(tuple(sorted(f for f in factors if f > 1)))
    return sorted(out)


def abelian_groups_up_to(n: int):
    return [orders for k in range(1, n + 1) for orders in abelian_group_types(k)]


def ring_pool():
    """Group rings for |G| <= 8, Tambara-Yamagami rings for |G| <= 4, and small direct sums."""
    groups = [group_ring(group_new(o)) for o in abelian_groups_up_to(8)]
    tys = [tambara_yamagami(group_new(o)) for o in abelian_groups_up_to(4)]
    base = groups + tys
    sums = [direct_sum(a, b) for a, b in itertools.combinations_with_replacement(base, 2)
            if a.rank + b.rank <= 8]
    return base + sums


def find_isomorphism(R, S):
    """A permutation p with S.N[a,b,c] == R.N[p[a],p[b],p[c]], or None.  Exhaustive."""
    if R.rank != S.rank:
        return None
    for p in itertools.permutations(range(R.rank)):
        if np.array_equal(R.N[np.ix_(p, p, p)], S.N):
            return list(p)
    return None


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
