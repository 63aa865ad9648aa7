"""Shared fixtures and independent brute-force oracles.

The oracles here compute expected values with plain tuple/set arithmetic,
deliberately not reusing the library's bitmap code paths, so every frozen
expected value in the tests has an independent derivation.
"""

from __future__ import annotations

import math
from itertools import product

import pytest

import rsumlab as rl


# -- independent oracles ---------------------------------------------------------


def o_add(factors, a, b):
    return tuple((x + y) % n for x, y, n in zip(a, b, factors))


def o_sub(factors, a, b):
    return tuple((x - y) % n for x, y, n in zip(a, b, factors))


def o_neg(factors, a):
    return tuple((-x) % n for x, n in zip(a, factors))


def o_scale(factors, u, a):
    return tuple((u * x) % n for x, n in zip(a, factors))


def o_elements(factors):
    return [tuple(c) for c in product(*(range(n) for n in factors))]


def oracle_sumset(factors, a_elems, b_elems, s_elems=(), gamma=1):
    """{a+b : a-gamma*b not in S} by raw pair enumeration over tuples."""
    s = set(s_elems)
    out = set()
    for a in a_elems:
        for b in b_elems:
            if o_sub(factors, a, o_scale(factors, gamma, b)) in s:
                continue
            out.add(o_add(factors, a, b))
    return out


def oracle_least_prime(n):
    for d in range(2, n + 1):
        if n % d == 0:
            return d
    raise AssertionError


def oracle_subgroups(factors):
    """All subsets containing 0 and closed under addition, by brute force."""
    els = o_elements(factors)
    zero = tuple(0 for _ in factors)
    out = []
    for bits in range(1, 1 << len(els)):
        members = [e for i, e in enumerate(els) if bits >> i & 1]
        if zero not in members:
            continue
        mset = set(members)
        if all(o_add(factors, x, y) in mset for x in members for y in members):
            out.append(frozenset(mset))
    return set(out)


def as_set(group, elems):
    return rl.ElementSet.from_elements(group, elems)


def set_of(eset):
    return set(eset.elements())


# -- fixtures --------------------------------------------------------------------


@pytest.fixture(scope="session")
def group_matrix():
    """Small mixed matrix used by randomized and property tests."""
    names = ["Z2", "Z5", "Z7", "Z8", "Z2xZ4", "Z9", "Z3xZ3", "Z12", "Z2xZ2xZ3", "Z13", "Z16"]
    return [rl.parse_group(n) for n in names]
