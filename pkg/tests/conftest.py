"""Shared fixtures and independent brute-force helpers.

The helpers here never call the library procedures they are used to
judge; embeddings, closures and extensions are recomputed from first
principles so the tests stay an independent oracle.
"""

from __future__ import annotations

import itertools

import pytest

from wqokit import (
    DownSet,
    NatIdeal,
    SubspaceFns,
    UpSet,
    alphabet,
    naturals,
    product,
)
from wqokit.sum_product import Pair


@pytest.fixture(scope="session")
def nat():
    return naturals()


@pytest.fixture(scope="session")
def nat2(nat):
    return product(naturals(), naturals())


@pytest.fixture(scope="session")
def abc():
    return alphabet("a", "b", "c")


@pytest.fixture(scope="session")
def ab():
    return alphabet("a", "b")


def embeds(u, v) -> bool:
    """Plain subword embedding over symbols compared by equality."""
    i = 0
    for y in v:
        if i < len(u) and u[i] == y:
            i += 1
    return i == len(u)


def words_up_to(symbols, length) -> list:
    return [
        tuple(w)
        for n in range(length + 1)
        for w in itertools.product(symbols, repeat=n)
    ]


def pair(a, b) -> Pair:
    return Pair(a, b)


def pairs_up_to(n) -> list:
    return [Pair(a, b) for a in range(n) for b in range(n)]


# ---------------------------------------------------------------------------
# Subspace access functions for induced-WQO tests, defined extensionally.


def nat_downset_fns(bound: int) -> SubspaceFns:
    """Y = all naturals up to `bound` (a downward closed subset)."""

    def s_i(ideal):
        b = bound if ideal.bound is None else min(ideal.bound, bound)
        return DownSet((NatIdeal(b),))

    def s_f(x):
        return UpSet(() if x > bound else (x,))

    return SubspaceFns(
        member_y=lambda x: 0 <= x <= bound,
        s_i=s_i,
        s_f=s_f,
        enum_y=lambda: iter(range(bound + 1)),
    )


def nat_subset_fns(members) -> SubspaceFns:
    """Y given extensionally as a finite set of naturals."""
    ys = sorted(members)

    def s_i(ideal):
        inside = [y for y in ys if ideal.bound is None or y <= ideal.bound]
        return DownSet((NatIdeal(max(inside)),) if inside else ())

    def s_f(x):
        above = [y for y in ys if y >= x]
        return UpSet((min(above),) if above else ())

    return SubspaceFns(
        member_y=lambda x: x in ys,
        s_i=s_i,
        s_f=s_f,
        enum_y=lambda: iter(ys),
    )
