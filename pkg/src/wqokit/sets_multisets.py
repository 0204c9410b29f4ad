"""Finite sets under the domination (Hoare) order and finite multisets
under multiset embedding."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .kernel import (
    DownSet,
    Presentation,
    UpSet,
    down_canonize,
    down_intersect,
    down_union,
    term_key,
    up_canonize,
)
from .sequences import AtomProduct, One, Star, higman, seq_reduce, _canon_products
from .transformers import ClosureFns, quotient


@dataclass(frozen=True)
class FinSet:
    """Finite set of base elements, stored sorted and without structural
    duplicates."""

    members: tuple = ()

    def term_key(self):
        return ("finset", tuple(term_key(x) for x in self.members))


def finset(*members) -> FinSet:
    ordered = []
    seen = set()
    for x in sorted(members, key=term_key):
        k = term_key(x)
        if k not in seen:
            seen.add(k)
            ordered.append(x)
    return FinSet(tuple(ordered))


@dataclass(frozen=True)
class PfIdeal:
    """Ideal of the finitary powerset: all finite subsets of a downward
    closed set."""

    down: DownSet

    def term_key(self):
        return ("pfideal", self.down.term_key())


@dataclass(frozen=True)
class Bag:
    """Finite multiset, stored as a sorted tuple of base elements."""

    items: tuple = ()

    def term_key(self):
        return ("bag", tuple(term_key(x) for x in self.items))


def bag(*items) -> Bag:
    return Bag(tuple(sorted(items, key=term_key)))


def powerset_fin(X: Presentation) -> Presentation:
    """Finite subsets of X, one set dominating another when each of its
    members is below some member of the other."""

    def od(s, t):
        return all(any(X.od(a, b) for b in t.members) for a in s.members)

    def idl(a, b):
        return all(any(X.id(i, j) for j in b.down.ideals) for i in a.down.ideals)

    def pi(s):
        below = DownSet()
        for x in s.members:
            below = down_union(X, below, DownSet((X.pi(x),)))
        return PfIdeal(below)

    def cf(s):
        ideals = [PfIdeal(X.cf(x)) for x in s.members]
        return DownSet(down_canonize(idl, ideals))

    def ci(a):
        outside = _complement_down(X, a.down)
        return UpSet(up_canonize(od, [FinSet((x,)) for x in outside]))

    def ii(a, b):
        return DownSet((PfIdeal(down_intersect(X, a.down, b.down)),))

    def if_(s, t):
        return UpSet((finset(*(s.members + t.members)),))

    def is_elem(s):
        if not isinstance(s, FinSet):
            return False
        if list(s.members) != sorted(s.members, key=term_key):
            return False
        return X.is_elem is None or all(X.is_elem(x) for x in s.members)

    def is_ideal(a):
        return isinstance(a, PfIdeal) and (
            X.is_ideal is None or all(X.is_ideal(i) for i in a.down.ideals)
        )

    enumerator = None
    if X.enumerator is not None:
        enumerator = _finset_stream(X.enumerator)

    return Presentation(
        elem_kind=f"finite sets of {X.elem_kind}",
        ideal_kind=f"finite subsets of a downward closed set of {X.elem_kind}",
        od=od,
        id=idl,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=DownSet((PfIdeal(X.xi),)),
        xf=UpSet((FinSet(()),)),
        enumerator=enumerator,
        is_elem=is_elem,
        is_ideal=is_ideal,
    )


def _complement_down(X: Presentation, d: DownSet) -> tuple:
    if not d.ideals:
        return X.xf.generators
    acc = X.ci(d.ideals[0]).generators
    for i in d.ideals[1:]:
        acc = up_canonize(
            X.od,
            [
                z
                for x in acc
                for y in X.ci(i).generators
                for z in X.if_(x, y).generators
            ],
        )
    return acc


def _finset_stream(enum):
    def stream():
        pool = []
        src = enum()
        exhausted = False
        seen = set()
        for stage in itertools.count(1):
            if not exhausted:
                x = next(src, _finset_stream)
                if x is _finset_stream:
                    exhausted = True
                else:
                    pool.append(x)
            for size in range(min(stage, len(pool)) + 1):
                for combo in itertools.combinations(pool, size):
                    s = finset(*combo)
                    if s not in seen:
                        seen.add(s)
                        yield s
            if exhausted and not pool:
                return

    return stream


# ---------------------------------------------------------------------------
# Multisets under embedding: a quotient of sequences by permutation.


def multiset(X: Presentation) -> Presentation:
    """Finite multisets of X, embedded when some arrangement embeds."""
    star = higman(X)

    def close_filter(w: tuple) -> UpSet:
        perms = {p for p in itertools.permutations(w)}
        return UpSet(up_canonize(star.od, perms))

    def close_ideal(p: AtomProduct) -> DownSet:
        loose = DownSet()
        for a in p.atoms:
            if isinstance(a, Star):
                loose = down_union(X, loose, a.down)
        ones = tuple(a.ideal for a in p.atoms if isinstance(a, One))
        gap = (Star(loose),) if loose.ideals else ()
        products = set()
        for order in set(itertools.permutations(ones)):
            atoms = gap
            for ideal in order:
                atoms = atoms + (One(ideal),) + gap
            products.add(seq_reduce(X, AtomProduct(atoms)))
        return DownSet(_canon_products(X, products))

    quot = quotient(star, ClosureFns(ci=close_ideal, cf=close_filter))

    def od(s, t):
        return quot.od(s.items, t.items)

    def pi(s):
        return quot.pi(s.items)

    def cf(s):
        return quot.cf(s.items)

    def if_(s, t):
        return _wrap_up(quot.if_(s.items, t.items))

    def ci(a):
        return _wrap_up(quot.ci(a))

    def _wrap_up(us: UpSet) -> UpSet:
        return UpSet(up_canonize(od, [bag(*w) for w in us.generators]))

    def is_elem(s):
        if not isinstance(s, Bag):
            return False
        if list(s.items) != sorted(s.items, key=term_key):
            return False
        return X.is_elem is None or all(X.is_elem(x) for x in s.items)

    enumerator = None
    if star.enumerator is not None:
        base_stream = star.enumerator

        def stream():
            seen = set()
            for w in base_stream():
                b = bag(*w)
                if b not in seen:
                    seen.add(b)
                    yield b

        enumerator = stream

    return Presentation(
        elem_kind=f"multisets of {X.elem_kind}",
        ideal_kind=quot.ideal_kind,
        od=od,
        id=quot.id,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=quot.ii,
        xi=quot.xi,
        xf=_wrap_up(quot.xf),
        enumerator=enumerator,
        is_elem=is_elem,
        is_ideal=quot.is_ideal,
    )
