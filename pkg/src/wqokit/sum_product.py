"""Disjoint sums, lexicographic sums, and Cartesian products."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .kernel import (
    DownSet,
    Presentation,
    UpSet,
    down_canonize,
    term_key,
    up_canonize,
)


@dataclass(frozen=True)
class SumElement:
    side: int  # 1 or 2
    value: Any

    def term_key(self):
        return ("sumelem", self.side, term_key(self.value))


@dataclass(frozen=True)
class SumIdeal:
    """Tagged component ideal.

    For a disjoint sum, side i tags an ideal of the i-th component.  For
    a lexicographic sum, side 2 denotes all of the first component plus
    the tagged ideal of the second.
    """

    side: int
    ideal: Any

    def term_key(self):
        return ("sumideal", self.side, term_key(self.ideal))


@dataclass(frozen=True)
class Pair:
    left: Any
    right: Any

    def term_key(self):
        return ("pair", term_key(self.left), term_key(self.right))


@dataclass(frozen=True)
class PairIdeal:
    """Ideal of a product: the product of one ideal per component."""

    left: Any
    right: Any

    def term_key(self):
        return ("pairideal", term_key(self.left), term_key(self.right))


def _interleave(e1, e2):
    def stream():
        it1, it2 = e1(), e2()
        for x, y in itertools.zip_longest(it1, it2, fillvalue=_interleave):
            if x is not _interleave:
                yield SumElement(1, x)
            if y is not _interleave:
                yield SumElement(2, y)

    return stream


def disjoint_sum(X1: Presentation, X2: Presentation) -> Presentation:
    """Side-by-side union; elements of different sides are incomparable."""
    comp = {1: X1, 2: X2}

    def od(a, b):
        return a.side == b.side and comp[a.side].od(a.value, b.value)

    def idl(a, b):
        return a.side == b.side and comp[a.side].id(a.ideal, b.ideal)

    def pi(a):
        return SumIdeal(a.side, comp[a.side].pi(a.value))

    def tag_down(side, ds: DownSet):
        return [SumIdeal(side, i) for i in ds.ideals]

    def tag_up(side, us: UpSet):
        return [SumElement(side, g) for g in us.generators]

    def cf(a):
        other = 3 - a.side
        ideals = tag_down(a.side, comp[a.side].cf(a.value)) + tag_down(
            other, comp[other].xi
        )
        return DownSet(down_canonize(idl, ideals))

    def ci(a):
        other = 3 - a.side
        gens = tag_up(a.side, comp[a.side].ci(a.ideal)) + tag_up(
            other, comp[other].xf
        )
        return UpSet(up_canonize(od, gens))

    def ii(a, b):
        if a.side != b.side:
            return DownSet()
        return DownSet(tuple(tag_down(a.side, comp[a.side].ii(a.ideal, b.ideal))))

    def if_(a, b):
        if a.side != b.side:
            return UpSet()
        return UpSet(tuple(tag_up(a.side, comp[a.side].if_(a.value, b.value))))

    xi = DownSet(down_canonize(idl, tag_down(1, X1.xi) + tag_down(2, X2.xi)))
    xf = UpSet(up_canonize(od, tag_up(1, X1.xf) + tag_up(2, X2.xf)))

    def is_elem(a):
        return (
            isinstance(a, SumElement)
            and a.side in comp
            and (comp[a.side].is_elem is None or comp[a.side].is_elem(a.value))
        )

    def is_ideal(a):
        return (
            isinstance(a, SumIdeal)
            and a.side in comp
            and (comp[a.side].is_ideal is None or comp[a.side].is_ideal(a.ideal))
        )

    enumerator = None
    if X1.enumerator is not None and X2.enumerator is not None:
        enumerator = _interleave(X1.enumerator, X2.enumerator)

    return Presentation(
        elem_kind=f"({X1.elem_kind}) + ({X2.elem_kind})",
        ideal_kind=f"({X1.ideal_kind}) + ({X2.ideal_kind})",
        od=od,
        id=idl,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=xi,
        xf=xf,
        enumerator=enumerator,
        is_elem=is_elem,
        is_ideal=is_ideal,
    )


def lex_sum(X1: Presentation, X2: Presentation) -> Presentation:
    """Ordered union: everything on side 1 sits below everything on side 2.

    A side-2 ideal tag denotes all of the first component together with
    the tagged ideal, which keeps ideal inclusion lexicographic.
    """
    comp = {1: X1, 2: X2}

    def od(a, b):
        if a.side < b.side:
            return True
        if a.side > b.side:
            return False
        return comp[a.side].od(a.value, b.value)

    def idl(a, b):
        if a.side < b.side:
            return True
        if a.side > b.side:
            return False
        return comp[a.side].id(a.ideal, b.ideal)

    def pi(a):
        return SumIdeal(a.side, comp[a.side].pi(a.value))

    def tag_down(side, ds: DownSet):
        return [SumIdeal(side, i) for i in ds.ideals]

    def tag_up(side, us: UpSet):
        return [SumElement(side, g) for g in us.generators]

    side1_all = tag_down(1, X1.xi)
    side2_min = tag_up(2, X2.xf)

    def cf(a):
        rest = comp[a.side].cf(a.value)
        if a.side == 2 and not rest.ideals:
            # the filter swallows all of side 2, leaving exactly side 1
            return DownSet(down_canonize(idl, side1_all))
        return DownSet(down_canonize(idl, tag_down(a.side, rest)))

    def ci(a):
        if a.side == 2:
            return UpSet(tuple(tag_up(2, comp[2].ci(a.ideal))))
        gens = tag_up(1, comp[1].ci(a.ideal)) + side2_min
        return UpSet(up_canonize(od, gens))

    def ii(a, b):
        if a.side != b.side:
            return DownSet((a if a.side == 1 else b,))
        inter = comp[a.side].ii(a.ideal, b.ideal)
        if a.side == 2 and not inter.ideals:
            return DownSet(down_canonize(idl, side1_all))
        return DownSet(tuple(tag_down(a.side, inter)))

    def if_(a, b):
        if a.side != b.side:
            return UpSet((a if a.side == 2 else b,))
        inter = comp[a.side].if_(a.value, b.value)
        if a.side == 1 and not inter.generators:
            return UpSet(up_canonize(od, side2_min))
        return UpSet(tuple(tag_up(a.side, inter)))

    xi = DownSet(tuple(tag_down(2, X2.xi))) if X2.xi.ideals else DownSet(
        tuple(side1_all)
    )
    xf = UpSet(tuple(tag_up(1, X1.xf))) if X1.xf.generators else UpSet(
        tuple(side2_min)
    )

    def is_elem(a):
        return (
            isinstance(a, SumElement)
            and a.side in comp
            and (comp[a.side].is_elem is None or comp[a.side].is_elem(a.value))
        )

    def is_ideal(a):
        return (
            isinstance(a, SumIdeal)
            and a.side in comp
            and (comp[a.side].is_ideal is None or comp[a.side].is_ideal(a.ideal))
        )

    enumerator = None
    if X1.enumerator is not None and X2.enumerator is not None:
        enumerator = _interleave(X1.enumerator, X2.enumerator)

    return Presentation(
        elem_kind=f"({X1.elem_kind}) before ({X2.elem_kind})",
        ideal_kind=f"lex ideal of ({X1.ideal_kind}) | ({X2.ideal_kind})",
        od=od,
        id=idl,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=xi,
        xf=xf,
        enumerator=enumerator,
        is_elem=is_elem,
        is_ideal=is_ideal,
    )


def product(X1: Presentation, X2: Presentation) -> Presentation:
    """Cartesian product under the componentwise ordering.

    Ideals are products of component ideals, and every operation
    distributes the component answers over pairs.
    """

    def od(a, b):
        return X1.od(a.left, b.left) and X2.od(a.right, b.right)

    def idl(a, b):
        # sound because ideals are never empty
        return X1.id(a.left, b.left) and X2.id(a.right, b.right)

    def pi(a):
        return PairIdeal(X1.pi(a.left), X2.pi(a.right))

    def cross_down(ds1: DownSet, ds2: DownSet):
        return [PairIdeal(i, j) for i in ds1.ideals for j in ds2.ideals]

    def cross_up(us1: UpSet, us2: UpSet):
        return [Pair(x, y) for x in us1.generators for y in us2.generators]

    def cf(a):
        ideals = cross_down(X1.cf(a.left), X2.xi) + cross_down(X1.xi, X2.cf(a.right))
        return DownSet(down_canonize(idl, ideals))

    def ci(a):
        gens = cross_up(X1.ci(a.left), X2.xf) + cross_up(X1.xf, X2.ci(a.right))
        return UpSet(up_canonize(od, gens))

    def ii(a, b):
        ideals = cross_down(X1.ii(a.left, b.left), X2.ii(a.right, b.right))
        return DownSet(down_canonize(idl, ideals))

    def if_(a, b):
        gens = cross_up(X1.if_(a.left, b.left), X2.if_(a.right, b.right))
        return UpSet(up_canonize(od, gens))

    def is_elem(a):
        return (
            isinstance(a, Pair)
            and (X1.is_elem is None or X1.is_elem(a.left))
            and (X2.is_elem is None or X2.is_elem(a.right))
        )

    def is_ideal(a):
        return (
            isinstance(a, PairIdeal)
            and (X1.is_ideal is None or X1.is_ideal(a.left))
            and (X2.is_ideal is None or X2.is_ideal(a.right))
        )

    enumerator = None
    if X1.enumerator is not None and X2.enumerator is not None:
        enumerator = _diagonal(X1.enumerator, X2.enumerator)

    return Presentation(
        elem_kind=f"({X1.elem_kind}) x ({X2.elem_kind})",
        ideal_kind=f"({X1.ideal_kind}) x ({X2.ideal_kind})",
        od=od,
        id=idl,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=DownSet(down_canonize(idl, cross_down(X1.xi, X2.xi))),
        xf=UpSet(up_canonize(od, cross_up(X1.xf, X2.xf))),
        enumerator=enumerator,
        is_elem=is_elem,
        is_ideal=is_ideal,
    )


def _diagonal(e1, e2):
    """Fair pairing of two streams: stage n emits the pairs whose larger
    index is n, so every pair appears eventually."""

    def stream():
        xs, ys = [], []
        it1, it2 = e1(), e2()
        done1 = done2 = False
        stage = 0
        while True:
            if not done1:
                x = next(it1, _diagonal)
                if x is _diagonal:
                    done1 = True
                else:
                    xs.append(x)
            if not done2:
                y = next(it2, _diagonal)
                if y is _diagonal:
                    done2 = True
                else:
                    ys.append(y)
            if (done1 and not xs) or (done2 and not ys):
                return
            emitted = False
            for i in range(min(stage + 1, len(xs))):
                for j in range(min(stage + 1, len(ys))):
                    if max(i, j) == stage:
                        yield Pair(xs[i], ys[j])
                        emitted = True
            if done1 and done2 and not emitted:
                return
            stage += 1

    return stream
