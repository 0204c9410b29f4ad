"""Generic constructions parameterized by extra data: order extensions,
quotients by a compatible equivalence, and induced sub-WQOs.

Elements and ideals of the derived WQO are represented by base values;
an ideal value stands for its closure (extensions, quotients) or for the
subset it induces (induced WQOs).  The supplied closure or restriction
functions are trusted: the preconditions they must satisfy are not
checkable in general, so misuse shows up in oracle runs, not here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator

from .kernel import (
    ConstructionError,
    DownSet,
    KindMismatch,
    Presentation,
    UpSet,
    down_canonize,
    down_intersect,
    down_subset,
    down_union,
    up_canonize,
    up_intersect,
    up_member,
    down_complement,
    up_complement,
)

_SEARCH_CAP = 1_000_000


@dataclass(frozen=True)
class ClosureFns:
    """Closure maps defining an extension or a compatible equivalence.

    `ci` sends a base ideal to the base representation of its closure
    (a downward closed set), `cf` sends an element to the closure of its
    filter (an upward closed set).  Both must be extensive.
    """

    ci: Callable[[Any], DownSet]
    cf: Callable[[Any], UpSet]


@dataclass(frozen=True)
class SubspaceFns:
    """Access to a subset Y of the base WQO.

    `s_i` sends a base ideal I to the downward closure of I intersected
    with Y; `s_f` sends an element x to the upward closure of its filter
    intersected with Y.  `enum_y` fairly enumerates Y.
    """

    member_y: Callable[[Any], bool]
    s_i: Callable[[Any], DownSet]
    s_f: Callable[[Any], UpSet]
    enum_y: Callable[[], Iterator]


def _closure_presentation(X: Presentation, fns: ClosureFns, one_call_meets: bool,
                          kind_note: str) -> Presentation:
    # closure outputs are pure and get hit constantly; memoize them
    ci_cache, cf_cache = {}, {}

    def ci(i):
        hit = ci_cache.get(i)
        if hit is None:
            hit = ci_cache[i] = fns.ci(i)
        return hit

    def cf(x):
        hit = cf_cache.get(x)
        if hit is None:
            hit = cf_cache[x] = fns.cf(x)
        return hit

    def od(x, y):
        return up_member(X.od, y, cf(x).generators)

    id_cache = {}

    def idl(i, j):
        key = (i, j)
        hit = id_cache.get(key)
        if hit is None:
            hit = id_cache[key] = down_subset(X, DownSet((i,)), ci(j))
        return hit

    def recanon_down(ds: DownSet) -> DownSet:
        return DownSet(down_canonize(idl, ds.ideals))

    def recanon_up(us: UpSet) -> UpSet:
        return UpSet(up_canonize(od, us.generators))

    def cf2(x):
        return recanon_down(up_complement(X, cf(x)))

    def ci2(i):
        return recanon_up(down_complement(X, ci(i)))

    def ii2(i, j):
        if one_call_meets:
            met = down_intersect(X, DownSet((i,)), ci(j))
        else:
            met = down_intersect(X, ci(i), ci(j))
        return recanon_down(met)

    def if2(x, y):
        if one_call_meets:
            met = up_intersect(X, UpSet((x,)), cf(y))
        else:
            met = up_intersect(X, cf(x), cf(y))
        return recanon_up(met)

    return Presentation(
        elem_kind=X.elem_kind,
        ideal_kind=f"{X.ideal_kind} ({kind_note})",
        od=od,
        id=idl,
        pi=X.pi,
        cf=cf2,
        if_=if2,
        ci=ci2,
        ii=ii2,
        xi=recanon_down(X.xi),
        xf=recanon_up(X.xf),
        enumerator=X.enumerator,
        is_elem=X.is_elem,
        is_ideal=X.is_ideal,
    )


def extend(X: Presentation, fns: ClosureFns) -> Presentation:
    """The same carrier under a coarser order, described by its closure
    maps.  Ideal values are base ideals standing for their closures."""
    return _closure_presentation(X, fns, one_call_meets=False,
                                 kind_note="as closure representative")


def quotient(X: Presentation, fns: ClosureFns) -> Presentation:
    """Order modulo a compatible equivalence, given by class closures.

    Same machinery as `extend`, but intersections need only one closure
    application: the meet of two closures is the closure of the meet of
    one side with the closed other side.
    """
    return _closure_presentation(X, fns, one_call_meets=True,
                                 kind_note="as class representative")


# ---------------------------------------------------------------------------
# Induced WQO on a subset.


def adherent(X: Presentation, fns: SubspaceFns, ideal) -> bool:
    """Whether a base ideal restricts to an ideal of the subset."""
    back = fns.s_i(ideal)
    one = DownSet((ideal,))
    return down_subset(X, back, one) and down_subset(X, one, back)


def induce(X: Presentation, fns: SubspaceFns) -> Presentation:
    """The WQO induced on the subset described by `fns`.

    Ideals of the subset are represented by the adherent base ideals;
    `is_ideal` performs the adherence check, which is how invalid ideal
    values are rejected at construction time.
    """

    def restrict_down(ds: DownSet) -> DownSet:
        parts = DownSet()
        for i in ds.ideals:
            parts = down_union(X, parts, fns.s_i(i))
        return parts

    def restrict_up(us: UpSet) -> UpSet:
        parts = UpSet()
        for g in us.generators:
            parts = up_union_base(parts, fns.s_f(g))
        gens = []
        for g in parts.generators:
            gens.append(g if fns.member_y(g) else _find_equivalent(X, fns, g))
        return UpSet(up_canonize(X.od, gens))

    def up_union_base(a: UpSet, b: UpSet) -> UpSet:
        return UpSet(up_canonize(X.od, a.generators + b.generators))

    def pi(y):
        if not fns.member_y(y):
            raise KindMismatch(f"{y!r} lies outside the induced subset")
        ds = restrict_down(DownSet((X.pi(y),)))
        if len(ds.ideals) != 1:
            raise ConstructionError(
                "restriction of a principal ideal did not yield a single ideal"
            )
        return ds.ideals[0]

    def od(x, y):
        return X.od(x, y)

    def cf(y):
        if not fns.member_y(y):
            raise KindMismatch(f"{y!r} lies outside the induced subset")
        return restrict_down(X.cf(y))

    def ci(i):
        return restrict_up(X.ci(i))

    def ii(i, j):
        return restrict_down(X.ii(i, j))

    def if_(x, y):
        return restrict_up(X.if_(x, y))

    def is_elem(x):
        return (X.is_elem is None or X.is_elem(x)) and fns.member_y(x)

    def is_ideal(i):
        return (X.is_ideal is None or X.is_ideal(i)) and adherent(X, fns, i)

    return Presentation(
        elem_kind=f"{X.elem_kind} restricted",
        ideal_kind=f"adherent {X.ideal_kind}",
        od=od,
        id=X.id,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=restrict_down(X.xi),
        xf=restrict_up(X.xf),
        enumerator=fns.enum_y,
        is_elem=is_elem,
        is_ideal=is_ideal,
    )


def _find_equivalent(X: Presentation, fns: SubspaceFns, x):
    for count, y in enumerate(fns.enum_y()):
        if X.od(x, y) and X.od(y, x):
            return y
        if count >= _SEARCH_CAP:
            break
    raise ConstructionError(
        f"no equivalent of {x!r} found in the subset; restriction data is inconsistent"
    )
