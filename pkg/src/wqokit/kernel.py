"""Closed subsets of a WQO represented by finite bases of prime pieces.

An upward closed set is stored as the generators of its principal
filters, a downward closed set as a list of ideals.  Every operation is
driven by a `Presentation`: the bundle of procedures that makes one WQO
computable (order decision, ideal inclusion, principal ideals,
complements and intersections of single primes, and the two
decompositions of the whole space).  This module is representation
independent; the concrete WQOs live in the sibling modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Optional

UP = "up"
DOWN = "down"

# The complement loop below terminates because chains of upward closed
# sets stabilize; the cap only guards against broken input data.
CD_ITERATION_CAP = 10_000


class WqoError(Exception):
    """Base class for all errors raised by the library."""


class PolarityMismatch(WqoError):
    """Closed sets of different polarity were combined."""


class KindMismatch(WqoError):
    """A value was used with a WQO it does not belong to."""


class ConstructionError(WqoError):
    """A presentation could not be assembled from the given data."""


def term_key(v):
    """Key realizing the library's total syntactic order on terms.

    Canonical bases are sorted by this key, which makes every canonical
    result deterministic and byte-comparable after rendering.  Values of
    the same kind always produce mutually comparable tuples.
    """
    if isinstance(v, bool):
        raise KindMismatch("booleans are not elements of any WQO here")
    if isinstance(v, int):
        return ("int", v)
    if isinstance(v, str):
        return ("sym", v)
    if isinstance(v, tuple):
        return ("word", tuple(term_key(x) for x in v))
    getter = getattr(v, "term_key", None)
    if getter is None:
        raise KindMismatch(f"value {v!r} has no syntactic order")
    return getter()


@dataclass(frozen=True)
class UpSet:
    """Finite union of principal filters, one generator per filter.

    The empty tuple denotes the empty set.  Canonical form: generators
    pairwise incomparable, sorted by `term_key`.
    """

    generators: tuple = ()

    def term_key(self):
        return ("upset", tuple(term_key(g) for g in self.generators))


@dataclass(frozen=True)
class DownSet:
    """Finite union of ideals.  The empty tuple denotes the empty set.

    Canonical form: ideals pairwise incomparable under inclusion, sorted
    by `term_key`.
    """

    ideals: tuple = ()

    def term_key(self):
        return ("downset", tuple(term_key(i) for i in self.ideals))


@dataclass(frozen=True)
class ClosedSet:
    polarity: str
    body: Any  # UpSet when polarity is UP, DownSet when DOWN

    def __post_init__(self):
        if self.polarity == UP:
            if not isinstance(self.body, UpSet):
                raise KindMismatch("up polarity requires an UpSet body")
        elif self.polarity == DOWN:
            if not isinstance(self.body, DownSet):
                raise KindMismatch("down polarity requires a DownSet body")
        else:
            raise KindMismatch(f"unknown polarity {self.polarity!r}")


def upward(*generators) -> ClosedSet:
    return ClosedSet(UP, UpSet(tuple(generators)))


def downward(*ideals) -> ClosedSet:
    return ClosedSet(DOWN, DownSet(tuple(ideals)))


@dataclass(frozen=True)
class Presentation:
    """All procedures needed to compute with closed subsets of one WQO.

    `od` decides the element order, `id` ideal inclusion.  `pi` maps an
    element to its principal ideal.  `cf` and `ci` complement a single
    filter or ideal, `if_` and `ii` intersect two of them.  `xi` and
    `xf` are the ideal and filter decompositions of the whole space, in
    canonical form.  `enumerator`, when present, returns a fresh fair
    stream of all elements.  `is_elem` / `is_ideal` are cheap membership
    validators used for the typed-error checks.
    """

    elem_kind: str
    ideal_kind: str
    od: Callable[[Any, Any], bool]
    id: Callable[[Any, Any], bool]
    pi: Callable[[Any], Any]
    cf: Callable[[Any], DownSet]
    if_: Callable[[Any, Any], UpSet]
    ci: Callable[[Any], UpSet]
    ii: Callable[[Any, Any], DownSet]
    xi: DownSet
    xf: UpSet
    enumerator: Optional[Callable[[], Iterator]] = None
    is_elem: Optional[Callable[[Any], bool]] = None
    is_ideal: Optional[Callable[[Any], bool]] = None


@dataclass(frozen=True)
class ShortPresentation:
    """The reduced bundle from which a full presentation is derivable.

    Only ideal inclusion, principal ideals, filter complement, ideal
    intersection and the ideal decomposition are given; a fair
    enumerator of elements is mandatory.
    """

    elem_kind: str
    ideal_kind: str
    id: Callable[[Any, Any], bool]
    pi: Callable[[Any], Any]
    cf: Callable[[Any], DownSet]
    ii: Callable[[Any, Any], DownSet]
    xi: DownSet
    enumerator: Callable[[], Iterator]
    is_elem: Optional[Callable[[Any], bool]] = None
    is_ideal: Optional[Callable[[Any], bool]] = None


# ---------------------------------------------------------------------------
# Low level helpers, parameterized by the comparison procedures.  The
# canonizers keep one representative per equivalence class (the one with
# the least syntactic key), drop dominated components, and sort.


def minimal_basis(subsumes, values) -> tuple:
    """Drop every component subsumed by another; keep the syntactically
    least member of each equivalence class; sort by key."""
    distinct = []
    seen = set()
    for v in sorted(values, key=term_key):
        k = term_key(v)
        if k not in seen:
            seen.add(k)
            distinct.append(v)
    kept = []
    for i, v in enumerate(distinct):
        redundant = False
        for j, w in enumerate(distinct):
            if i == j:
                continue
            if subsumes(w, v) and (j < i or not subsumes(v, w)):
                redundant = True
                break
        if not redundant:
            kept.append(v)
    return tuple(kept)


def up_canonize(od, generators) -> tuple:
    # a generator below another subsumes it: the smaller filter is inside
    return minimal_basis(od, generators)


def down_canonize(idf, ideals) -> tuple:
    # an ideal containing another subsumes it
    return minimal_basis(lambda w, v: idf(v, w), ideals)


def up_member(od, x, generators) -> bool:
    return any(od(g, x) for g in generators)


def down_member(idf, principal, ideals) -> bool:
    # x is in a union of ideals iff its principal ideal is included in
    # one of them, because principal ideals are prime.
    return any(idf(principal, i) for i in ideals)


def down_included(idf, ideals, in_ideals) -> bool:
    return all(any(idf(i, j) for j in in_ideals) for i in ideals)


# ---------------------------------------------------------------------------
# Presentation level operations on UpSet / DownSet.


def up_union(X: Presentation, a: UpSet, b: UpSet) -> UpSet:
    return UpSet(up_canonize(X.od, a.generators + b.generators))


def down_union(X: Presentation, a: DownSet, b: DownSet) -> DownSet:
    return DownSet(down_canonize(X.id, a.ideals + b.ideals))


def up_intersect(X: Presentation, a: UpSet, b: UpSet) -> UpSet:
    gens = []
    for g in a.generators:
        for h in b.generators:
            gens.extend(X.if_(g, h).generators)
    return UpSet(up_canonize(X.od, gens))


def down_intersect(X: Presentation, a: DownSet, b: DownSet) -> DownSet:
    ideals = []
    for i in a.ideals:
        for j in b.ideals:
            ideals.extend(X.ii(i, j).ideals)
    return DownSet(down_canonize(X.id, ideals))


def up_complement(X: Presentation, a: UpSet) -> DownSet:
    """Complement a union of filters: intersect the single-filter
    complements.  The empty union complements to the whole space."""
    if not a.generators:
        return X.xi
    acc = DownSet(down_canonize(X.id, X.cf(a.generators[0]).ideals))
    for g in a.generators[1:]:
        acc = down_intersect(X, acc, X.cf(g))
    return acc


def down_complement(X: Presentation, a: DownSet) -> UpSet:
    if not a.ideals:
        return X.xf
    acc = UpSet(up_canonize(X.od, X.ci(a.ideals[0]).generators))
    for i in a.ideals[1:]:
        acc = up_intersect(X, acc, X.ci(i))
    return acc


def up_subset(X: Presentation, a: UpSet, b: UpSet) -> bool:
    return all(up_member(X.od, g, b.generators) for g in a.generators)


def down_subset(X: Presentation, a: DownSet, b: DownSet) -> bool:
    return down_included(X.id, a.ideals, b.ideals)


# ---------------------------------------------------------------------------
# ClosedSet operations.


def _check_polarity(s: ClosedSet, t: ClosedSet):
    if s.polarity != t.polarity:
        raise PolarityMismatch(
            f"cannot combine a {s.polarity} set with a {t.polarity} set"
        )


def member(X: Presentation, x, s: ClosedSet) -> bool:
    if X.is_elem is not None and not X.is_elem(x):
        raise KindMismatch(f"{x!r} is not an element of {X.elem_kind}")
    if s.polarity == UP:
        return up_member(X.od, x, s.body.generators)
    return down_member(X.id, X.pi(x), s.body.ideals)


def subset(X: Presentation, s: ClosedSet, t: ClosedSet) -> bool:
    _check_polarity(s, t)
    if s.polarity == UP:
        return up_subset(X, s.body, t.body)
    return down_subset(X, s.body, t.body)


def set_equal(X: Presentation, s: ClosedSet, t: ClosedSet) -> bool:
    return subset(X, s, t) and subset(X, t, s)


def canonize(X: Presentation, s: ClosedSet) -> ClosedSet:
    if s.polarity == UP:
        return ClosedSet(UP, UpSet(up_canonize(X.od, s.body.generators)))
    return ClosedSet(DOWN, DownSet(down_canonize(X.id, s.body.ideals)))


def union(X: Presentation, s: ClosedSet, t: ClosedSet) -> ClosedSet:
    _check_polarity(s, t)
    if s.polarity == UP:
        return ClosedSet(UP, up_union(X, s.body, t.body))
    return ClosedSet(DOWN, down_union(X, s.body, t.body))


def intersect(X: Presentation, s: ClosedSet, t: ClosedSet) -> ClosedSet:
    _check_polarity(s, t)
    if s.polarity == UP:
        return ClosedSet(UP, up_intersect(X, s.body, t.body))
    return ClosedSet(DOWN, down_intersect(X, s.body, t.body))


def complement(X: Presentation, s: ClosedSet) -> ClosedSet:
    if s.polarity == UP:
        return ClosedSet(DOWN, up_complement(X, s.body))
    return ClosedSet(UP, down_complement(X, s.body))


def full_set(X: Presentation, polarity: str = DOWN) -> ClosedSet:
    return ClosedSet(UP, X.xf) if polarity == UP else ClosedSet(DOWN, X.xi)


def empty_set(polarity: str = DOWN) -> ClosedSet:
    return ClosedSet(UP, UpSet()) if polarity == UP else ClosedSet(DOWN, DownSet())


# ---------------------------------------------------------------------------
# Deriving a full presentation from a short one.


def as_short(X: Presentation) -> ShortPresentation:
    """Forget the derivable half of a presentation."""
    if X.enumerator is None:
        raise ConstructionError("a short presentation needs an enumerator")
    return ShortPresentation(
        elem_kind=X.elem_kind,
        ideal_kind=X.ideal_kind,
        id=X.id,
        pi=X.pi,
        cf=X.cf,
        ii=X.ii,
        xi=X.xi,
        enumerator=X.enumerator,
        is_elem=X.is_elem,
        is_ideal=X.is_ideal,
    )


def derive_full_presentation(short: ShortPresentation) -> Presentation:
    """Reconstruct the remaining procedures from a short presentation.

    The element order is recovered through principal ideals.  The
    complement of an arbitrary downward closed set D is grown filter by
    filter: starting from the empty upward closed set U, as long as the
    complement of U is not included in D there is a witness outside both
    U and D, and the first such witness in enumeration order is added to
    U.  Chains of upward closed sets stabilize, so the loop terminates.
    Filter intersection and the filter decomposition then come from the
    complement of downward closed sets.
    """
    if short.enumerator is None:
        raise ConstructionError("derivation requires a fair enumerator")

    idf, pif, cff, iif = short.id, short.pi, short.cf, short.ii
    xi_ideals = down_canonize(idf, short.xi.ideals)

    def od(x, y):
        return idf(pif(x), pif(y))

    def ints(a: tuple, b: tuple) -> tuple:
        out = []
        for i in a:
            for j in b:
                out.extend(iif(i, j).ideals)
        return down_canonize(idf, out)

    def neg_up(gens: tuple) -> tuple:
        if not gens:
            return xi_ideals
        acc = down_canonize(idf, cff(gens[0]).ideals)
        for g in gens[1:]:
            acc = ints(acc, down_canonize(idf, cff(g).ideals))
        return acc

    def cd(ideals: tuple) -> tuple:
        gens: tuple = ()
        for _ in range(CD_ITERATION_CAP):
            residue = neg_up(gens)
            if down_included(idf, residue, ideals):
                return gens
            witness = None
            for x in short.enumerator():
                if up_member(od, x, gens):
                    continue
                if down_member(idf, pif(x), ideals):
                    continue
                witness = x
                break
            if witness is None:
                raise ConstructionError("enumerator exhausted while a witness must exist")
            gens = up_canonize(od, gens + (witness,))
        raise ConstructionError("complement loop exceeded the iteration cap")

    def ci(ideal) -> UpSet:
        return UpSet(cd((ideal,)))

    def cf(x) -> DownSet:
        return DownSet(down_canonize(idf, cff(x).ideals))

    def if_(x, y) -> UpSet:
        both = down_canonize(idf, cff(x).ideals + cff(y).ideals)
        return UpSet(cd(both))

    def ii(i, j) -> DownSet:
        return DownSet(down_canonize(idf, iif(i, j).ideals))

    return Presentation(
        elem_kind=short.elem_kind,
        ideal_kind=short.ideal_kind,
        od=od,
        id=idf,
        pi=pif,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=DownSet(xi_ideals),
        xf=UpSet(cd(())),
        enumerator=short.enumerator,
        is_elem=short.is_elem,
        is_ideal=short.is_ideal,
    )
