"""Ground WQOs: finite quasi-orders, the naturals, and ordinals below
epsilon_0 in Cantor normal form."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Optional

from .kernel import (
    ConstructionError,
    DownSet,
    KindMismatch,
    Presentation,
    UpSet,
    WqoError,
    down_canonize,
    term_key,
    up_canonize,
)


class MalformedOrdinal(WqoError):
    """A term list is not in Cantor normal form."""


class OutOfUniverse(WqoError):
    """An ordinal element lies outside the chosen universe."""


# ---------------------------------------------------------------------------
# Finite quasi-orders.


@dataclass(frozen=True)
class FiniteQoSpec:
    """Symbols plus order pairs; the reflexive-transitive closure is taken."""

    symbols: tuple
    pairs: tuple = ()


@dataclass(frozen=True)
class FinIdeal:
    """Principal ideal of a finite QO, named by a class representative."""

    rep: str

    def term_key(self):
        return ("finideal", self.rep)


def finite_qo(spec: FiniteQoSpec) -> Presentation:
    """Presentation of a finite quasi-order.

    Every ideal is principal here, so ideals are compared through the
    element order.  The remaining operations are computed extensionally
    over the finite universe, which is the simplest correct choice.
    """
    symbols = tuple(spec.symbols)
    if len(set(symbols)) != len(symbols):
        raise ConstructionError("duplicate symbol in finite QO")
    index = {s: i for i, s in enumerate(symbols)}
    n = len(symbols)
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in spec.pairs:
        if a not in index or b not in index:
            raise ConstructionError(f"order pair ({a!r},{b!r}) names an undeclared symbol")
        le[index[a]][index[b]] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True

    def od(x, y):
        return le[index[x]][index[y]]

    def class_rep(x):
        i = index[x]
        cls = [s for s in symbols if le[i][index[s]] and le[index[s]][i]]
        return min(cls)

    def pi(x):
        return FinIdeal(class_rep(x))

    def idl(a, b):
        return od(a.rep, b.rep)

    def cf(x):
        below = [pi(y) for y in symbols if not od(x, y)]
        return DownSet(down_canonize(idl, below))

    def ci(a):
        above = [y for y in symbols if not od(y, a.rep)]
        return UpSet(up_canonize(od, above))

    def ii(a, b):
        common = [pi(z) for z in symbols if od(z, a.rep) and od(z, b.rep)]
        return DownSet(down_canonize(idl, common))

    def if_(x, y):
        common = [z for z in symbols if od(x, z) and od(y, z)]
        return UpSet(up_canonize(od, common))

    def enumerator():
        return iter(symbols)

    return Presentation(
        elem_kind=f"fin({','.join(symbols)})",
        ideal_kind="principal ideal of a finite QO",
        od=od,
        id=idl,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=DownSet(down_canonize(idl, [pi(s) for s in symbols])),
        xf=UpSet(up_canonize(od, symbols)),
        enumerator=enumerator,
        is_elem=lambda x: isinstance(x, str) and x in index,
        is_ideal=lambda a: isinstance(a, FinIdeal) and a.rep in index,
    )


def alphabet(*symbols) -> Presentation:
    """Finite set ordered by equality."""
    return finite_qo(FiniteQoSpec(tuple(symbols)))


# ---------------------------------------------------------------------------
# Natural numbers.


@dataclass(frozen=True)
class NatIdeal:
    """Ideal of the naturals: all numbers up to `bound`, or everything
    when the bound is None (the omega ideal)."""

    bound: Optional[int]

    def term_key(self):
        if self.bound is None:
            return ("natideal", 1, 0)
        return ("natideal", 0, self.bound)


NAT_OMEGA = NatIdeal(None)


def _is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def naturals() -> Presentation:
    def od(x, y):
        return x <= y

    def idl(a, b):
        return b.bound is None or (a.bound is not None and a.bound <= b.bound)

    def cf(x):
        if x == 0:
            return DownSet()
        return DownSet((NatIdeal(x - 1),))

    def ci(a):
        if a.bound is None:
            return UpSet()
        return UpSet((a.bound + 1,))

    def ii(a, b):
        if a.bound is None:
            return DownSet((b,))
        if b.bound is None:
            return DownSet((a,))
        return DownSet((NatIdeal(min(a.bound, b.bound)),))

    def if_(x, y):
        return UpSet((max(x, y),))

    return Presentation(
        elem_kind="nat",
        ideal_kind="nat ideal (bounded or omega)",
        od=od,
        id=idl,
        pi=lambda x: NatIdeal(x),
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=DownSet((NAT_OMEGA,)),
        xf=UpSet((0,)),
        enumerator=lambda: itertools.count(0),
        is_elem=_is_nat,
        is_ideal=lambda a: isinstance(a, NatIdeal)
        and (a.bound is None or _is_nat(a.bound)),
    )


# ---------------------------------------------------------------------------
# Ordinals in Cantor normal form.


@dataclass(frozen=True, eq=False)
class CnfOrdinal:
    """Cantor normal form: sum of omega^exponent * coefficient terms with
    strictly decreasing exponents.  The empty term list is zero."""

    terms: tuple = ()

    # term lists nest deeply, so cache the hash instead of rewalking
    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(("cnf", self.terms))
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other):
        return isinstance(other, CnfOrdinal) and self.terms == other.terms

    def term_key(self):
        return ("cnf", tuple((e.term_key(), c) for e, c in self.terms))


CNF_ZERO = CnfOrdinal()
CNF_ONE = CnfOrdinal(((CNF_ZERO, 1),))
CNF_OMEGA = CnfOrdinal(((CNF_ONE, 1),))


def cnf_from_int(n: int) -> CnfOrdinal:
    if n < 0:
        raise MalformedOrdinal("ordinals are not negative")
    return CNF_ZERO if n == 0 else CnfOrdinal(((CNF_ZERO, n),))


def cnf_omega_power(exp: CnfOrdinal, coeff: int = 1) -> CnfOrdinal:
    return CnfOrdinal(((exp, coeff),))


def cnf_validate(a: CnfOrdinal):
    if not isinstance(a, CnfOrdinal):
        raise MalformedOrdinal(f"{a!r} is not an ordinal term")
    prev = None
    for exp, coeff in a.terms:
        cnf_validate(exp)
        if not isinstance(coeff, int) or isinstance(coeff, bool) or coeff < 1:
            raise MalformedOrdinal("coefficients must be positive integers")
        if prev is not None and _cmp(exp, prev) >= 0:
            raise MalformedOrdinal("exponents must be strictly decreasing")
        prev = exp


def _cmp(a: CnfOrdinal, b: CnfOrdinal) -> int:
    for (e1, c1), (e2, c2) in zip(a.terms, b.terms):
        ce = _cmp(e1, e2)
        if ce != 0:
            return ce
        if c1 != c2:
            return -1 if c1 < c2 else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def cnf_leq(a: CnfOrdinal, b: CnfOrdinal) -> bool:
    cnf_validate(a)
    cnf_validate(b)
    return _cmp(a, b) <= 0


def cnf_lt(a: CnfOrdinal, b: CnfOrdinal) -> bool:
    cnf_validate(a)
    cnf_validate(b)
    return _cmp(a, b) < 0


def cnf_succ(a: CnfOrdinal) -> CnfOrdinal:
    if a.terms and a.terms[-1][0] == CNF_ZERO:
        head, (exp, coeff) = a.terms[:-1], a.terms[-1]
        return CnfOrdinal(head + ((exp, coeff + 1),))
    return CnfOrdinal(a.terms + ((CNF_ZERO, 1),))


def cnf_is_finite(a: CnfOrdinal) -> bool:
    return all(e == CNF_ZERO for e, _ in a.terms)


def cnf_to_int(a: CnfOrdinal) -> int:
    if not cnf_is_finite(a):
        raise MalformedOrdinal("not a finite ordinal")
    return a.terms[0][1] if a.terms else 0


@functools.lru_cache(maxsize=None)
def cnf_size(a: CnfOrdinal) -> int:
    """Structural size used by the enumeration order; size(n) = n."""
    return sum(cnf_size(e) + c for e, c in a.terms)


@functools.lru_cache(maxsize=None)
def cnfs_of_size(s: int) -> tuple:
    """All normal forms of exactly the given size, in increasing order."""
    out = [a for a in _cnfs_up_to(s) if cnf_size(a) == s]
    out.sort(key=lambda a: _SortWrapper(a))
    return tuple(out)


class _SortWrapper:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return _cmp(self.value, other.value) < 0


@functools.lru_cache(maxsize=None)
def _cnfs_up_to(s: int) -> tuple:
    if s <= 0:
        return (CNF_ZERO,)
    exps = sorted(_cnfs_up_to(s - 1), key=lambda a: _SortWrapper(a), reverse=True)
    return _terms_over(exps, s)


def _terms_over(exps: list, s: int) -> tuple:
    costs = [cnf_size(e) for e in exps]
    results = []

    def extend(prefix, budget, max_exp_index):
        results.append(CnfOrdinal(tuple(prefix)))
        for i in range(max_exp_index, len(exps)):
            cost = costs[i]
            for coeff in range(1, budget - cost + 1):
                prefix.append((exps[i], coeff))
                extend(prefix, budget - cost - coeff, i + 1)
                prefix.pop()

    extend([], s, 0)
    return tuple(results)


def _leading_exp(a: CnfOrdinal) -> CnfOrdinal:
    return a.terms[0][0] if a.terms else CNF_ZERO


@functools.lru_cache(maxsize=None)
def _cnfs_exp_bounded(s: int, emax: CnfOrdinal) -> tuple:
    """Normal forms of size at most s whose exponents stay at or below
    emax; keeps enumeration below a fixed universe from exploding into
    arbitrary towers."""
    if s <= 0:
        return (CNF_ZERO,)
    pool = [
        e
        for e in _cnfs_exp_bounded(s - 1, _leading_exp(emax))
        if _cmp(e, emax) <= 0
    ]
    pool.sort(key=lambda a: _SortWrapper(a), reverse=True)
    return _terms_over(pool, s)


def ordinals_below_of_size(alpha: CnfOrdinal, s: int) -> tuple:
    """All ordinals strictly below alpha with the given structural size,
    in increasing order."""
    pool = _cnfs_exp_bounded(s, _leading_exp(alpha))
    out = [a for a in pool if cnf_size(a) == s and _cmp(a, alpha) < 0]
    out.sort(key=lambda a: _SortWrapper(a))
    return tuple(out)


@dataclass(frozen=True)
class OrdCut:
    """Ideal of an ordinal universe: all elements strictly below `bound`."""

    bound: CnfOrdinal

    def term_key(self):
        return ("ordcut", self.bound.term_key())


def ordinal(alpha: CnfOrdinal) -> Presentation:
    """Presentation of the ordinal `alpha` viewed as the set of all
    ordinals strictly below it, linearly ordered."""
    cnf_validate(alpha)
    if alpha == CNF_ZERO:
        raise ConstructionError("the empty ordinal has no presentation here")

    def in_universe(x):
        return isinstance(x, CnfOrdinal) and _cmp(x, alpha) < 0

    def check(x):
        # normal form is validated where literals are built; here only
        # the universe bound is enforced
        if _cmp(x, alpha) >= 0:
            raise OutOfUniverse(f"element {x} is not below the universe bound")

    def od(x, y):
        check(x)
        check(y)
        return _cmp(x, y) <= 0

    def idl(a, b):
        return _cmp(a.bound, b.bound) <= 0

    def pi(x):
        check(x)
        return OrdCut(cnf_succ(x))

    def cf(x):
        check(x)
        if x == CNF_ZERO:
            return DownSet()
        return DownSet((OrdCut(x),))

    def ci(a):
        if a.bound == alpha:
            return UpSet()
        return UpSet((a.bound,))

    def ii(a, b):
        return DownSet((a if _cmp(a.bound, b.bound) <= 0 else b,))

    def if_(x, y):
        check(x)
        check(y)
        return UpSet((x if _cmp(x, y) >= 0 else y,))

    def enumerator():
        if cnf_is_finite(alpha):
            return (cnf_from_int(i) for i in range(cnf_to_int(alpha)))
        return (
            a
            for s in itertools.count(0)
            for a in ordinals_below_of_size(alpha, s)
        )

    def is_ideal(a):
        if not isinstance(a, OrdCut):
            return False
        try:
            cnf_validate(a.bound)
        except MalformedOrdinal:
            return False
        return a.bound != CNF_ZERO and _cmp(a.bound, alpha) <= 0

    return Presentation(
        elem_kind="ordinal below the universe bound",
        ideal_kind="strict cut of the ordinal universe",
        od=od,
        id=idl,
        pi=pi,
        cf=cf,
        if_=if_,
        ci=ci,
        ii=ii,
        xi=DownSet((OrdCut(alpha),)),
        xf=UpSet((CNF_ZERO,)),
        enumerator=enumerator,
        is_elem=in_universe,
        is_ideal=is_ideal,
    )
