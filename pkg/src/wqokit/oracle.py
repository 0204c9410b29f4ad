"""Bounded brute-force semantics: the independent ground truth that the
symbolic operations are tested against.

The oracle only ever touches a presentation through the element order,
principal ideals, and ideal inclusion, plus raw enumeration of the type;
complements and intersections are never consulted, so their outputs can
be judged by plain set algebra on finite universes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Optional

from . import termlang
from .base import ordinals_below_of_size
from .kernel import (
    ClosedSet,
    DOWN,
    DownSet,
    Presentation,
    UP,
    UpSet,
    WqoError,
    canonize,
    complement,
    intersect,
    member,
    set_equal,
    subset,
    union,
)
from .sets_multisets import Bag, finset
from .sum_product import Pair, SumElement
from .termlang import (
    TConj,
    TFin,
    TLexSum,
    TMset,
    TNat,
    TOrd,
    TProd,
    TPset,
    TStar,
    TStutter,
    TSum,
    render,
)


@dataclass(frozen=True)
class Budget:
    """Caps for brute-force enumeration."""

    max_elements: int = 20
    max_size: int = 6

    def __post_init__(self):
        if self.max_elements < 1 or self.max_size < 0:
            raise WqoError("budget must be positive")

    def scaled(self, factor: int) -> "Budget":
        return Budget(self.max_elements * factor, self.max_size + factor)


@dataclass
class Report:
    """Outcome of a property sweep; an empty failure list is a pass.
    Semi-decidable checks that ran out of budget land in `inconclusive`
    and do not fail the report."""

    subject: str
    seed: int
    failures: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, op: str, message: str):
        self.failures.append({"op": op, "message": message})

    def vague(self, op: str, message: str):
        self.inconclusive.append({"op": op, "message": message})

    def lines(self) -> list:
        out = [
            f"check {self.subject}: seed={self.seed} "
            f"{'PASS' if self.passed else 'FAIL'} "
            f"({len(self.failures)} failures, {len(self.inconclusive)} inconclusive)"
        ]
        for f in self.failures:
            out.append(f"  FAIL {f['op']}: {f['message']}")
        for f in self.inconclusive:
            out.append(f"  INCONCLUSIVE {f['op']}: {f['message']}")
        return out


# ---------------------------------------------------------------------------
# Typed enumeration: duplicate-free, by increasing structural size, with
# a deterministic order inside each size class.


def enumerate_elements(t, budget: Budget) -> list:
    """The first elements of the type, fair and deterministic.

    Finite alphabets are enumerated completely; everything else stops at
    the budget caps.
    """
    if isinstance(t, TFin):
        return list(t.symbols)
    out = []
    for size in range(budget.max_size + 1):
        for x in _of_size(t, size):
            out.append(x)
            if len(out) >= budget.max_elements:
                return out
    return out


def _of_size(t, s: int) -> list:
    if isinstance(t, TNat):
        return [s]
    if isinstance(t, TFin):
        return list(t.symbols) if s == 0 else []
    if isinstance(t, TOrd):
        return list(ordinals_below_of_size(t.alpha, s))
    if isinstance(t, (TSum, TLexSum)):
        return [SumElement(1, x) for x in _of_size(t.left, s)] + [
            SumElement(2, x) for x in _of_size(t.right, s)
        ]
    if isinstance(t, TProd):
        rest = t.parts[1:]
        tail = rest[0] if len(rest) == 1 else TProd(rest)
        return [
            Pair(x, y)
            for k in range(s + 1)
            for x in _of_size(t.parts[0], k)
            for y in _of_size(tail, s - k)
        ]
    if isinstance(t, (TStar, TStutter, TConj)):
        return [w for w in _words_of_size(t.base, s)]
    if isinstance(t, TPset):
        return [finset(*c) for c in _collections_of_size(t.base, s, repeats=False)]
    if isinstance(t, TMset):
        return [Bag(tuple(c)) for c in _collections_of_size(t.base, s, repeats=True)]
    raise WqoError(f"cannot enumerate type {t!r}")


def _words_of_size(base, s: int) -> list:
    # a word costs one per position plus the sizes of its entries
    out = []

    def build(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for k in range(remaining + 1):
            for x in _of_size(base, k):
                prefix.append(x)
                build(prefix, remaining - k, slots - 1)
                prefix.pop()

    for length in range(s + 1):
        build([], s - length, length)
    return out


def _collections_of_size(base, s: int, repeats: bool) -> list:
    """Sorted element tuples costing 1 + size(element) each.  With
    repeats allowed this enumerates multisets, without it sets."""
    pool = []
    for size in range(s):
        pool.extend((size, x) for x in _of_size(base, size))
    out = []

    def build(prefix, start, remaining):
        if remaining == 0:
            out.append(tuple(x for _, x in prefix))
            return
        for idx in range(start, len(pool)):
            cost = pool[idx][0] + 1
            if cost > remaining:
                continue
            prefix.append(pool[idx])
            build(prefix, idx if repeats else idx + 1, remaining - cost)
            prefix.pop()

    build([], 0, s)
    return out


def extension_of(X: Presentation, s: ClosedSet, universe) -> set:
    """The members of a closed set inside a finite universe, computed
    from the order and ideal-inclusion procedures only."""
    if s.polarity == UP:
        gens = s.body.generators
        return {x for x in universe if any(X.od(g, x) for g in gens)}
    ideals = s.body.ideals
    return {x for x in universe if any(X.id(X.pi(x), i) for i in ideals)}


# ---------------------------------------------------------------------------
# The property sweep.


def check_presentation(
    X: Presentation,
    type_expr=None,
    budget: Optional[Budget] = None,
    elements: Optional[list] = None,
    seed: int = 0,
    subject: Optional[str] = None,
) -> Report:
    """Test a presentation against brute force on a finite universe.

    The universe comes from `elements` or from enumerating `type_expr`.
    Sampled closed sets are built out of principal filters and ideals,
    their unions, and their complements; all boolean operations are then
    compared extensionally.  Directedness of ideals and the negative
    half of inclusion are only semi-decidable, so those run on an
    enlarged universe and may report "inconclusive" rather than fail.
    """
    if budget is None:
        budget = Budget()
    if elements is None:
        if type_expr is None:
            raise WqoError("need a type expression or an explicit universe")
        universe = enumerate_elements(type_expr, budget)
        extended = enumerate_elements(type_expr, budget.scaled(4))
    else:
        universe = list(elements)
        extended = list(elements)
    name = subject or (render(type_expr) if type_expr is not None else X.elem_kind)
    rng = random.Random(seed)
    report = Report(subject=name, seed=seed)
    if not universe:
        report.vague("universe", "no elements within budget")
        return report

    _check_order(X, universe, rng, report)
    _check_decompositions(X, universe, report)
    pool = _sample_sets(X, universe, rng, report)
    _check_boolean_ops(X, pool, universe, extended, rng, report)
    _check_directedness(X, pool, universe, extended, report)
    return report


def _ext(X, s, universe):
    return extension_of(X, s, universe)


def _check_order(X, universe, rng, report):
    for x in universe:
        if not X.od(x, x):
            report.fail("od/reflexive", f"od({render(x)}, same) is false")
            return
    n = len(universe)
    triples = min(300, n * n * n)
    for _ in range(triples):
        x, y, z = (rng.choice(universe) for _ in range(3))
        if X.od(x, y) and X.od(y, z) and not X.od(x, z):
            report.fail(
                "od/transitive",
                f"{render(x)} <= {render(y)} <= {render(z)} but not <= directly",
            )
            return


def _check_decompositions(X, universe, report):
    for laxer, kind in ((X.xi.ideals, "xi"), (X.xf.generators, "xf")):
        rel = X.id if kind == "xi" else X.od
        for i, a in enumerate(laxer):
            for j, b in enumerate(laxer):
                if i != j and rel(a, b):
                    report.fail(
                        f"{kind}/canonical",
                        f"decomposition components {render(a)} and {render(b)} are comparable",
                    )
    whole_down = ClosedSet(DOWN, X.xi)
    whole_up = ClosedSet(UP, X.xf)
    for x in universe:
        if not member(X, x, whole_down):
            report.fail("xi/cover", f"{render(x)} escapes the ideal decomposition")
            return
        if not member(X, x, whole_up):
            report.fail("xf/cover", f"{render(x)} escapes the filter decomposition")
            return


def _sample_sets(X, universe, rng, report) -> list:
    picks = universe if len(universe) <= 6 else rng.sample(universe, 6)
    ups = [ClosedSet(UP, UpSet((x,))) for x in picks]
    downs = [ClosedSet(DOWN, DownSet((X.pi(x),))) for x in picks]
    pool = ups + downs
    for _ in range(3):
        if len(ups) >= 2:
            pool.append(union(X, rng.choice(ups), rng.choice(ups)))
        if len(downs) >= 2:
            pool.append(union(X, rng.choice(downs), rng.choice(downs)))
    for s in (ups + downs)[:4]:
        pool.append(complement(X, s))
    pool.append(ClosedSet(DOWN, X.xi))
    pool.append(ClosedSet(UP, X.xf))
    pool.append(ClosedSet(UP, UpSet()))
    pool.append(ClosedSet(DOWN, DownSet()))
    return pool


def _check_boolean_ops(X, pool, universe, extended, rng, report):
    exts = [_ext(X, s, universe) for s in pool]

    for s, es in zip(pool, exts):
        canon = canonize(X, s)
        if _ext(X, canon, universe) != es:
            report.fail("canonize/extensional", f"changed members of {render(s)}")
        if canonize(X, canon) != canon:
            report.fail("canonize/idempotent", f"not a fixpoint on {render(s)}")
        comp = complement(X, s)
        if _ext(X, comp, universe) != set(universe) - es:
            report.fail("complement/extensional", f"wrong complement of {render(s)}")
        back = complement(X, comp)
        if not (subset(X, back, canon) and subset(X, canon, back)):
            report.fail("complement/involution", f"double complement moved {render(s)}")

    pairs = [(i, j) for i in range(len(pool)) for j in range(len(pool))
             if pool[i].polarity == pool[j].polarity]
    rng.shuffle(pairs)
    for i, j in pairs[:40]:
        s, t = pool[i], pool[j]
        es, et = exts[i], exts[j]
        if _ext(X, union(X, s, t), universe) != es | et:
            report.fail("union/extensional", f"{render(s)} with {render(t)}")
        if _ext(X, intersect(X, s, t), universe) != es & et:
            report.fail("intersect/extensional", f"{render(s)} with {render(t)}")
        demorgan = intersect(X, complement(X, s), complement(X, t))
        if _ext(X, demorgan, universe) != set(universe) - (es | et):
            report.fail("demorgan/extensional", f"{render(s)} with {render(t)}")
        claim = subset(X, s, t)
        if claim and not es <= et:
            report.fail("subset/extensional", f"{render(s)} not inside {render(t)}")
        if not claim:
            bigger_s = _ext(X, s, extended)
            bigger_t = _ext(X, t, extended)
            if bigger_s <= bigger_t:
                report.vague(
                    "subset/extensional",
                    f"no witness against {render(s)} in {render(t)} within budget",
                )

    for s, es in zip(pool, exts):
        for x in universe:
            if member(X, x, s) != (x in es):
                report.fail(
                    "member/extensional", f"{render(x)} against {render(s)}"
                )
                break


def _check_directedness(X, pool, universe, extended, report):
    seen = set()
    for s in pool:
        if s.polarity != DOWN:
            continue
        for ideal in s.body.ideals:
            k = render(ideal)
            if k in seen:
                continue
            seen.add(k)
            inside = [x for x in universe if X.id(X.pi(x), ideal)]
            for a, b in itertools.combinations(inside[:8], 2):
                ok = any(
                    X.od(a, z) and X.od(b, z) and X.id(X.pi(z), ideal)
                    for z in extended
                )
                if not ok:
                    report.vague(
                        "ideal/directed",
                        f"no bound for {render(a)}, {render(b)} in {k} within budget",
                    )
                    break
