"""Finite sequences under the embedding order.

Ideals of the sequence extension are finite concatenation products of
two kinds of atoms: D* (all sequences over a downward closed D) and
I+epsilon (sequences of length at most one over an ideal I).  Products
carry a reduced canonical form, and the closed-set operations recurse
over the atom lists.  The stuttering extension and the conjugacy
quotient are layered on top through the generic transformers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .kernel import (
    DownSet,
    Presentation,
    UpSet,
    down_canonize,
    down_subset,
    term_key,
    up_canonize,
)
from .transformers import ClosureFns, extend, quotient


@dataclass(frozen=True)
class Star:
    """Atom D*: arbitrary sequences over the downward closed set D.
    The empty D gives {epsilon}, the unit of concatenation."""

    down: DownSet

    def term_key(self):
        return ("atom", 0, self.down.term_key())


@dataclass(frozen=True)
class One:
    """Atom I+epsilon: sequences of length at most one over the ideal I."""

    ideal: Any

    def term_key(self):
        return ("atom", 1, term_key(self.ideal))


@dataclass(frozen=True)
class AtomProduct:
    """Concatenation of atoms; the empty product denotes {epsilon}."""

    atoms: tuple = ()

    def term_key(self):
        return ("atomproduct", tuple(a.term_key() for a in self.atoms))


def _is_unit(atom) -> bool:
    return isinstance(atom, Star) and not atom.down.ideals


def atom_subset(X: Presentation, a, b) -> bool:
    """Inclusion between two atoms over the same base."""
    if isinstance(a, One):
        if isinstance(b, One):
            return X.id(a.ideal, b.ideal)
        return down_subset(X, DownSet((a.ideal,)), b.down)
    if isinstance(b, Star):
        return down_subset(X, a.down, b.down)
    return not a.down.ideals  # D* fits in I+epsilon only when D is empty


def seq_ideal_subset(X: Presentation, p: AtomProduct, q: AtomProduct) -> bool:
    """Inclusion between products of atoms, by a leftmost scan.

    When the head of p is not included in the head of q, the head of q
    is skipped.  Included One-heads advance both sides; an inclusion
    into a Star head only consumes the left head.
    """
    pa, qa = p.atoms, q.atoms
    memo = {}

    def sub(i, j):
        if i == len(pa):
            return True
        if j == len(qa):
            return all(_is_unit(a) for a in pa[i:])
        key = (i, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        a, b = pa[i], qa[j]
        if not atom_subset(X, a, b):
            res = sub(i, j + 1)
        elif isinstance(a, One) and isinstance(b, One):
            res = sub(i + 1, j + 1)
        else:
            res = sub(i + 1, j)
        memo[key] = res
        return res

    return sub(0, 0)


def seq_reduce(X: Presentation, p: AtomProduct) -> AtomProduct:
    """Unique reduced form: drop unit atoms and any atom absorbed by an
    adjacent Star neighbour, until nothing changes."""
    atoms = [a for a in p.atoms if not _is_unit(a)]
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(atoms):
            left = atoms[i - 1] if i > 0 else None
            right = atoms[i + 1] if i + 1 < len(atoms) else None
            if (
                isinstance(right, Star)
                and atom_subset(X, a, right)
                or isinstance(left, Star)
                and atom_subset(X, a, left)
            ):
                del atoms[i]
                changed = True
                break
    return AtomProduct(tuple(atoms))


def _seq_id(X: Presentation):
    return lambda p, q: seq_ideal_subset(X, p, q)


def _canon_products(X: Presentation, products) -> tuple:
    return down_canonize(_seq_id(X), [seq_reduce(X, p) for p in products])


def seq_complement_filter(X: Presentation, w: tuple) -> DownSet:
    """Complement of the filter above one sequence, as a union of
    products.  Walks the sequence from the left: everything missing the
    first element, or matching it once and missing the rest."""
    base_ideals = X.xi.ideals
    memo = {}

    def compl(i) -> list:
        if i == len(w):
            return []
        if i in memo:
            return memo[i]
        head = Star(X.cf(w[i]))
        if i == len(w) - 1:
            out = [AtomProduct((head,))]
        else:
            out = [
                AtomProduct((head, One(mid)) + rest.atoms)
                for mid in base_ideals
                for rest in compl(i + 1)
            ]
        memo[i] = out
        return out

    return DownSet(_canon_products(X, compl(0)))


def seq_intersect_ideals(X: Presentation, p: AtomProduct, q: AtomProduct) -> DownSet:
    """Intersection of two products as a union of products."""
    pa, qa = p.atoms, q.atoms
    memo = {}

    def prepend(atom, tails):
        if atom is None:
            return list(tails)
        return [AtomProduct((atom,) + t.atoms) for t in tails]

    def ints(i, j) -> tuple:
        if i == len(pa) or j == len(qa):
            return (AtomProduct(()),)
        key = (i, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        a, b = pa[i], qa[j]
        out = []
        if isinstance(a, Star) and isinstance(b, Star):
            meet = down_canonize(X.id, [
                k
                for x in a.down.ideals
                for y in b.down.ideals
                for k in X.ii(x, y).ideals
            ])
            tails = list(ints(i, j + 1)) + list(ints(i + 1, j))
            out = prepend(Star(DownSet(meet)), tails)
        elif isinstance(a, One) and isinstance(b, One):
            out = list(ints(i, j + 1)) + list(ints(i + 1, j))
            meet = X.ii(a.ideal, b.ideal)
            for t in ints(i + 1, j + 1):
                if meet.ideals:
                    out.extend(AtomProduct((One(k),) + t.atoms) for k in meet.ideals)
                else:
                    out.append(t)
        elif isinstance(a, Star):
            out = list(ints(i + 1, j))
            meet = down_canonize(
                X.id, [k for x in a.down.ideals for k in X.ii(x, b.ideal).ideals]
            )
            for t in ints(i, j + 1):
                if meet:
                    out.extend(AtomProduct((One(k),) + t.atoms) for k in meet)
                else:
                    out.append(t)
        else:
            out = list(ints(i, j + 1))
            meet = down_canonize(
                X.id, [k for y in b.down.ideals for k in X.ii(a.ideal, y).ideals]
            )
            for t in ints(i + 1, j):
                if meet:
                    out.extend(AtomProduct((One(k),) + t.atoms) for k in meet)
                else:
                    out.append(t)
        res = _canon_products(X, out)
        memo[key] = res
        return res

    return DownSet(_canon_products(X, ints(0, 0)))


def seq_intersect_filters(X: Presentation, u: tuple, v: tuple) -> UpSet:
    """Generalized infiltration: the minimal sequences containing both."""
    star_od = _embeds(X)
    memo = {}

    def inter(i, j) -> tuple:
        if i == len(u):
            return (v[j:],)
        if j == len(v):
            return (u[i:],)
        key = (i, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        x, y = u[i], v[j]
        words = [(x,) + t for t in inter(i + 1, j)]
        words += [(y,) + t for t in inter(i, j + 1)]
        for z in X.if_(x, y).generators:
            words += [(z,) + t for t in inter(i + 1, j + 1)]
        res = up_canonize(star_od, words)
        memo[key] = res
        return res

    return UpSet(inter(0, 0))


def seq_odot(X: Presentation, f: UpSet, g: UpSet) -> UpSet:
    """Merge of upward closed sets of sequences: the sequences whose
    every split hits f on the left or g on the right.  Distributes over
    unions, so it is computed on pairs of generators."""
    star_od = _embeds(X)
    words = []
    for u in f.generators:
        for v in g.generators:
            if not u or not v:
                words.append(())
                continue
            words.append(u + v)
            for z in X.if_(u[-1], v[0]).generators:
                words.append(u[:-1] + (z,) + v[1:])
    return UpSet(up_canonize(star_od, words))


def seq_complement_ideal(X: Presentation, p: AtomProduct) -> UpSet:
    """Complement of a product of atoms, folded atom by atom."""
    star_od = _embeds(X)
    singles = UpSet(up_canonize(star_od, [(x,) for x in X.xf.generators]))
    if not p.atoms:
        return singles

    def neg_atom(atom) -> UpSet:
        if isinstance(atom, Star):
            outside = _down_complement(X, atom.down)
            return UpSet(up_canonize(star_od, [(x,) for x in outside]))
        outside = _down_complement(X, DownSet((atom.ideal,)))
        words = [(x,) for x in outside]
        words += [
            (a, b) for a in X.xf.generators for b in X.xf.generators
        ]  # everything of length two or more
        return UpSet(up_canonize(star_od, words))

    acc = neg_atom(p.atoms[0])
    for atom in p.atoms[1:]:
        acc = seq_odot(X, acc, neg_atom(atom))
    return acc


def _down_complement(X: Presentation, d: DownSet) -> tuple:
    if not d.ideals:
        return X.xf.generators
    acc = X.ci(d.ideals[0]).generators
    for i in d.ideals[1:]:
        gens = [
            z
            for x in acc
            for y in X.ci(i).generators
            for z in X.if_(x, y).generators
        ]
        acc = up_canonize(X.od, gens)
    return acc


def _embeds(X: Presentation):
    def od(u, v):
        i = 0
        for y in v:
            if i < len(u) and X.od(u[i], y):
                i += 1
        return i == len(u)

    return od


def higman(X: Presentation) -> Presentation:
    """Sequence extension of a WQO, ordered by embedding."""
    od = _embeds(X)

    def idl(p, q):
        return seq_ideal_subset(X, p, q)

    def pi(w):
        return seq_reduce(X, AtomProduct(tuple(One(X.pi(x)) for x in w)))

    def is_elem(w):
        return isinstance(w, tuple) and (
            X.is_elem is None or all(X.is_elem(x) for x in w)
        )

    def atom_ok(a):
        if isinstance(a, Star):
            return isinstance(a.down, DownSet) and (
                X.is_ideal is None or all(X.is_ideal(i) for i in a.down.ideals)
            )
        return isinstance(a, One) and (X.is_ideal is None or X.is_ideal(a.ideal))

    def is_ideal(p):
        return isinstance(p, AtomProduct) and all(atom_ok(a) for a in p.atoms)

    enumerator = None
    if X.enumerator is not None:
        enumerator = _word_stream(X.enumerator)

    return Presentation(
        elem_kind=f"seq({X.elem_kind})",
        ideal_kind=f"atom products over {X.ideal_kind}",
        od=od,
        id=idl,
        pi=pi,
        cf=lambda w: seq_complement_filter(X, w),
        if_=lambda u, v: seq_intersect_filters(X, u, v),
        ci=lambda p: seq_complement_ideal(X, p),
        ii=lambda p, q: seq_intersect_ideals(X, p, q),
        xi=DownSet((seq_reduce(X, AtomProduct((Star(X.xi),))),)),
        xf=UpSet(((),)),
        enumerator=enumerator,
        is_elem=is_elem,
        is_ideal=is_ideal,
    )


def _word_stream(enum):
    def stream():
        pool = []
        src = enum()
        exhausted = False
        seen = set()
        for stage in itertools.count(1):
            if not exhausted:
                x = next(src, _word_stream)
                if x is _word_stream:
                    exhausted = True
                else:
                    pool.append(x)
            for length in range(stage + 1):
                for w in itertools.product(pool, repeat=length):
                    if w not in seen:
                        seen.add(w)
                        yield w
            if exhausted and not pool:
                return

    return stream


# ---------------------------------------------------------------------------
# Stuttering: embeddings may reuse a position several times.


def _compositions(n):
    """Ways to cut 1..n into consecutive non-empty pieces."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def stuttering(X: Presentation) -> Presentation:
    """Sequences over X where an embedding may map several consecutive
    elements onto one target element."""
    star = higman(X)

    def close_ideal(p: AtomProduct) -> DownSet:
        atoms = tuple(
            a if isinstance(a, Star) else Star(DownSet((a.ideal,)))
            for a in p.atoms
        )
        return DownSet((seq_reduce(X, AtomProduct(atoms)),))

    def close_filter(w: tuple) -> UpSet:
        if not w:
            return UpSet(((),))
        words = []
        for cut in _compositions(len(w)):
            bases = []
            start = 0
            for size in cut:
                piece = w[start : start + size]
                start += size
                gens = (piece[0],)
                for x in piece[1:]:
                    gens = up_canonize(
                        X.od,
                        [z for g in gens for z in X.if_(g, x).generators],
                    )
                if not gens:
                    break
                bases.append(gens)
            else:
                words.extend(itertools.product(*bases))
        return UpSet(up_canonize(_embeds(X), words))

    return extend(star, ClosureFns(ci=close_ideal, cf=close_filter))


# ---------------------------------------------------------------------------
# Conjugacy: sequences compared up to rotation.


def _rotations(w: tuple):
    if not w:
        return [()]
    return [w[i:] + w[:i] for i in range(len(w))]


def conjugacy(X: Presentation) -> Presentation:
    """Sequences embedded up to rotation of the larger sequence."""
    star = higman(X)

    def close_filter(w: tuple) -> UpSet:
        return UpSet(up_canonize(_embeds(X), _rotations(w)))

    def close_ideal(p: AtomProduct) -> DownSet:
        atoms = p.atoms
        if not atoms:
            return DownSet((p,))
        products = []
        for i, first in enumerate(atoms):
            rotated = atoms[i:] + atoms[:i]
            if isinstance(first, Star):
                rotated = rotated + (first,)
            products.append(AtomProduct(rotated))
        return DownSet(_canon_products(X, products))

    return quotient(star, ClosureFns(ci=close_ideal, cf=close_filter))
