"""Concrete syntax: WQO type expressions, element and ideal literals,
and closed-set expressions.  ASCII only; see GRAMMAR.md for the full
grammar.  Parsing is type directed, so literals are checked against
their WQO while they are read."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Any

from .base import (
    CNF_OMEGA,
    CNF_ONE,
    CNF_ZERO,
    CnfOrdinal,
    FinIdeal,
    FiniteQoSpec,
    MalformedOrdinal,
    NAT_OMEGA,
    NatIdeal,
    OrdCut,
    cnf_from_int,
    cnf_is_finite,
    cnf_lt,
    cnf_omega_power,
    cnf_succ,
    cnf_to_int,
    cnf_validate,
    finite_qo,
    naturals,
    ordinal,
)
from .kernel import (
    ClosedSet,
    DOWN,
    DownSet,
    Presentation,
    UP,
    UpSet,
    WqoError,
    down_canonize,
)
from .sequences import AtomProduct, One, Star, conjugacy, higman, seq_reduce, stuttering
from .sets_multisets import Bag, FinSet, PfIdeal, bag, finset, multiset, powerset_fin
from .sum_product import (
    Pair,
    PairIdeal,
    SumElement,
    SumIdeal,
    disjoint_sum,
    lex_sum,
    product,
)


class ParseError(WqoError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        prefix = text[:pos]
        self.line = prefix.count("\n") + 1
        self.col = pos - (prefix.rfind("\n") + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.col})")


# ---------------------------------------------------------------------------
# Type expressions.


@dataclass(frozen=True)
class TNat:
    pass


@dataclass(frozen=True)
class TOrd:
    alpha: CnfOrdinal


@dataclass(frozen=True)
class TFin:
    symbols: tuple
    pairs: tuple = ()


@dataclass(frozen=True)
class TSum:
    left: Any
    right: Any


@dataclass(frozen=True)
class TLexSum:
    left: Any
    right: Any


@dataclass(frozen=True)
class TProd:
    parts: tuple


@dataclass(frozen=True)
class TStar:
    base: Any


@dataclass(frozen=True)
class TStutter:
    base: Any


@dataclass(frozen=True)
class TConj:
    base: Any


@dataclass(frozen=True)
class TPset:
    base: Any


@dataclass(frozen=True)
class TMset:
    base: Any


_SEQUENCE_TYPES = (TStar, TStutter, TConj)


@functools.lru_cache(maxsize=None)
def presentation_of(t) -> Presentation:
    """Build (and cache) the presentation behind a type expression."""
    if isinstance(t, TNat):
        return naturals()
    if isinstance(t, TOrd):
        return ordinal(t.alpha)
    if isinstance(t, TFin):
        return finite_qo(FiniteQoSpec(t.symbols, t.pairs))
    if isinstance(t, TSum):
        return disjoint_sum(presentation_of(t.left), presentation_of(t.right))
    if isinstance(t, TLexSum):
        return lex_sum(presentation_of(t.left), presentation_of(t.right))
    if isinstance(t, TProd):
        parts = [presentation_of(p) for p in t.parts]
        acc = parts[-1]
        for p in reversed(parts[:-1]):
            acc = product(p, acc)
        return acc
    if isinstance(t, TStar):
        return higman(presentation_of(t.base))
    if isinstance(t, TStutter):
        return stuttering(presentation_of(t.base))
    if isinstance(t, TConj):
        return conjugacy(presentation_of(t.base))
    if isinstance(t, TPset):
        return powerset_fin(presentation_of(t.base))
    if isinstance(t, TMset):
        return multiset(presentation_of(t.base))
    raise WqoError(f"unknown type expression {t!r}")


# ---------------------------------------------------------------------------
# Closed-set expressions.


@dataclass(frozen=True)
class SUp:
    elements: tuple
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SDown:
    ideal: Any
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SComp:
    inner: Any
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SAnd:
    left: Any
    right: Any
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SOr:
    left: Any
    right: Any
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SFull:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SEmpty:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SIn:
    element: Any
    expr: Any
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SSubset:
    left: Any
    right: Any
    pos: int = field(default=0, compare=False)


# ---------------------------------------------------------------------------
# Cursor.


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.i >= len(self.text)

    def peek(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.i)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.i += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            raise self.error(f"expected {s!r}")

    def error(self, message: str) -> ParseError:
        self.skip_ws()
        return ParseError(message, self.text, self.i)

    def ident(self) -> str:
        self.skip_ws()
        j = self.i
        if j < len(self.text) and (self.text[j].isalpha() or self.text[j] == "_"):
            j += 1
            while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
                j += 1
        if j == self.i:
            raise self.error("expected a name")
        name, self.i = self.text[self.i : j], j
        return name

    def number(self) -> int:
        self.skip_ws()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            raise self.error("expected a number")
        n, self.i = int(self.text[self.i : j]), j
        return n

    def save(self) -> int:
        return self.i

    def restore(self, mark: int):
        self.i = mark


# ---------------------------------------------------------------------------
# Type parsing.


_UNARY_TYPES = {
    "Star": TStar,
    "Stutter": TStutter,
    "Conj": TConj,
    "Pset": TPset,
    "Mset": TMset,
}


def parse_type(text: str):
    cur = _Cursor(text)
    t = _type(cur)
    if not cur.at_end():
        raise cur.error("unexpected trailing input after type")
    return t


def _type(cur: _Cursor):
    name = cur.ident()
    if name == "Nat":
        return TNat()
    if name == "Ord":
        cur.expect("[")
        alpha = _cnf(cur)
        cur.expect("]")
        if alpha == CNF_ZERO:
            raise cur.error("the ordinal universe must not be empty")
        return TOrd(alpha)
    if name == "Fin":
        cur.expect("{")
        symbols = [cur.ident()]
        while cur.eat(","):
            symbols.append(cur.ident())
        pairs = []
        if cur.eat("|"):
            while True:
                a = cur.ident()
                cur.expect("<")
                b = cur.ident()
                pairs.append((a, b))
                if not cur.eat(","):
                    break
        cur.expect("}")
        if len(set(symbols)) != len(symbols):
            raise cur.error("duplicate symbol in Fin type")
        for a, b in pairs:
            if a not in symbols or b not in symbols:
                raise cur.error(f"order pair {a}<{b} uses an undeclared symbol")
        return TFin(tuple(symbols), tuple(pairs))
    if name in ("Sum", "LexSum"):
        cur.expect("(")
        a = _type(cur)
        cur.expect(",")
        b = _type(cur)
        cur.expect(")")
        return TSum(a, b) if name == "Sum" else TLexSum(a, b)
    if name == "Prod":
        cur.expect("(")
        parts = [_type(cur)]
        while cur.eat(","):
            parts.append(_type(cur))
        cur.expect(")")
        if len(parts) < 2:
            raise cur.error("Prod needs at least two components")
        return TProd(tuple(parts))
    if name in _UNARY_TYPES:
        cur.expect("(")
        inner = _type(cur)
        cur.expect(")")
        return _UNARY_TYPES[name](inner)
    raise cur.error(f"unknown type constructor {name!r}")


def _cnf(cur: _Cursor):
    terms = []
    while True:
        if cur.peek("w"):
            cur.expect("w")
            exp = CNF_ONE
            if cur.eat("^"):
                exp = _cnf_atom(cur)
                if exp == CNF_ZERO:
                    raise cur.error("write w^0 terms as plain integers")
            coeff = 1
            if cur.eat("*"):
                coeff = cur.number()
                if coeff < 1:
                    raise cur.error("coefficients must be positive")
            terms.append((exp, coeff))
        else:
            n = cur.number()
            if n == 0:
                if terms:
                    raise cur.error("zero cannot appear inside a sum")
                return CNF_ZERO
            terms.append((CNF_ZERO, n))
        if not cur.eat("+"):
            break
    a = CnfOrdinal(tuple(terms))
    try:
        cnf_validate(a)
    except MalformedOrdinal as exc:
        raise cur.error(f"malformed CNF literal: {exc}") from exc
    return a


def _cnf_atom(cur: _Cursor):
    if cur.eat("("):
        a = _cnf(cur)
        cur.expect(")")
        return a
    if cur.eat("w"):
        return CNF_OMEGA
    return cnf_from_int(cur.number())


# ---------------------------------------------------------------------------
# Element literals.


def parse_value(text: str, t):
    cur = _Cursor(text)
    v = _value(cur, t)
    if not cur.at_end():
        raise cur.error("unexpected trailing input after value")
    return v


def _value(cur: _Cursor, t):
    if isinstance(t, TNat):
        return cur.number()
    if isinstance(t, TOrd):
        v = _cnf(cur)
        if not cnf_lt(v, t.alpha):
            raise cur.error("ordinal literal is not below the universe bound")
        return v
    if isinstance(t, TFin):
        name = cur.ident()
        if name not in t.symbols:
            raise cur.error(f"expected one of {', '.join(t.symbols)}; found {name!r}")
        return name
    if isinstance(t, (TSum, TLexSum)):
        if cur.eat("L"):
            cur.expect(":")
            return SumElement(1, _value(cur, t.left))
        if cur.eat("R"):
            cur.expect(":")
            return SumElement(2, _value(cur, t.right))
        raise cur.error("expected L: or R: for a sum element")
    if isinstance(t, TProd):
        cur.expect("(")
        v = _tuple_tail(cur, t.parts)
        cur.expect(")")
        return v
    if isinstance(t, _SEQUENCE_TYPES):
        cur.expect("[")
        items = []
        if not cur.peek("]"):
            items.append(_value(cur, t.base))
            while cur.eat(","):
                items.append(_value(cur, t.base))
        cur.expect("]")
        return tuple(items)
    if isinstance(t, TPset):
        cur.expect("{")
        items = []
        if not cur.peek("}"):
            items.append(_value(cur, t.base))
            while cur.eat(","):
                items.append(_value(cur, t.base))
        cur.expect("}")
        return finset(*items)
    if isinstance(t, TMset):
        cur.expect("{|")
        items = []
        if not cur.peek("|}"):
            items.append(_value(cur, t.base))
            while cur.eat(","):
                items.append(_value(cur, t.base))
        cur.expect("|}")
        return bag(*items)
    raise cur.error(f"no value syntax for type {t!r}")


def _tuple_tail(cur: _Cursor, parts: tuple):
    """Contents of a product literal: flat lists desugar into nested
    pairs, and an explicitly nested tail is accepted too."""
    first = _value(cur, parts[0])
    if len(parts) == 1:
        return first
    cur.expect(",")
    rest = parts[1:]
    if len(rest) == 1:
        return Pair(first, _value(cur, rest[0]))
    mark = cur.save()
    try:
        return Pair(first, _tuple_tail(cur, rest))  # flat continuation
    except ParseError:
        cur.restore(mark)
        return Pair(first, _value(cur, TProd(rest)))  # nested remainder


# ---------------------------------------------------------------------------
# Ideal literals (the components of downward closed sets).


def parse_ideal(text: str, t):
    cur = _Cursor(text)
    v = _down_component(cur, t)
    if not cur.at_end():
        raise cur.error("unexpected trailing input after ideal")
    return v


def _down_component(cur: _Cursor, t):
    if isinstance(t, TNat):
        cur.expect("dw(")
        v = NAT_OMEGA if cur.eat("omega") else NatIdeal(cur.number())
        cur.expect(")")
        return v
    if isinstance(t, TFin):
        cur.expect("dw(")
        sym = cur.ident()
        if sym not in t.symbols:
            raise cur.error(f"expected one of {', '.join(t.symbols)}; found {sym!r}")
        cur.expect(")")
        return presentation_of(t).pi(sym)
    if isinstance(t, TOrd):
        if cur.eat("cut("):
            b = _cnf(cur)
            cur.expect(")")
            if b == CNF_ZERO or cnf_lt(t.alpha, b):
                raise cur.error("cut bound must lie in (0, universe]")
            return OrdCut(b)
        cur.expect("dw(")
        b = _cnf(cur)
        cur.expect(")")
        if not cnf_lt(b, t.alpha):
            raise cur.error("ordinal literal is not below the universe bound")
        return OrdCut(cnf_succ(b))
    if isinstance(t, TProd):
        cur.expect("dw(")
        cur.expect("(")
        v = _pair_ideal_tail(cur, t.parts)
        cur.expect(")")
        cur.expect(")")
        return v
    if isinstance(t, (TSum, TLexSum)):
        if cur.eat("L"):
            cur.expect(":")
            return SumIdeal(1, _down_component(cur, t.left))
        if cur.eat("R"):
            cur.expect(":")
            return SumIdeal(2, _down_component(cur, t.right))
        cur.expect("dw(")
        x = _value(cur, t)
        cur.expect(")")
        return presentation_of(t).pi(x)
    if isinstance(t, _SEQUENCE_TYPES) or isinstance(t, TMset):
        base = t.base
        if cur.peek("dw("):
            cur.expect("dw(")
            x = _value(cur, t)
            cur.expect(")")
            return presentation_of(t).pi(x)
        atoms = [_atom(cur, base)]
        while cur.eat("."):
            atoms.append(_atom(cur, base))
        return seq_reduce(presentation_of(base), AtomProduct(tuple(atoms)))
    if isinstance(t, TPset):
        if cur.peek("dw("):
            cur.expect("dw(")
            x = _value(cur, t)
            cur.expect(")")
            return presentation_of(t).pi(x)
        cur.expect("pf(")
        ideals = _down_list(cur, t.base, ")")
        cur.expect(")")
        base = presentation_of(t.base)
        return PfIdeal(DownSet(down_canonize(base.id, ideals)))
    raise cur.error(f"no ideal syntax for type {t!r}")


def _pair_ideal_tail(cur: _Cursor, parts: tuple):
    first = _inner_ideal(cur, parts[0])
    if len(parts) == 1:
        return first
    cur.expect(",")
    rest = parts[1:]
    if len(rest) == 1:
        return PairIdeal(first, _inner_ideal(cur, rest[0]))
    mark = cur.save()
    try:
        return PairIdeal(first, _pair_ideal_tail(cur, rest))
    except ParseError:
        cur.restore(mark)
        cur.expect("(")
        v = _pair_ideal_tail(cur, rest)
        cur.expect(")")
        return PairIdeal(first, v)


def _inner_ideal(cur: _Cursor, t):
    """Ideal body inside a product literal: dw-unwrapped where the
    surrounding pair syntax already marks the polarity."""
    if isinstance(t, TNat):
        return NAT_OMEGA if cur.eat("omega") else NatIdeal(cur.number())
    if isinstance(t, TFin):
        sym = cur.ident()
        if sym not in t.symbols:
            raise cur.error(f"expected one of {', '.join(t.symbols)}; found {sym!r}")
        return presentation_of(t).pi(sym)
    if isinstance(t, TProd):
        cur.expect("(")
        v = _pair_ideal_tail(cur, t.parts)
        cur.expect(")")
        return v
    return _down_component(cur, t)


def _atom(cur: _Cursor, base):
    if cur.eat("star("):
        ideals = _down_list(cur, base, ")")
        cur.expect(")")
        pres = presentation_of(base)
        return Star(DownSet(down_canonize(pres.id, ideals)))
    cur.expect("one(")
    ideal = _down_component(cur, base)
    cur.expect(")")
    return One(ideal)


def _down_list(cur: _Cursor, t, closer: str) -> list:
    if cur.peek(closer):
        return []
    ideals = [_down_component(cur, t)]
    while cur.eat("|"):
        ideals.append(_down_component(cur, t))
    return ideals


# ---------------------------------------------------------------------------
# Set expressions.


def parse_set_expr(text: str, t):
    cur = _Cursor(text)
    pos = cur.save()
    if cur.eat("in("):
        x = _value(cur, t)
        cur.expect(",")
        e = _set_expr(cur, t)
        cur.expect(")")
        node = SIn(x, e, pos)
    elif cur.eat("subset("):
        a = _set_expr(cur, t)
        cur.expect(",")
        b = _set_expr(cur, t)
        cur.expect(")")
        node = SSubset(a, b, pos)
    else:
        node = _set_expr(cur, t)
    if not cur.at_end():
        raise cur.error("unexpected trailing input after set expression")
    infer_polarity(node, text)  # reject inconsistent expressions early
    return node


def _set_expr(cur: _Cursor, t):
    node = _set_conj(cur, t)
    while cur.eat("|"):
        node = SOr(node, _set_conj(cur, t), node.pos)
    return node


def _set_conj(cur: _Cursor, t):
    node = _set_primary(cur, t)
    while cur.eat("&"):
        node = SAnd(node, _set_primary(cur, t), node.pos)
    return node


def _set_primary(cur: _Cursor, t):
    pos = cur.save()
    if cur.eat("comp("):
        inner = _set_expr(cur, t)
        cur.expect(")")
        return SComp(inner, pos)
    if cur.eat("("):
        inner = _set_expr(cur, t)
        cur.expect(")")
        return inner
    if cur.eat("full"):
        return SFull(pos)
    if cur.eat("empty"):
        return SEmpty(pos)
    if cur.eat("up("):
        elems = [_value(cur, t)]
        while cur.eat(","):
            elems.append(_value(cur, t))
        cur.expect(")")
        return SUp(tuple(elems), pos)
    return SDown(_down_component(cur, t), pos)


def _flip(polarity):
    if polarity is None:
        return None
    return DOWN if polarity == UP else UP


def infer_polarity(node, text: str = ""):
    """Polarity of a set expression: up, down, or None when either fits
    (full/empty).  Mixed operands of & and | are rejected."""
    if isinstance(node, SUp):
        return UP
    if isinstance(node, SDown):
        return DOWN
    if isinstance(node, (SFull, SEmpty)):
        return None
    if isinstance(node, SComp):
        return _flip(infer_polarity(node.inner, text))
    if isinstance(node, (SAnd, SOr)):
        a = infer_polarity(node.left, text)
        b = infer_polarity(node.right, text)
        if a is not None and b is not None and a != b:
            raise ParseError("operands mix polarities", text, node.pos)
        return a if a is not None else b
    if isinstance(node, SIn):
        infer_polarity(node.expr, text)
        return None
    if isinstance(node, SSubset):
        a = infer_polarity(node.left, text)
        b = infer_polarity(node.right, text)
        if a is not None and b is not None and a != b:
            raise ParseError(
                "subset compares sets of different polarity", text, node.pos
            )
        return None
    raise WqoError(f"unknown set expression {node!r}")


# ---------------------------------------------------------------------------
# Rendering.  parse(render(v)) is the identity on canonical values.


def render(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    if isinstance(v, CnfOrdinal):
        return _render_cnf(v)
    if isinstance(v, Pair):
        return f"({render(v.left)},{render(v.right)})"
    if isinstance(v, SumElement):
        return ("L:" if v.side == 1 else "R:") + render(v.value)
    if isinstance(v, tuple):
        return "[" + ",".join(render(x) for x in v) + "]"
    if isinstance(v, FinSet):
        return "{" + ",".join(render(x) for x in v.members) + "}"
    if isinstance(v, Bag):
        return "{|" + ",".join(render(x) for x in v.items) + "|}"
    if isinstance(v, NatIdeal):
        return f"dw({'omega' if v.bound is None else v.bound})"
    if isinstance(v, FinIdeal):
        return f"dw({v.rep})"
    if isinstance(v, OrdCut):
        return f"cut({_render_cnf(v.bound)})"
    if isinstance(v, PairIdeal):
        return f"dw({_render_ideal_body(v)})"
    if isinstance(v, SumIdeal):
        return ("L:" if v.side == 1 else "R:") + render(v.ideal)
    if isinstance(v, AtomProduct):
        if not v.atoms:
            return "star()"
        return ".".join(_render_atom(a) for a in v.atoms)
    if isinstance(v, PfIdeal):
        return "pf(" + "|".join(render(i) for i in v.down.ideals) + ")"
    if isinstance(v, ClosedSet):
        return _render_closed(v)
    if isinstance(v, UpSet):
        return _render_closed(ClosedSet(UP, v))
    if isinstance(v, DownSet):
        return _render_closed(ClosedSet(DOWN, v))
    if isinstance(
        v, (TNat, TOrd, TFin, TSum, TLexSum, TProd, TStar, TStutter, TConj, TPset, TMset)
    ):
        return _render_type(v)
    raise WqoError(f"cannot render {v!r}")


def _render_ideal_body(v) -> str:
    """Body of a product-ideal literal; the pair syntax replaces dw()."""
    if isinstance(v, NatIdeal):
        return "omega" if v.bound is None else str(v.bound)
    if isinstance(v, FinIdeal):
        return v.rep
    if isinstance(v, PairIdeal):
        return f"({_render_ideal_body(v.left)},{_render_ideal_body(v.right)})"
    return render(v)


def _render_atom(a) -> str:
    if isinstance(a, Star):
        return "star(" + "|".join(render(i) for i in a.down.ideals) + ")"
    return "one(" + render(a.ideal) + ")"


def _render_closed(s: ClosedSet) -> str:
    if s.polarity == UP:
        parts = [f"up({render(g)})" for g in s.body.generators]
    else:
        parts = [render(i) for i in s.body.ideals]
    return " | ".join(parts) if parts else "empty"


def _render_cnf(a: CnfOrdinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp == CNF_ZERO:
            parts.append(str(coeff))
            continue
        s = "w"
        if exp != CNF_ONE:
            inner = _render_cnf(exp)
            atomic = cnf_is_finite(exp) or exp == CNF_OMEGA
            s += "^" + (inner if atomic else f"({inner})")
        if coeff > 1:
            s += f"*{coeff}"
        parts.append(s)
    return "+".join(parts)


def _render_type(t) -> str:
    if isinstance(t, TNat):
        return "Nat"
    if isinstance(t, TOrd):
        return f"Ord[{_render_cnf(t.alpha)}]"
    if isinstance(t, TFin):
        syms = ",".join(t.symbols)
        if t.pairs:
            rel = ", ".join(f"{a}<{b}" for a, b in t.pairs)
            return f"Fin{{{syms} | {rel}}}"
        return f"Fin{{{syms}}}"
    if isinstance(t, TSum):
        return f"Sum({_render_type(t.left)},{_render_type(t.right)})"
    if isinstance(t, TLexSum):
        return f"LexSum({_render_type(t.left)},{_render_type(t.right)})"
    if isinstance(t, TProd):
        return "Prod(" + ",".join(_render_type(p) for p in t.parts) + ")"
    for name, cls in _UNARY_TYPES.items():
        if isinstance(t, cls):
            return f"{name}({_render_type(t.base)})"
    raise WqoError(f"cannot render type {t!r}")
