"""Command line front end: evaluate closed-set expressions, run the
brute-force checker, enumerate elements, and decide Petri net
coverability by the backward algorithm over vectors of naturals."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import oracle
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
    empty_set,
    full_set,
    intersect,
    member,
    subset,
    union,
    up_canonize,
)
from .base import naturals
from .sum_product import Pair, product
from .termlang import (
    ParseError,
    SAnd,
    SComp,
    SDown,
    SEmpty,
    SFull,
    SIn,
    SOr,
    SSubset,
    SUp,
    infer_polarity,
    parse_set_expr,
    parse_type,
    presentation_of,
    render,
)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


# ---------------------------------------------------------------------------
# Set-expression evaluation.


def eval_set_expr(t, expr) -> ClosedSet:
    """Evaluate a closed-set expression bottom-up; the result is
    canonical.  Predicates are not closed sets; use `eval_expr`."""
    X = presentation_of(t)
    if isinstance(expr, (SIn, SSubset)):
        raise WqoError("predicates do not denote closed sets")
    return _eval(X, expr, infer_polarity(expr) or DOWN)


def eval_expr(t, expr):
    """Evaluate either a closed-set expression or a predicate."""
    X = presentation_of(t)
    if isinstance(expr, SIn):
        want = infer_polarity(expr.expr) or DOWN
        return member(X, expr.element, _eval(X, expr.expr, want))
    if isinstance(expr, SSubset):
        want = infer_polarity(expr.left) or infer_polarity(expr.right) or DOWN
        return subset(X, _eval(X, expr.left, want), _eval(X, expr.right, want))
    return eval_set_expr(t, expr)


def _eval(X: Presentation, node, want: str) -> ClosedSet:
    if isinstance(node, SUp):
        return canonize(X, ClosedSet(UP, UpSet(node.elements)))
    if isinstance(node, SDown):
        return canonize(X, ClosedSet(DOWN, DownSet((node.ideal,))))
    if isinstance(node, SFull):
        return full_set(X, want)
    if isinstance(node, SEmpty):
        return empty_set(want)
    if isinstance(node, SComp):
        flipped = UP if want == DOWN else DOWN
        return complement(X, _eval(X, node.inner, flipped))
    if isinstance(node, (SAnd, SOr)):
        pol = infer_polarity(node) or want
        a = _eval(X, node.left, pol)
        b = _eval(X, node.right, pol)
        return (intersect if isinstance(node, SAnd) else union)(X, a, b)
    raise WqoError(f"cannot evaluate {node!r}")


# ---------------------------------------------------------------------------
# Petri nets and backward coverability.


@dataclass(frozen=True)
class Transition:
    pre: tuple
    post: tuple
    name: str = ""


@dataclass(frozen=True)
class PetriNet:
    places: int
    transitions: tuple

    def __post_init__(self):
        if self.places < 1:
            raise WqoError("a net needs at least one place")
        for t in self.transitions:
            if len(t.pre) != self.places or len(t.post) != self.places:
                raise WqoError(f"transition {t.name!r} has vectors of wrong length")


@dataclass(frozen=True)
class CoverQuery:
    initial: tuple
    target: tuple


@dataclass(frozen=True)
class CoverResult:
    coverable: bool
    basis: tuple  # canonical generators of the backward fixpoint, as vectors
    iterations: int


def load_net(path: str) -> PetriNet:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        places = int(raw["places"])
        transitions = tuple(
            Transition(
                pre=tuple(int(v) for v in t["pre"]),
                post=tuple(int(v) for v in t["post"]),
                name=str(t.get("name", f"t{i}")),
            )
            for i, t in enumerate(raw["transitions"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise WqoError(f"malformed net file {path}: {exc}") from exc
    return PetriNet(places=places, transitions=transitions)


def _nat_power(k: int) -> Presentation:
    acc = naturals()
    for _ in range(k - 1):
        acc = product(naturals(), acc)
    return acc


def _vec_to_elem(v: tuple):
    if len(v) == 1:
        return v[0]
    return Pair(v[0], _vec_to_elem(v[1:]))


def _elem_to_vec(e) -> tuple:
    if isinstance(e, Pair):
        return (e.left,) + _elem_to_vec(e.right)
    return (e,)


def _pred_generator(t: Transition, g: tuple) -> tuple:
    # least marking that can fire t and land above g
    return tuple(p + max(0, x - q) for p, x, q in zip(t.pre, g, t.post))


def coverability(net: PetriNet, query: CoverQuery) -> CoverResult:
    """Backward fixpoint: saturate the upward closure of the target
    under one-step predecessors, then test the initial marking."""
    k = net.places
    if len(query.initial) != k or len(query.target) != k:
        raise WqoError("marking length does not match the net")
    X = _nat_power(k)

    def basis_of(vectors) -> UpSet:
        return UpSet(up_canonize(X.od, [_vec_to_elem(v) for v in vectors]))

    current = basis_of([query.target])
    iterations = 0
    while True:
        iterations += 1
        gens = [_elem_to_vec(g) for g in current.generators]
        step = [_pred_generator(t, g) for t in net.transitions for g in gens]
        widened = basis_of([_elem_to_vec(g) for g in current.generators] + step)
        if all(any(X.od(h, g) for h in current.generators) for g in widened.generators):
            break
        current = widened
    covered = any(X.od(g, _vec_to_elem(query.initial)) for g in current.generators)
    return CoverResult(
        coverable=covered,
        basis=tuple(_elem_to_vec(g) for g in current.generators),
        iterations=iterations,
    )


# ---------------------------------------------------------------------------
# Commands.


def _emit(args, payload: dict, text_lines: list):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_eval(args) -> int:
    t = parse_type(args.type)
    expr = parse_set_expr(args.expr, t)
    result = eval_expr(t, expr)
    if isinstance(result, bool):
        _emit(args, {"result": result}, ["true" if result else "false"])
    else:
        _emit(args, {"result": render(result)}, [render(result)])
    return EXIT_OK


def _cmd_enum(args) -> int:
    t = parse_type(args.type)
    budget = oracle.Budget(max_elements=args.budget, max_size=args.max_size)
    for x in oracle.enumerate_elements(t, budget):
        if args.json:
            print(json.dumps({"element": render(x)}))
        else:
            print(render(x))
    return EXIT_OK


def _cmd_check(args) -> int:
    t = parse_type(args.type)
    X = presentation_of(t)
    budget = oracle.Budget(max_elements=args.budget, max_size=args.max_size)
    report = oracle.check_presentation(X, t, budget, seed=args.seed)
    if args.json:
        print(
            json.dumps(
                {
                    "subject": report.subject,
                    "seed": report.seed,
                    "passed": report.passed,
                    "failures": report.failures,
                    "inconclusive": report.inconclusive,
                },
                sort_keys=True,
            )
        )
    else:
        for line in report.lines():
            print(line)
    return EXIT_OK if report.passed else EXIT_INTERNAL


def _parse_marking(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise WqoError(f"malformed marking {text!r}") from exc


def _cmd_cover(args) -> int:
    net = load_net(args.net)
    query = CoverQuery(_parse_marking(args.init), _parse_marking(args.target))
    result = coverability(net, query)
    basis = [",".join(str(v) for v in g) for g in result.basis]
    _emit(
        args,
        {
            "coverable": result.coverable,
            "iterations": result.iterations,
            "basis": basis,
        },
        [
            f"coverable: {'true' if result.coverable else 'false'}",
            f"iterations: {result.iterations}",
            "basis: " + " | ".join(f"up(({g}))" for g in basis),
        ],
    )
    if args.expect_coverable and not result.coverable:
        return EXIT_VERDICT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wqokit",
        description="Compute with upward and downward closed subsets of WQOs.",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON lines")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a closed-set expression")
    p_eval.add_argument("--type", required=True)
    p_eval.add_argument("--expr", required=True)
    p_eval.set_defaults(func=_cmd_eval)

    p_enum = sub.add_parser("enum", help="list the first elements of a type")
    p_enum.add_argument("--type", required=True)
    p_enum.add_argument("--budget", type=int, default=20)
    p_enum.add_argument("--max-size", type=int, default=8)
    p_enum.set_defaults(func=_cmd_enum)

    p_check = sub.add_parser("check", help="test a presentation against brute force")
    p_check.add_argument("--type", required=True)
    p_check.add_argument("--budget", type=int, default=14)
    p_check.add_argument("--max-size", type=int, default=5)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=_cmd_check)

    p_cover = sub.add_parser("cover", help="backward coverability for a Petri net")
    p_cover.add_argument("--net", required=True, help="JSON net description")
    p_cover.add_argument("--init", required=True, help="initial marking, comma separated")
    p_cover.add_argument("--target", required=True, help="target marking, comma separated")
    p_cover.add_argument("--expect-coverable", action="store_true")
    p_cover.set_defaults(func=_cmd_cover)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WqoError as exc:
        message = str(exc)
        # malformed user data is an input error; anything else is internal
        if "malformed" in message or "marking" in message or "net" in message:
            print(f"error: {message}", file=sys.stderr)
            return EXIT_INPUT
        print(f"internal error: {message}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
