import argparse
import json
import logging
import os
import random
import sys
from typing import List, Optional, Sequence

from .errors import AvonError, NotAnExpression, ScriptError
from .generate import ROUNDTRIP_SYMBOLS, random_expr
from .model_file import load_model, parse_value
from .proof_script import load_script
from .proofcheck import check_proof
from .semantics import (
    Context,
    ExprCase,
    Interpretation,
    State,
    classify,
    is_sentence,
    meaning,
)
from .syntax import SymbolTable, parse_binders, parse_expr, render, satisfies_depth_conditions
from .values import format_value

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_ERROR = 2


def _split_top_level(text: str) -> List[str]:
    "Split at commas that are not inside ( ) or { }"
    parts: List[str] = []
    level = 0
    current = ""
    for c in text:
        if c in "({":
            level += 1
        elif c in ")}":
            level -= 1
        if c == "," and level == 0:
            parts.append(current)
            current = ""
        else:
            current += c
    if current.strip():
        parts.append(current)
    return [p.strip() for p in parts if p.strip()]


def _load_interpretation(path: Optional[str]) -> Interpretation:
    return load_model(path) if path is not None else Interpretation()


def _symbols(interp: Interpretation) -> SymbolTable:
    return SymbolTable(frozenset(), frozenset(interp.constants), implicit_variables=True)


def cmd_check(args: argparse.Namespace) -> int:
    try:
        script = load_script(args.script)
    except (OSError, ScriptError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    verdict = check_proof(script)
    # json-lines keeps stdout to one record per line
    if args.report == "json-lines":
        footer = sys.stderr
        for d in verdict.steps:
            print(json.dumps(d.as_record(), ensure_ascii=False))
    else:
        footer = sys.stdout
        for d in verdict.steps:
            print(str(d))
            if not d.verified and d.witness is not None:
                print(f"  witness: {d.witness}")
    for f in verdict.post_check_failures:
        print(f"post-check failed: {f}", file=footer)
    print(verdict.summary(), file=footer)
    if verdict.first_failure is not None:
        print(f"first failure at step {verdict.first_failure.step_id}", file=footer)
    return EXIT_OK if verdict.accepted else EXIT_REJECTED


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        interp = _load_interpretation(args.model)
        table = _symbols(interp)
        k = Context(parse_binders(args.context, table))
        pairs = []
        for item in _split_top_level(args.state):
            name, sep, value = item.partition("=")
            if sep == "":
                raise AvonError(f"State entry '{item}' is not 'variable=value'")
            pairs.append((name.strip(), parse_value(value.strip())))
        sigma = State.of(pairs)
        e = parse_expr(args.expr, table)
        print(format_value(meaning(k, e, sigma, interp)))
    except (OSError, AvonError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_wf(args: argparse.Namespace) -> int:
    if len(args.exprs) > 2:
        print("error: wf takes at most a context and an expression", file=sys.stderr)
        return EXIT_ERROR
    context_text = args.exprs[0] if len(args.exprs) == 2 else args.context
    try:
        interp = _load_interpretation(args.model)
        table = _symbols(interp)
        k = Context(parse_binders(context_text, table))
        e = parse_expr(args.exprs[-1], table)
    except (OSError, AvonError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR

    try:
        c = classify(k, e, interp)
    except NotAnExpression as err:
        print(f"not an expression: {err}")
        return EXIT_REJECTED
    except AvonError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR

    print(f"case: {c.case.value}")
    if c.case == ExprCase.SET_BUILDER:
        print(f"contexts: {', '.join(str(x) for x in c.contexts)}")
    print("sentence" if is_sentence(k, e, interp) else "not a sentence")
    return EXIT_OK


def cmd_roundtrip(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else int(os.getenv("AVON_SEED", "0"))
    rng = random.Random(seed)
    ok = 0
    for n in range(args.count):
        e = random_expr(rng)
        text = render(e)
        try:
            back = parse_expr(text, ROUNDTRIP_SYMBOLS)
        except AvonError as err:
            logging.getLogger(__name__).warning(f"Round trip {n} failed to parse {text}: {err}")
            continue
        if back == e and satisfies_depth_conditions(text):
            ok += 1
        else:
            logging.getLogger(__name__).warning(f"Round trip {n} differs: {text}")
    print(f"{ok}/{args.count} round trips ok")
    return EXIT_OK if ok == args.count else EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avon", description="Check proofs in a set-builder logic against finite models"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="More logging (-v info, -vv debug)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Check a proof script")
    check.add_argument("script", help="Proof script file")
    check.add_argument("--report", choices=["json-lines"], default=None)
    check.set_defaults(func=cmd_check)

    ev = sub.add_parser("eval", help="Evaluate an expression at a state")
    ev.add_argument("--model", default=None, help="Model file")
    ev.add_argument("--context", default="", help="Binders, e.g. 'x:A, y:B'")
    ev.add_argument("--state", default="", help="Values, e.g. 'x=#1, y={#2}'")
    ev.add_argument("expr")
    ev.set_defaults(func=cmd_eval)

    wf = sub.add_parser("wf", help="Classify an expression and test it for sentencehood")
    wf.add_argument("--model", default=None, help="Model file")
    wf.add_argument("--context", default="", help="Binders, e.g. 'x:A, y:B'")
    wf.add_argument(
        "exprs", nargs="+", metavar="[context] expr", help="Optional context, then the expression"
    )
    wf.set_defaults(func=cmd_wf)

    rt = sub.add_parser("roundtrip", help="Render and re-parse random expressions")
    rt.add_argument("--count", type=int, default=1000)
    rt.add_argument("--seed", type=int, default=None, help="Defaults to $AVON_SEED or 0")
    rt.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose > 0:
        level = logging.INFO if args.verbose == 1 else logging.DEBUG
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)
