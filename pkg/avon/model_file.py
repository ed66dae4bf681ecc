import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

import lark
from lark.exceptions import UnexpectedInput, VisitError

from .errors import ModelError
from .semantics import Interpretation
from .values import FALSE, TRUE, Atom, FuncV, SetV, Value

_model_grammar = r"""
    start: (_NL | const_decl)*

    const_decl: "const" NAME "=" value

    single_value: value

    ?value: "true"                                     -> true
          | "false"                                    -> false
          | ATOM                                       -> atom
          | "{" (value ("," value)*)? "}"              -> set_value
          | "fun" "(" INT ")" "{" (mapping (";" mapping)*)? "}"  -> fun_value

    mapping: "(" value ("," value)* ")" "->" value

    ATOM: /#[0-9]+/
    NAME: /[^\s=#(){},;:]+/
    COMMENT: /#(?![0-9])[^\n]*/
    _NL: /\r?\n/

    %import common.INT
    %import common.WS_INLINE
    %ignore WS_INLINE
    %ignore COMMENT
"""

_parser = lark.Lark(_model_grammar, start=["start", "single_value"], parser="lalr")


class _model_builder(lark.Transformer):
    "Turns the parse tree of a model file into values, checking them on the way"

    def true(self, items):
        return TRUE

    def false(self, items):
        return FALSE

    def atom(self, items):
        return Atom(int(str(items[0])[1:]))

    def set_value(self, items):
        return SetV(tuple(items))

    def mapping(self, items):
        return (tuple(items[:-1]), items[-1])

    def fun_value(self, items):
        arity_token = items[0]
        arity = int(arity_token)
        mappings: List[Tuple[Tuple[Value, ...], Value]] = items[1:]
        if arity < 1:
            raise ModelError(arity_token.line, f"function arity must be at least 1, not {arity}")
        seen = set()
        for args, _ in mappings:
            if len(args) != arity:
                raise ModelError(
                    arity_token.line,
                    f"fun({arity}) has an entry with {len(args)} arguments",
                )
            if args in seen:
                raise ModelError(
                    arity_token.line,
                    f"fun({arity}) lists the domain tuple "
                    f"({','.join(str(a) for a in args)}) more than once",
                )
            seen.add(args)
        return FuncV(arity, tuple(mappings))

    def const_decl(self, items):
        return (items[0], items[1])

    def single_value(self, items):
        return items[0]

    def start(self, items):
        constants: Dict[str, Value] = {}
        for name_token, v in items:
            name = str(name_token)
            if name in constants:
                raise ModelError(name_token.line, f"constant '{name}' is defined more than once")
            constants[name] = v
        return constants


def _run(text: str, start: str):
    try:
        tree = _parser.parse(text, start=start)
        return _model_builder().transform(tree)
    except UnexpectedInput as e:
        raise ModelError(getattr(e, "line", 0), f"syntax error: {e}") from e
    except VisitError as e:
        if isinstance(e.orig_exc, ModelError):
            raise e.orig_exc from None
        raise ModelError(0, str(e.orig_exc)) from e


def parse_model_constants(text: str) -> Dict[str, Value]:
    """Parse the text of a model file into a map from constant name to value.

    Raises:
        ModelError      Syntax errors, duplicate constants, arity mismatches and
                        duplicate function-domain tuples.
    """
    if not text.endswith("\n"):
        text = text + "\n"
    constants = _run(text, "start")
    logging.getLogger(__name__).debug(f"Read {len(constants)} constants from model text")
    return constants


def parse_model(text: str) -> Interpretation:
    return Interpretation(parse_model_constants(text))


def load_model(path: Union[str, Path]) -> Interpretation:
    "Load a model file and build its interpretation"
    p = Path(path)
    constants = parse_model_constants(p.read_text(encoding="utf-8"))
    logging.getLogger(__name__).debug(f"Model {p} defines {sorted(constants)}")
    return Interpretation(constants)


def parse_value(text: str) -> Value:
    "Parse a single value literal, e.g. `#2` or `{#1,#2}`"
    return _run(text, "single_value")
