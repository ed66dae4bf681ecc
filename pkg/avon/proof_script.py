import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import lark
from lark.exceptions import UnexpectedInput, VisitError

from .ast.nodes import Expr
from .errors import (
    DuplicateStepId,
    ExprSyntaxError,
    ForwardReference,
    ModelError,
    ParseError,
    ScriptError,
)
from .model_file import load_model
from .semantics import Context, Interpretation
from .syntax import SymbolTable, parse_binders, parse_expr

# Names a step may give values to, besides `binders`
METAVARIABLES = ("phi", "psi", "psi1", "psi2", "chi", "theta", "t", "tprime", "i")

_script_grammar = r"""
    start: (_statement | _NL)*

    _statement: model_decl | vars_decl | step_decl | justification | qed_decl

    model_decl: "model" ESCAPED_STRING
    vars_decl: "vars" NAME+
    step_decl: "step" INT ":" EXPR_TEXT
    justification: "by" SCHEMA premises? argument*
    premises: "from" INT ("," INT)*
    argument: NAME group
    group: LPAR (group | CHUNK)* RPAR
    qed_decl: "qed" INT

    SCHEMA: /[A-Za-z][A-Za-z0-9_.]*/
    EXPR_TEXT: /[^\n]+/
    CHUNK: /[^()\n]+/
    LPAR: "("
    RPAR: ")"
    NAME: /[^\s(),:#]+/
    COMMENT: /#[^\n]*/
    _NL: /\r?\n/

    %import common.ESCAPED_STRING
    %import common.INT
    %import common.WS_INLINE
    %ignore WS_INLINE
    %ignore COMMENT
"""

_parser = lark.Lark(_script_grammar, parser="lalr")


@dataclass(frozen=True)
class Justification:
    """How a step claims to follow: the schema name, the cited step ids, the
    binders of its closures, and the metavariable values (`i` is an int).
    """

    schema: str
    premises: Tuple[int, ...] = ()
    binders: Context = Context()
    metavars: Dict[str, Union[Expr, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class Step:
    id: int
    statement: Expr
    justification: Justification
    line: int = 0


@dataclass
class ProofScript:
    """A parsed proof script.

    Args:
        model_path      Model file, resolved against the script's directory
        symbols         Constants of the model plus the declared variables
        steps           Steps in file order, ids strictly increasing
        goal            The statement named by `qed`
        interpretation  The loaded model
    """

    model_path: Path
    symbols: SymbolTable
    steps: List[Step]
    goal: Expr
    interpretation: Interpretation

    def step(self, step_id: int) -> Optional[Step]:
        return next((s for s in self.steps if s.id == step_id), None)


# Raw line records, before expressions are parsed


@dataclass
class _raw_step:
    id: int
    text: str
    line: int
    by: Optional[Tuple[str, Tuple[int, ...], List[Tuple[str, str, int]], int]] = None


class _script_reader(lark.Transformer):
    "Flatten the parse tree into `(kind, line, payload)` records"

    def group(self, items):
        return "".join(str(i) for i in items)

    def argument(self, items):
        name, text = items
        return (str(name), text[1:-1], name.line)

    def premises(self, items):
        return ("from", tuple(int(i) for i in items))

    def model_decl(self, items):
        s = items[0]
        return ("model", s.line, s[1:-1].replace('\\"', '"'))

    def vars_decl(self, items):
        return ("vars", items[0].line, [str(n) for n in items])

    def step_decl(self, items):
        step_id, text = items
        return ("step", step_id.line, (int(step_id), str(text).strip()))

    def justification(self, items):
        schema, rest = items[0], items[1:]
        premises: Tuple[int, ...] = ()
        if len(rest) > 0 and rest[0][0] == "from":
            premises, rest = rest[0][1], rest[1:]
        return ("by", schema.line, (str(schema), premises, list(rest)))

    def qed_decl(self, items):
        return ("qed", items[0].line, int(items[0]))

    def start(self, items):
        return items


def _read_records(text: str) -> List[Tuple[str, int, object]]:
    if not text.endswith("\n"):
        text = text + "\n"
    try:
        tree = _parser.parse(text)
        return _script_reader().transform(tree)
    except UnexpectedInput as e:
        raise ParseError(getattr(e, "line", 0), f"syntax error: {e}") from e
    except VisitError as e:
        raise ParseError(0, str(e.orig_exc)) from e


def _parse_argument(
    name: str, text: str, line: int, table: SymbolTable
) -> Union[Expr, int, Context]:
    try:
        if name == "binders":
            return Context(parse_binders(text, table))
        if name == "i":
            try:
                return int(text.strip())
            except ValueError:
                raise ParseError(line, f"i({text}) must be a positive integer") from None
        return parse_expr(text, table)
    except ExprSyntaxError as e:
        raise ParseError(line, f"in {name}({text}): {e}") from e


def parse_script(text: str, base: Optional[Path] = None) -> ProofScript:
    """Parse the text of a proof script. The model it names is loaded, relative
    to `base` (the current directory when `None`).

    Raises:
        ParseError          Malformed lines or expressions, a missing or
                            repeated `model`, a step without `by`, a `qed`
                            that is missing or does not name the last step,
                            decreasing step ids, or a model that cannot be
                            read.
        DuplicateStepId
        ForwardReference    A step cites a step id that is not smaller than
                            its own.
    """
    records = _read_records(text)

    model_records = [r for r in records if r[0] == "model"]
    if len(model_records) != 1:
        line = model_records[1][1] if len(model_records) > 1 else 1
        raise ParseError(
            line, f"a script needs exactly one 'model' line, found {len(model_records)}"
        )
    _, model_line, model_name = model_records[0]
    model_path = (base or Path(".")) / str(model_name)
    try:
        interp = load_model(model_path)
    except OSError as e:
        raise ParseError(model_line, f"cannot read model '{model_path}': {e}") from e
    except ModelError as e:
        raise ParseError(model_line, f"model '{model_path}' is invalid: {e}") from e

    variables: List[str] = []
    for kind, _, payload in records:
        if kind == "vars":
            variables.extend(payload)  # type: ignore
    try:
        table = SymbolTable(frozenset(variables), frozenset(interp.constants))
    except ValueError as e:
        raise ParseError(0, str(e)) from e

    # Pair every step with the `by` line that follows it
    raw: List[_raw_step] = []
    qed: Optional[Tuple[int, int]] = None
    for kind, line, payload in records:
        if qed is not None and kind in ("step", "by"):
            raise ParseError(line, "nothing but comments may follow 'qed'")
        if kind == "step":
            if len(raw) > 0 and raw[-1].by is None:
                raise ParseError(line, f"step {raw[-1].id} has no 'by' line")
            step_id, step_text = payload  # type: ignore
            raw.append(_raw_step(step_id, step_text, line))
        elif kind == "by":
            if len(raw) == 0 or raw[-1].by is not None:
                raise ParseError(line, "'by' must directly follow a step")
            schema, premises, arguments = payload  # type: ignore
            raw[-1].by = (schema, premises, arguments, line)
        elif kind == "qed":
            if qed is not None:
                raise ParseError(line, "'qed' appears more than once")
            qed = (payload, line)  # type: ignore
    if len(raw) > 0 and raw[-1].by is None:
        raise ParseError(raw[-1].line, f"step {raw[-1].id} has no 'by' line")

    steps: List[Step] = []
    seen: Dict[int, int] = {}
    for r in raw:
        if r.id < 1:
            raise ParseError(r.line, f"step ids are positive integers, not {r.id}")
        if r.id in seen:
            raise DuplicateStepId(r.line, r.id)
        if len(steps) > 0 and r.id < steps[-1].id:
            raise ParseError(r.line, f"step {r.id} comes after step {steps[-1].id}")
        seen[r.id] = r.line
        steps.append(_build_step(r, table))

    if qed is None:
        raise ParseError(len(text.splitlines()), "the script has no 'qed' line")
    goal_id, qed_line = qed
    if len(steps) == 0 or steps[-1].id != goal_id:
        raise ParseError(qed_line, f"'qed {goal_id}' must name the last step")

    logging.getLogger(__name__).debug(
        f"Read {len(steps)} steps over model {model_path} with variables {sorted(variables)}"
    )
    return ProofScript(model_path, table, steps, steps[-1].statement, interp)


def _build_step(r: _raw_step, table: SymbolTable) -> Step:
    assert r.by is not None
    schema, premises, arguments, by_line = r.by

    for p in premises:
        if p >= r.id:
            raise ForwardReference(by_line, r.id, p)

    try:
        statement = parse_expr(r.text, table)
    except ExprSyntaxError as e:
        raise ParseError(r.line, f"step {r.id}: {e}") from e

    binders = Context()
    metavars: Dict[str, Union[Expr, int]] = {}
    given = set()
    for name, text, line in arguments:
        if name in given:
            raise ParseError(line, f"{name}(...) is given twice")
        given.add(name)
        if name != "binders" and name not in METAVARIABLES:
            raise ParseError(
                line, f"unknown metavariable '{name}', expected one of {', '.join(METAVARIABLES)}"
            )
        value = _parse_argument(name, text, line, table)
        if isinstance(value, Context):
            binders = value
        else:
            metavars[name] = value

    return Step(r.id, statement, Justification(schema, tuple(premises), binders, metavars), r.line)


def load_script(path: Union[str, Path]) -> ProofScript:
    """Read and parse a proof script file.

    Raises:
        ScriptError     (or one of its sub-classes) for anything wrong with the
                        script or its model
        OSError         The script itself cannot be read
    """
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    try:
        return parse_script(text, p.parent)
    except ScriptError:
        logging.getLogger(__name__).debug(f"Failed to load {p}")
        raise
