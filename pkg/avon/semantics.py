from __future__ import annotations

import logging
import os
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .ast.nodes import Apply, Const, Expr, OpApply, SetBuilder, Var
from .ast.variables import bound_vars, free_vars  # NOQA
from .errors import (
    EnumerationLimitExceeded,
    IllFormedContext,
    NotAnExpression,
    NotASentence,
    PreconditionViolated,
)
from .values import FALSE, TRUE, FuncV, SetV, Truth, Value, format_value, truth

Row = Tuple[Value, ...]

_DEFAULT_MAX_STATES = 1_000_000


# Operators


@dataclass(frozen=True)
class Operator:
    """A property symbol: `applicable` decides whether it can be applied to a
    tuple of argument meanings, `value` computes the result.
    """

    symbol: str
    arity: int
    applicable: Callable[[Row], bool]
    value: Callable[[Row], Value]
    requirement: str


def _truths(args: Row) -> bool:
    return all(isinstance(a, Truth) for a in args)


def _set_of_truths(args: Row) -> bool:
    return isinstance(args[0], SetV) and all(isinstance(m, Truth) for m in args[0].members)


OPERATOR_TABLE: Dict[str, Operator] = {
    o.symbol: o
    for o in [
        Operator("∧", 2, _truths, lambda a: truth(bool(a[0]) and bool(a[1])), "two truth values"),
        Operator("∨", 2, _truths, lambda a: truth(bool(a[0]) or bool(a[1])), "two truth values"),
        Operator(
            "→", 2, _truths, lambda a: truth((not bool(a[0])) or bool(a[1])), "two truth values"
        ),
        Operator(
            "↔", 2, _truths, lambda a: truth(bool(a[0]) == bool(a[1])), "two truth values"
        ),
        Operator("¬", 1, _truths, lambda a: truth(not bool(a[0])), "a truth value"),
        Operator(
            "∀",
            1,
            _set_of_truths,
            lambda a: truth(all(bool(m) for m in a[0].members)),
            "a set of truth values",
        ),
        Operator(
            "∃",
            1,
            _set_of_truths,
            lambda a: truth(any(bool(m) for m in a[0].members)),
            "a set of truth values",
        ),
        Operator(
            "∈",
            2,
            lambda a: isinstance(a[1], SetV),
            lambda a: truth(a[0] in a[1]),
            "a set as second argument",
        ),
        Operator("=", 2, lambda a: True, lambda a: truth(a[0] == a[1]), "two values"),
    ]
}


# Contexts and states


@dataclass(frozen=True)
class Context:
    """A sequence of `(variable, domain expression)` pairs. The empty context
    is ε.
    """

    entries: Tuple[Tuple[str, Expr], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((str(v), d) for v, d in self.entries))

    @property
    def dom(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, variable: str, domain: Expr) -> Context:
        return Context(self.entries + ((variable, domain),))

    def concat(self, other: Context) -> Context:
        return Context(self.entries + other.entries)

    def prefix(self, n: int) -> Context:
        "The context made of the first `n` entries"
        return Context(self.entries[:n])

    def index(self, variable: str) -> int:
        "0-based position of `variable`"
        return self.dom.index(variable)

    def __str__(self) -> str:
        if len(self.entries) == 0:
            return "ε"
        return "[" + ", ".join(f"{v}:{d}" for v, d in self.entries) + "]"


EMPTY_CONTEXT = Context()


@dataclass(frozen=True)
class State:
    "A sequence of `(variable, value)` pairs"

    names: Tuple[str, ...] = ()
    values: Row = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.names) != len(self.values):
            raise ValueError("A state needs exactly one value per variable")

    @classmethod
    def of(cls, pairs: Sequence[Tuple[str, Value]]) -> State:
        return cls(tuple(n for n, _ in pairs), tuple(v for _, v in pairs))

    def __getitem__(self, name: str) -> Value:
        return self.values[self.names.index(name)]

    def __len__(self) -> int:
        return len(self.names)

    def prefix(self, n: int) -> State:
        return State(self.names[:n], self.values[:n])

    def items(self) -> List[Tuple[str, Value]]:
        return list(zip(self.names, self.values))

    def __str__(self) -> str:
        if len(self.names) == 0:
            return "ε"
        return " ∥ ".join(f"({n}, {format_value(v)})" for n, v in zip(self.names, self.values))


EMPTY_STATE = State()


# Interpretation


class Interpretation:
    """Meanings of the constants, plus the memo tables of the evaluator.

    Evaluation works a whole context at a time: the meaning of an expression
    `t` in a context `k` is computed once as the tuple of its values over
    `states(k)` (in canonical order) and kept here. Values are immutable, so
    the memo never needs to be invalidated. The tables are filled under a
    reentrant lock, so one interpretation can be shared between threads.

    Args:
        constants       Map from constant name to its value
        max_states      Upper bound on the number of states of one context.
                        Defaults to the `AVON_MAX_STATES` environment variable,
                        or 1,000,000.
    """

    def __init__(
        self, constants: Optional[Mapping[str, Value]] = None, max_states: Optional[int] = None
    ):
        self.constants: Dict[str, Value] = dict(constants or {})
        if max_states is None:
            max_states = int(os.getenv("AVON_MAX_STATES", _DEFAULT_MAX_STATES))
        self.max_states = max_states
        self._rows: Dict[Context, Union[List[Row], IllFormedContext]] = {}
        self._row_index: Dict[Context, Dict[Row, int]] = {}
        self._tables: Dict[Tuple[Context, Expr], Union[Tuple[Value, ...], NotAnExpression]] = {}
        self._lock = threading.RLock()

    def __contains__(self, name: str) -> bool:
        return name in self.constants

    def __getitem__(self, name: str) -> Value:
        return self.constants[name]

    def clear_cache(self):
        with self._lock:
            self._rows.clear()
            self._row_index.clear()
            self._tables.clear()


def _witness(k: Context, row: Row) -> State:
    return State(k.dom, row)


def _rows(interp: Interpretation, k: Context) -> List[Row]:
    "All states of `k` as value tuples, in canonical order"
    with interp._lock:
        cached = interp._rows.get(k)
        if cached is not None:
            if isinstance(cached, IllFormedContext):
                raise cached
            return cached

        try:
            rows = _compute_rows(interp, k)
        except IllFormedContext as e:
            interp._rows[k] = e
            raise
        interp._rows[k] = rows
        return rows


def _compute_rows(interp: Interpretation, k: Context) -> List[Row]:
    if len(k) == 0:
        return [()]

    parent = k.prefix(len(k) - 1)
    variable, domain = k.entries[-1]
    if variable in parent.dom:
        raise IllFormedContext(f"Variable '{variable}' appears twice in the context {k}")

    parent_rows = _rows(interp, parent)
    try:
        domain_values = _table(interp, parent, domain)
    except NotAnExpression as e:
        raise IllFormedContext(
            f"Domain of '{variable}' is not an expression over {parent}: {e}", e.witness
        ) from e

    rows: List[Row] = []
    for r, d in zip(parent_rows, domain_values):
        if not isinstance(d, SetV):
            raise IllFormedContext(
                f"Domain of '{variable}' evaluates to {format_value(d)}, which is not a set",
                _witness(parent, r),
            )
        rows.extend(r + (v,) for v in d.members)
        if len(rows) > interp.max_states:
            raise EnumerationLimitExceeded(
                f"Context {k} has more than {interp.max_states} states (see AVON_MAX_STATES)"
            )
    return rows


def _table(interp: Interpretation, k: Context, t: Expr) -> Tuple[Value, ...]:
    "Meaning of `t` at every state of `k`, aligned with `_rows(interp, k)`"
    key = (k, t)
    with interp._lock:
        cached = interp._tables.get(key)
        if cached is not None:
            if isinstance(cached, NotAnExpression):
                raise cached
            return cached

        try:
            result = _evaluate(interp, k, t)
        except NotAnExpression as e:
            interp._tables[key] = e
            raise
        interp._tables[key] = result
        return result


def _evaluate(interp: Interpretation, k: Context, t: Expr) -> Tuple[Value, ...]:
    rows = _rows(interp, k)

    if isinstance(t, Const):
        if t.name not in interp.constants:
            raise NotAnExpression(f"Constant '{t.name}' has no meaning in the model")
        return (interp.constants[t.name],) * len(rows)

    if isinstance(t, Var):
        if t.name not in k.dom:
            raise NotAnExpression(f"Variable '{t.name}' is not in the context {k}")
        i = k.index(t.name)
        return tuple(r[i] for r in rows)

    if isinstance(t, OpApply):
        operator = OPERATOR_TABLE[t.op]
        if len(t.args) != operator.arity:
            raise NotAnExpression(
                f"Operator {t.op} takes {operator.arity} argument(s), not {len(t.args)}"
            )
        columns = [_table(interp, k, a) for a in t.args]
        result = []
        for i, args in enumerate(zip(*columns)):
            if not operator.applicable(args):
                raise NotAnExpression(
                    f"Operator {t.op} needs {operator.requirement}, got "
                    f"({', '.join(format_value(a) for a in args)}) in {t}",
                    _witness(k, rows[i]),
                )
            result.append(operator.value(args))
        return tuple(result)

    if isinstance(t, Apply):
        heads = _table(interp, k, t.head)
        columns = [_table(interp, k, a) for a in t.args]
        result = []
        for i, (h, args) in enumerate(zip(heads, zip(*columns))):
            if not isinstance(h, FuncV) or h.arity != len(args):
                raise NotAnExpression(
                    f"{t.head} does not evaluate to a function of {len(args)} argument(s)",
                    _witness(k, rows[i]),
                )
            v = h(args)
            if v is None:
                raise NotAnExpression(
                    f"({', '.join(format_value(a) for a in args)}) is outside the domain of "
                    f"{t.head}",
                    _witness(k, rows[i]),
                )
            result.append(v)
        return tuple(result)

    if isinstance(t, SetBuilder):
        extended = k
        for v, d in t.binders:
            extended = extended.extend(v, d)
        try:
            extended_rows = _rows(interp, extended)
        except IllFormedContext as e:
            raise NotAnExpression(f"Set-builder {t} is not well formed: {e}", e.witness) from e
        body = _table(interp, extended, t.body)

        width = len(k)
        buckets: Dict[Row, List[Value]] = {r: [] for r in rows}
        for r, b in zip(extended_rows, body):
            buckets[r[:width]].append(b)
        return tuple(SetV(tuple(buckets[r])) for r in rows)

    raise NotAnExpression(f"Unknown expression node {type(t).__name__}")


def states(k: Context, interp: Interpretation) -> List[State]:
    """Every state of `k`, Ξ(k), in canonical order. Ξ(ε) = {ε}.

    Raises:
        IllFormedContext    A variable repeats, or some domain is not an
                            expression or not set-valued over its prefix.
    """
    return [State(k.dom, r) for r in _rows(interp, k)]


def check_context(k: Context, interp: Interpretation):
    "Raise `IllFormedContext` unless `k` is a valid context"
    _rows(interp, k)


def is_context(k: Context, interp: Interpretation) -> bool:
    try:
        _rows(interp, k)
        return True
    except IllFormedContext:
        return False


class ExprCase(Enum):
    CONSTANT = "constant"
    CONTEXT_VARIABLE = "context-variable"
    APPLICATION = "application"
    OPERATOR_APPLICATION = "operator-application"
    SET_BUILDER = "set-builder"


@dataclass(frozen=True)
class Classification:
    """Which of the five cases an expression falls into.

    `parts` are the direct sub-expressions (head and arguments; operator
    arguments; binder domains followed by the body) and `contexts` the
    contexts they live in: `k` for applications, and the extended contexts
    k'_1, ..., k'_m for a set-builder (the domain of binder i+1 and, for
    i = m, the body live in k'_i; the first domain lives in `k`).
    """

    case: ExprCase
    parts: Tuple[Expr, ...] = ()
    contexts: Tuple[Context, ...] = field(default=())


def classify(k: Context, t: Expr, interp: Optional[Interpretation] = None) -> Classification:
    """Decide which case of the expression definition `t` falls into.

    With an interpretation the whole expression is also checked for
    well-formedness.

    Raises:
        NotAnExpression     No case applies (for example a variable that is
                            not in the context).
    """
    if interp is not None:
        check_expr(k, t, interp)

    if isinstance(t, Const):
        return Classification(ExprCase.CONSTANT)
    if isinstance(t, Var):
        if t.name not in k.dom:
            raise NotAnExpression(f"Variable '{t.name}' is not in the context {k}")
        return Classification(ExprCase.CONTEXT_VARIABLE)
    if isinstance(t, Apply):
        return Classification(ExprCase.APPLICATION, (t.head,) + t.args, (k,))
    if isinstance(t, OpApply):
        return Classification(ExprCase.OPERATOR_APPLICATION, t.args, (k,))
    if isinstance(t, SetBuilder):
        extended = []
        current = k
        for v, d in t.binders:
            current = current.extend(v, d)
            extended.append(current)
        parts = tuple(d for _, d in t.binders) + (t.body,)
        return Classification(ExprCase.SET_BUILDER, parts, tuple(extended))
    raise NotAnExpression(f"Unknown expression node {type(t).__name__}")


def check_expr(k: Context, t: Expr, interp: Interpretation):
    """Raise `NotAnExpression` (with a witness state where possible) unless `t`
    is an expression with respect to `k`.
    """
    _table(interp, k, t)


def is_expr(k: Context, t: Expr, interp: Interpretation) -> bool:
    "True iff `t` ∈ E(k)"
    try:
        _table(interp, k, t)
        return True
    except NotAnExpression:
        return False


def _state_row(k: Context, sigma: State, interp: Interpretation) -> int:
    if sigma.names != k.dom:
        raise PreconditionViolated(f"State {sigma} does not have the variables of {k}")
    with interp._lock:
        index = interp._row_index.get(k)
        if index is None:
            index = {r: i for i, r in enumerate(_rows(interp, k))}
            interp._row_index[k] = index
    i = index.get(sigma.values)
    if i is None:
        raise PreconditionViolated(f"State {sigma} is not a state of {k}")
    return i


def is_state(k: Context, sigma: State, interp: Interpretation) -> bool:
    "True iff σ ∈ Ξ(k)"
    try:
        _state_row(k, sigma, interp)
        return True
    except PreconditionViolated:
        return False


def meaning(k: Context, t: Expr, sigma: State, interp: Interpretation) -> Value:
    """The value #(k, t, σ).

    Raises:
        PreconditionViolated    `t` is not an expression over `k`, or σ is
                                not a state of `k`.
    """
    i = _state_row(k, sigma, interp)
    try:
        return _table(interp, k, t)[i]
    except NotAnExpression as e:
        raise PreconditionViolated(f"{t} is not an expression over {k}: {e}", e.witness) from e


def meanings(k: Context, t: Expr, interp: Interpretation) -> Tuple[Value, ...]:
    """Meaning of `t` at every state of `k`, in the order of `states(k)`.

    Raises:
        NotAnExpression     `t` is not an expression over `k`
    """
    return _table(interp, k, t)


def check_sentence(k: Context, t: Expr, interp: Interpretation):
    """Raise `NotASentence` unless `t` ∈ S(k): an expression whose meaning is a
    truth value at every state of `k`.
    """
    try:
        values = _table(interp, k, t)
    except NotAnExpression as e:
        raise NotASentence(f"{t} is not an expression over {k}: {e}", e.witness) from e
    rows = _rows(interp, k)
    for r, v in zip(rows, values):
        if not isinstance(v, Truth):
            raise NotASentence(
                f"{t} evaluates to {format_value(v)}, not a truth value", _witness(k, r)
            )


def is_sentence(k: Context, t: Expr, interp: Interpretation) -> bool:
    "True iff `t` ∈ S(k)"
    try:
        check_sentence(k, t, interp)
        return True
    except NotASentence:
        return False


def evaluate_closed(t: Expr, interp: Interpretation) -> Value:
    "#(t) for a closed expression: its meaning in the empty context"
    return _table(interp, EMPTY_CONTEXT, t)[0]


def holds(t: Expr, interp: Interpretation) -> bool:
    "True iff the closed sentence `t` evaluates to true"
    logging.getLogger(__name__).debug(f"Evaluating {t}")
    return evaluate_closed(t, interp) == TRUE


def is_false(v: Value) -> bool:
    return v == FALSE
