from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

# Canonical operator symbols. Order is the one used when listing them.
OPERATORS: Tuple[str, ...] = ("∧", "∨", "→", "¬", "∀", "∃", "∈", "=", "↔")


@dataclass(frozen=True)
class SourceSpan:
    "Half-open character range [start, end) in the text an expression was read from"

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"Span start {self.start} is after its end {self.end}")

    def contains(self, other: SourceSpan) -> bool:
        return self.start <= other.start and other.end <= self.end


class Expr:
    """Base class for expression trees.

    Sub-classes are frozen dataclasses. The `span` field records where the
    node came from when it was parsed; it does not take part in equality or
    hashing, so two trees are equal exactly when they render to the same
    canonical string.
    """

    span: Optional[SourceSpan]

    def __str__(self) -> str:
        from ..syntax import render

        return render(self)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    name: str
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=True)
class Apply(Expr):
    "`(head)(arg1, ..., argm)`, where the head evaluates to a function"

    head: Expr
    args: Tuple[Expr, ...]
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) == 0:
            raise ValueError("An application needs at least one argument")


@dataclass(frozen=True, eq=True)
class OpApply(Expr):
    "`(op)(arg1, ..., argm)` for one of the fixed operators"

    op: str
    args: Tuple[Expr, ...]
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if self.op not in OPERATORS:
            raise ValueError(f"'{self.op}' is not an operator")
        if len(self.args) == 0:
            raise ValueError(f"Operator {self.op} needs at least one argument")


@dataclass(frozen=True, eq=True)
class SetBuilder(Expr):
    "`{}(x1:φ1, ..., xm:φm, φ)`"

    binders: Tuple[Tuple[str, Expr], ...]
    body: Expr
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        binders = tuple((str(v), d) for v, d in self.binders)
        object.__setattr__(self, "binders", binders)
        if len(binders) == 0:
            raise ValueError("A set-builder needs at least one binder")
        names = [v for v, _ in binders]
        if len(set(names)) != len(names):
            raise ValueError(f"Set-builder binders must be distinct: {names}")

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.binders)


def op(symbol: str, *args: Expr) -> OpApply:
    "Shorthand used when building rule shapes"
    return OpApply(symbol, tuple(args))


def set_builder(binders: Iterable[Tuple[str, Expr]], body: Expr) -> SetBuilder:
    return SetBuilder(tuple(binders), body)
