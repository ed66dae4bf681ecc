from typing import Any, Optional


class AvonError(Exception):
    "Base class for every error raised by the kernel"

    def __init__(self, msg: str):
        Exception.__init__(self, msg)


# Syntax


class ExprSyntaxError(AvonError):
    """Raised when an expression text cannot be tokenized or parsed.

    `offset` is the 0-based character position in the source text where the
    problem was found.
    """

    def __init__(self, msg: str, offset: int):
        AvonError.__init__(self, f"{msg} (at offset {offset})")
        self.offset = offset
        self.reason = msg


class UnknownSymbol(ExprSyntaxError):
    def __init__(self, chunk: str, offset: int):
        ExprSyntaxError.__init__(self, f"Unknown symbol '{chunk}'", offset)
        self.chunk = chunk


class Unbalanced(ExprSyntaxError):
    pass


class UnexpectedToken(ExprSyntaxError):
    pass


class EmptyArgumentList(ExprSyntaxError):
    pass


class DuplicateBinder(ExprSyntaxError):
    def __init__(self, name: str, offset: int):
        ExprSyntaxError.__init__(
            self, f"Variable '{name}' is bound twice in the same set-builder", offset
        )
        self.name = name


class OutOfRange(AvonError):
    pass


# Semantics


class SemanticError(AvonError):
    """An error that can point at the state where things went wrong.

    `witness` is usually a `State`, but anything with a readable `str` works.
    """

    def __init__(self, msg: str, witness: Optional[Any] = None):
        if witness is not None:
            msg = f"{msg} [witness: {witness}]"
        AvonError.__init__(self, msg)
        self.witness = witness


class NotAnExpression(SemanticError):
    pass


class IllFormedContext(SemanticError):
    pass


class PreconditionViolated(SemanticError):
    pass


class EnumerationLimitExceeded(AvonError):
    pass


# Substitution and calculus


class SideConditionViolated(SemanticError):
    def __init__(self, which: str, detail: str, witness: Optional[Any] = None):
        SemanticError.__init__(self, f"Side condition '{which}' violated: {detail}", witness)
        self.which = which


class ShapeMismatch(AvonError):
    pass


class UnknownSchema(AvonError):
    def __init__(self, name: str):
        AvonError.__init__(self, f"Unknown axiom or rule schema '{name}'")
        self.name = name


class NotASentence(SemanticError):
    pass


class EvaluatesFalse(SemanticError):
    pass


# Files


class ModelError(AvonError):
    def __init__(self, line: int, reason: str):
        AvonError.__init__(self, f"Model file line {line}: {reason}")
        self.line = line
        self.reason = reason


class ScriptError(AvonError):
    def __init__(self, line: int, reason: str):
        AvonError.__init__(self, f"Proof script line {line}: {reason}")
        self.line = line
        self.reason = reason


class ParseError(ScriptError):
    pass


class DuplicateStepId(ScriptError):
    def __init__(self, line: int, step_id: int):
        ScriptError.__init__(self, line, f"step {step_id} is defined more than once")
        self.step_id = step_id


class ForwardReference(ScriptError):
    def __init__(self, line: int, step_id: int, premise: int):
        ScriptError.__init__(
            self, line, f"step {step_id} cites step {premise}, which does not come before it"
        )
        self.step_id = step_id
        self.premise = premise
