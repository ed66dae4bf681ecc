from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .ast.nodes import OPERATORS, Apply, Const, Expr, OpApply, SetBuilder, SourceSpan, Var
from .errors import (
    DuplicateBinder,
    EmptyArgumentList,
    OutOfRange,
    Unbalanced,
    UnexpectedToken,
    UnknownSymbol,
)

# ASCII spellings accepted on input. They are normalized to the canonical symbol.
OPERATOR_ALIASES: Dict[str, str] = {
    "/\\": "∧",
    "\\/": "∨",
    "->": "→",
    "not": "¬",
    "forall": "∀",
    "exists": "∃",
    "in": "∈",
    "<->": "↔",
}

_RESERVED_CHARS = "(),:{}"
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class TokenKind(Enum):
    VARIABLE = "variable"
    CONSTANT = "constant"
    OPERATOR = "operator"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    COLON = ":"
    SETBUILDER = "{}"


_PUNCTUATION: Dict[str, TokenKind] = {
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
    ":": TokenKind.COLON,
    "{}": TokenKind.SETBUILDER,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan

    def __str__(self) -> str:
        return self.text


def _check_name(name: str):
    if len(name) == 0:
        raise ValueError("Symbol names may not be empty")
    if any(c.isspace() for c in name):
        raise ValueError(f"Symbol name '{name}' contains whitespace")
    if any(c in _RESERVED_CHARS for c in name):
        raise ValueError(
            f"Symbol name '{name}' contains one of the reserved characters ( ) , : {{ }}"
        )
    if name in OPERATORS or name in OPERATOR_ALIASES:
        raise ValueError(f"Symbol name '{name}' is an operator")


@dataclass(frozen=True)
class SymbolTable:
    """The variables and constants an expression may mention. The operators
    are fixed.

    Args:
        variables           Names usable as variables
        constants           Names usable as constants (they get their meaning
                            from an interpretation)
        implicit_variables  If true, identifier-like words that match nothing
                            declared are read as variables.
    """

    variables: FrozenSet[str] = frozenset()
    constants: FrozenSet[str] = frozenset()
    implicit_variables: bool = False
    _lexicon: Dict[str, Tuple[TokenKind, str]] = field(
        default_factory=dict, init=False, compare=False, repr=False, hash=False
    )

    def __post_init__(self):
        object.__setattr__(self, "variables", frozenset(self.variables))
        object.__setattr__(self, "constants", frozenset(self.constants))
        for n in self.variables | self.constants:
            _check_name(n)
        both = self.variables & self.constants
        if len(both) > 0:
            raise ValueError(f"Names declared as both variable and constant: {sorted(both)}")

        lexicon: Dict[str, Tuple[TokenKind, str]] = {}
        for p, k in _PUNCTUATION.items():
            lexicon[p] = (k, p)
        for o in OPERATORS:
            lexicon[o] = (TokenKind.OPERATOR, o)
        for a, o in OPERATOR_ALIASES.items():
            lexicon[a] = (TokenKind.OPERATOR, o)
        for v in self.variables:
            lexicon[v] = (TokenKind.VARIABLE, v)
        for c in self.constants:
            lexicon[c] = (TokenKind.CONSTANT, c)
        object.__setattr__(self, "_lexicon", lexicon)

    @property
    def operators(self) -> FrozenSet[str]:
        return frozenset(OPERATORS)

    @property
    def longest_name(self) -> int:
        return max(len(n) for n in self._lexicon)

    def lookup(self, text: str) -> Optional[Tuple[TokenKind, str]]:
        return self._lexicon.get(text)

    def with_variables(self, names: Iterable[str]) -> SymbolTable:
        "A copy of this table with extra variables declared"
        return SymbolTable(
            self.variables | frozenset(names), self.constants, self.implicit_variables
        )


def _bad_chunk(text: str, pos: int) -> str:
    end = pos
    while end < len(text) and not text[end].isspace() and text[end] not in _RESERVED_CHARS:
        end += 1
    return text[pos : max(end, pos + 1)]


def tokenize(text: str, table: SymbolTable) -> List[Token]:
    """Split `text` into tokens, longest match first against the symbols of
    `table`. Whitespace between tokens is ignored and `{}` is a single token.

    Raises:
        UnknownSymbol   A chunk of the text matches nothing in the table.
    """
    tokens: List[Token] = []
    longest = table.longest_name
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue

        best: Optional[Tuple[TokenKind, str]] = None
        best_len = 0
        for size in range(min(longest, len(text) - pos), 0, -1):
            hit = table.lookup(text[pos : pos + size])
            if hit is not None:
                best, best_len = hit, size
                break

        if table.implicit_variables:
            m = _IDENTIFIER.match(text, pos)
            if m is not None and len(m.group(0)) > best_len:
                best, best_len = (TokenKind.VARIABLE, m.group(0)), len(m.group(0))

        if best is None:
            raise UnknownSymbol(_bad_chunk(text, pos), pos)
        tokens.append(Token(best[0], best[1], SourceSpan(pos, pos + best_len)))
        pos += best_len
    return tokens


class _token_reader:
    "Cursor over a token list used by the recursive descent parser"

    def __init__(self, tokens: List[Token], text_length: int):
        self._tokens = tokens
        self._pos = 0
        self._end = text_length

    def peek(self, ahead: int = 0) -> Optional[Token]:
        p = self._pos + ahead
        return self._tokens[p] if p < len(self._tokens) else None

    def next(self, what: str) -> Token:
        t = self.peek()
        if t is None:
            raise UnexpectedToken(f"Expected {what} but the expression ended", self._end)
        self._pos += 1
        return t

    def expect(self, kind: TokenKind, what: str) -> Token:
        t = self.next(what)
        if t.kind != kind:
            raise UnexpectedToken(f"Expected {what} but found '{t.text}'", t.span.start)
        return t

    @property
    def done(self) -> bool:
        return self._pos >= len(self._tokens)


def _check_balance(tokens: List[Token], text_length: int):
    open_at: List[int] = []
    for t in tokens:
        if t.kind == TokenKind.LPAREN:
            open_at.append(t.span.start)
        elif t.kind == TokenKind.RPAREN:
            if len(open_at) == 0:
                raise Unbalanced("Closing ')' without a matching '('", t.span.start)
            open_at.pop()
    if len(open_at) > 0:
        raise Unbalanced("'(' is never closed", open_at[-1])


def _parse_expr(r: _token_reader) -> Expr:
    t = r.next("an expression")
    if t.kind == TokenKind.VARIABLE:
        return Var(t.text, span=t.span)
    if t.kind == TokenKind.CONSTANT:
        return Const(t.text, span=t.span)
    if t.kind == TokenKind.SETBUILDER:
        return _parse_set_builder(r, t)
    if t.kind == TokenKind.LPAREN:
        return _parse_compound(r, t)
    raise UnexpectedToken(f"Expected an expression but found '{t.text}'", t.span.start)


def _parse_arguments(r: _token_reader) -> Tuple[Tuple[Expr, ...], Token]:
    start = r.expect(TokenKind.LPAREN, "'(' to open the argument list")
    first = r.peek()
    if first is not None and first.kind == TokenKind.RPAREN:
        raise EmptyArgumentList("Argument list is empty", start.span.start)
    args = [_parse_expr(r)]
    while True:
        t = r.next("',' or ')'")
        if t.kind == TokenKind.RPAREN:
            return tuple(args), t
        if t.kind != TokenKind.COMMA:
            raise UnexpectedToken(f"Expected ',' or ')' but found '{t.text}'", t.span.start)
        args.append(_parse_expr(r))


def _parse_compound(r: _token_reader, lparen: Token) -> Expr:
    head_token = r.peek()
    if head_token is not None and head_token.kind == TokenKind.OPERATOR:
        r.next("an operator")
        r.expect(TokenKind.RPAREN, f"')' after operator {head_token.text}")
        args, closing = _parse_arguments(r)
        return OpApply(
            head_token.text, args, span=SourceSpan(lparen.span.start, closing.span.end)
        )

    head = _parse_expr(r)
    r.expect(TokenKind.RPAREN, "')' to close the applied expression")
    args, closing = _parse_arguments(r)
    return Apply(head, args, span=SourceSpan(lparen.span.start, closing.span.end))


def _at_binder(r: _token_reader) -> bool:
    v, c = r.peek(), r.peek(1)
    return (
        v is not None
        and v.kind == TokenKind.VARIABLE
        and c is not None
        and c.kind == TokenKind.COLON
    )


def _parse_binder_list(r: _token_reader, stop_at_body: bool) -> List[Tuple[str, Expr]]:
    """Read `x1:φ1, x2:φ2, ...`. For a set-builder (`stop_at_body`) the list ends
    at the first comma not followed by `var:`; otherwise it runs to the end.
    """
    binders: List[Tuple[str, Expr]] = []
    seen = set()
    while _at_binder(r):
        v = r.next("a variable")
        r.next("':'")
        if v.text in seen:
            raise DuplicateBinder(v.text, v.span.start)
        seen.add(v.text)
        binders.append((v.text, _parse_expr(r)))
        if stop_at_body:
            r.expect(TokenKind.COMMA, "',' after the binder")
        else:
            if r.done:
                break
            r.expect(TokenKind.COMMA, "',' between binders")
            if not _at_binder(r):
                t = r.peek()
                where = t.span.start if t is not None else 0
                raise UnexpectedToken("Expected another binder 'variable:domain'", where)
    return binders


def _parse_set_builder(r: _token_reader, start: Token) -> Expr:
    lparen = r.expect(TokenKind.LPAREN, "'(' after {}")
    first = r.peek()
    if first is not None and first.kind == TokenKind.RPAREN:
        raise EmptyArgumentList("Set-builder has no binders and no body", lparen.span.start)
    if not _at_binder(r):
        where = first.span.start if first is not None else lparen.span.end
        raise UnexpectedToken(
            "Not a legal expression: a set-builder must start with a binder "
            "'variable:domain', every variable it introduces needs a domain",
            where,
        )
    binders = _parse_binder_list(r, stop_at_body=True)
    body = _parse_expr(r)
    closing = r.expect(TokenKind.RPAREN, "')' to close the set-builder")
    return SetBuilder(tuple(binders), body, span=SourceSpan(start.span.start, closing.span.end))


def parse(tokens: List[Token], text_length: Optional[int] = None) -> Expr:
    """Build the unique expression tree for a token stream.

    Raises:
        Unbalanced          Round brackets do not pair up
        EmptyArgumentList   `()` where arguments are required
        DuplicateBinder     A set-builder binds the same variable twice
        UnexpectedToken     Anything else that does not fit the grammar
    """
    end = text_length if text_length is not None else (tokens[-1].span.end if tokens else 0)
    if len(tokens) == 0:
        raise UnexpectedToken("Empty expression", 0)
    _check_balance(tokens, end)
    r = _token_reader(tokens, end)
    e = _parse_expr(r)
    extra = r.peek()
    if extra is not None:
        raise UnexpectedToken(
            f"Unexpected '{extra.text}' after a complete expression", extra.span.start
        )
    return e


def parse_expr(text: str, table: SymbolTable) -> Expr:
    "Tokenize and parse `text`"
    return parse(tokenize(text, table), len(text))


def parse_binders(text: str, table: SymbolTable) -> Tuple[Tuple[str, Expr], ...]:
    """Parse a binder list `x1:φ1, ..., xm:φm` (possibly empty) as used for
    contexts on the command line and in proof scripts.
    """
    tokens = tokenize(text, table)
    if len(tokens) == 0:
        return ()
    _check_balance(tokens, len(text))
    r = _token_reader(tokens, len(text))
    if not _at_binder(r):
        raise UnexpectedToken("Expected a binder 'variable:domain'", tokens[0].span.start)
    binders = _parse_binder_list(r, stop_at_body=False)
    extra = r.peek()
    if extra is not None:
        raise UnexpectedToken(f"Unexpected '{extra.text}' after the binders", extra.span.start)
    return tuple(binders)


def render(e: Expr) -> str:
    "Canonical, whitespace free string for `e`"
    if isinstance(e, (Const, Var)):
        return e.name
    if isinstance(e, Apply):
        return f"({render(e.head)})({','.join(render(a) for a in e.args)})"
    if isinstance(e, OpApply):
        return f"({e.op})({','.join(render(a) for a in e.args)})"
    if isinstance(e, SetBuilder):
        binders = ",".join(f"{v}:{render(d)}" for v, d in e.binders)
        return f"{{}}({binders},{render(e.body)})"
    raise ValueError(f"Unknown expression node {type(e).__name__}")


def depth(text: str, alpha: int) -> int:
    """Number of '(' minus number of ')' strictly before the 1-based position
    `alpha` of `text`.
    """
    if alpha < 1 or alpha > len(text):
        raise OutOfRange(f"Position {alpha} is outside 1..{len(text)}")
    before = text[: alpha - 1]
    return before.count("(") - before.count(")")


def satisfies_depth_conditions(text: str) -> bool:
    """The unique readability conditions on a rendered expression: it does not
    end with '(', it ends at depth 1 if its last character is ')' and at
    depth 0 otherwise, and every ':' ',' ')' sits at depth 1 or more.
    """
    if len(text) == 0:
        return False
    last = len(text)
    if text[-1] == "(":
        return False
    if depth(text, last) != (1 if text[-1] == ")" else 0):
        return False
    level = 0
    for c in text:
        if c in ":,)" and level < 1:
            return False
        if c == "(":
            level += 1
        elif c == ")":
            level -= 1
    return True
