import pytest

from avon.ast import Apply, Const, OpApply, SetBuilder, SourceSpan, Var
from avon.errors import (
    DuplicateBinder,
    EmptyArgumentList,
    OutOfRange,
    Unbalanced,
    UnexpectedToken,
    UnknownSymbol,
)
from avon.syntax import (
    SymbolTable,
    TokenKind,
    depth,
    parse,
    parse_binders,
    parse_expr,
    render,
    satisfies_depth_conditions,
    tokenize,
)

table = SymbolTable(frozenset(["x", "y", "c"]), frozenset(["a", "b", "A", "B", "*", "|"]))


def test_tokenize_operator_application():
    kinds = [t.kind for t in tokenize("(∧)(a,b)", table)]
    assert kinds == [
        TokenKind.LPAREN,
        TokenKind.OPERATOR,
        TokenKind.RPAREN,
        TokenKind.LPAREN,
        TokenKind.CONSTANT,
        TokenKind.COMMA,
        TokenKind.CONSTANT,
        TokenKind.RPAREN,
    ]


def test_tokenize_set_builder_single_token():
    tokens = tokenize("{}(x:A,(∈)(x,B))", table)
    assert [t.kind for t in tokens[:5]] == [
        TokenKind.SETBUILDER,
        TokenKind.LPAREN,
        TokenKind.VARIABLE,
        TokenKind.COLON,
        TokenKind.CONSTANT,
    ]
    assert tokens[0].text == "{}"
    assert tokens[0].span == SourceSpan(0, 2)


def test_tokenize_whitespace_ignored():
    assert [t.text for t in tokenize(" ( ∧ ) ( a , b ) ", table)] == [
        t.text for t in tokenize("(∧)(a,b)", table)
    ]


def test_tokenize_unknown():
    with pytest.raises(UnknownSymbol) as e:
        tokenize("q", SymbolTable())
    assert e.value.offset == 0
    assert e.value.chunk == "q"


def test_tokenize_unknown_offset():
    with pytest.raises(UnknownSymbol) as e:
        tokenize("(∧)(a,qq)", table)
    assert e.value.offset == 6
    assert e.value.chunk == "qq"


def test_tokenize_longest_match():
    t = SymbolTable(frozenset(["x", "xx"]), frozenset())
    assert [tk.text for tk in tokenize("xx", t)] == ["xx"]


def test_tokenize_ascii_alias():
    tokens = tokenize("(/\\)(a,b)", table)
    assert tokens[1].kind == TokenKind.OPERATOR
    assert tokens[1].text == "∧"


def test_tokenize_implicit_variables():
    t = SymbolTable(frozenset(), frozenset(["A"]), implicit_variables=True)
    tokens = tokenize("(∈)(Xs,A)", t)
    assert tokens[4].kind == TokenKind.VARIABLE
    assert tokens[4].text == "Xs"
    assert tokens[6].kind == TokenKind.CONSTANT


def test_symbol_table_overlap():
    with pytest.raises(ValueError):
        SymbolTable(frozenset(["a"]), frozenset(["a"]))


def test_symbol_table_reserved():
    with pytest.raises(ValueError):
        SymbolTable(frozenset(["x,"]), frozenset())


def test_symbol_table_operator_name():
    with pytest.raises(ValueError):
        SymbolTable(frozenset(), frozenset(["∧"]))
    with pytest.raises(ValueError):
        SymbolTable(frozenset(["in"]), frozenset())


def test_parse_operator_application():
    assert parse_expr("(∧)(a,b)", table) == OpApply("∧", (Const("a"), Const("b")))


def test_parse_set_builder():
    assert parse_expr("{}(x:A,(∈)(x,B))", table) == SetBuilder(
        (("x", Const("A")),), OpApply("∈", (Var("x"), Const("B")))
    )


def test_parse_constant_head_application():
    e = parse_expr("(=)(y,(*)(x,c))", table)
    assert e == OpApply("=", (Var("y"), Apply(Const("*"), (Var("x"), Var("c")))))


def test_parse_multi_binder():
    e = parse_expr("{}(x:A,y:B,(=)(x,y))", table)
    assert isinstance(e, SetBuilder)
    assert e.variables == ("x", "y")


def test_parse_spans():
    e = parse_expr("(∧)(a,b)", table)
    assert e.span == SourceSpan(0, 8)
    assert isinstance(e, OpApply)
    assert e.args[1].span == SourceSpan(6, 7)
    assert e.span.contains(e.args[0].span)


def test_parse_unbalanced():
    with pytest.raises(Unbalanced):
        parse_expr("(a", table)


def test_parse_unbalanced_close():
    with pytest.raises(Unbalanced):
        parse_expr("a)", table)


def test_parse_empty_arguments():
    with pytest.raises(EmptyArgumentList):
        parse_expr("(a)()", table)


def test_parse_duplicate_binder():
    with pytest.raises(DuplicateBinder) as e:
        parse_expr("{}(x:A,x:B,x)", table)
    assert e.value.name == "x"


def test_parse_trailing():
    with pytest.raises(UnexpectedToken):
        parse_expr("a b", table)


def test_parse_empty():
    with pytest.raises(UnexpectedToken):
        parse(tokenize("", table))


def test_parse_set_builder_needs_binder():
    with pytest.raises(UnexpectedToken) as e:
        parse_expr("{}((¬)((∈)(x,x)),x)", table)
    assert "domain" in str(e.value)


def test_parse_operator_alone():
    with pytest.raises(UnexpectedToken):
        parse_expr("∧", table)


def test_render_atomic():
    assert render(Const("a")) == "a"


def test_render_canonical():
    e = parse_expr(" ( = ) ( y , ( * ) ( x , c ) ) ", table)
    assert render(e) == "(=)(y,(*)(x,c))"


def test_render_alias_normalized():
    assert render(parse_expr("(forall)({}(x:A,(in)(x,B)))", table)) == "(∀)({}(x:A,(∈)(x,B)))"


def test_render_parse_identity():
    text = "{}(x:A,y:{}(c:B,(|)(x,c)),(→)((∈)(y,A),(=)(x,y)))"
    assert render(parse_expr(text, table)) == text


def test_parse_binders():
    binders = parse_binders("x:A, y:(*)(x,a)", table)
    assert binders == (("x", Const("A")), ("y", Apply(Const("*"), (Var("x"), Const("a")))))


def test_parse_binders_empty():
    assert parse_binders("  ", table) == ()


def test_parse_binders_bad():
    with pytest.raises(UnexpectedToken):
        parse_binders("x:A, a", table)


def test_depth_first_position():
    assert depth("(∧)(a,b)", 1) == 0


def test_depth_last_position():
    t = "(∧)(a,(¬)(b))"
    assert depth(t, len(t)) == 1


def test_depth_out_of_range():
    with pytest.raises(OutOfRange):
        depth("a", 0)
    with pytest.raises(OutOfRange):
        depth("a", 2)


def test_depth_concatenation():
    # t = ϑ∥φ∥η with φ = "(¬)(a)" starting right after ϑ = "(∧)("
    theta, phi = "(∧)(", "(¬)(a)"
    t = theta + phi + ",b)"
    for alpha in range(1, len(phi) + 1):
        assert depth(t, len(theta) + alpha) == depth(t, len(theta) + 1) + depth(phi, alpha)


def test_depth_conditions_hold():
    assert satisfies_depth_conditions("{}(x:A,(∈)(x,B))")
    assert satisfies_depth_conditions("a")


def test_depth_conditions_fail():
    assert not satisfies_depth_conditions("a,b")
    assert not satisfies_depth_conditions("(a")
    assert not satisfies_depth_conditions("")
