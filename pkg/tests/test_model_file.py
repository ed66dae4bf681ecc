import logging

import pytest

from avon.errors import ModelError
from avon.model_file import load_model, parse_model, parse_model_constants, parse_value
from avon.values import FALSE, TRUE, Atom, FuncV, SetV, make_set


def test_simple_constants():
    c = parse_model_constants("const A = {#1,#2}\nconst a = #3\nconst t = true\n")
    assert c == {"A": make_set([Atom(1), Atom(2)]), "a": Atom(3), "t": TRUE}


def test_no_trailing_newline():
    assert parse_model_constants("const f = false") == {"f": FALSE}


def test_comments_and_blank_lines():
    text = "# a comment\n\nconst A = {#1}  # trailing\n#another\n"
    assert parse_model_constants(text) == {"A": make_set([Atom(1)])}


def test_nested_sets():
    c = parse_model_constants("const S = {{}, {#0}, {{#1}}}")
    assert c["S"] == make_set([make_set([]), make_set([Atom(0)]), make_set([make_set([Atom(1)])])])


def test_function():
    c = parse_model_constants("const f = fun(2){ (#0,#1)->true ; (#1,#1)->{#2} }")
    f = c["f"]
    assert isinstance(f, FuncV)
    assert f.arity == 2
    assert f((Atom(0), Atom(1))) == TRUE
    assert f((Atom(1), Atom(1))) == make_set([Atom(2)])


def test_empty_function():
    c = parse_model_constants("const f = fun(1){}")
    assert c["f"] == FuncV(1, ())


def test_symbolic_names():
    c = parse_model_constants("const * = fun(1){ (#0)->#0 }\nconst | = {}")
    assert set(c) == {"*", "|"}


def test_duplicate_constant():
    with pytest.raises(ModelError) as e:
        parse_model_constants("const A = #1\nconst A = #2\n")
    assert e.value.line == 2


def test_arity_mismatch():
    with pytest.raises(ModelError) as e:
        parse_model_constants("const f = fun(2){ (#0)->#1 }")
    assert "1 arguments" in e.value.reason


def test_duplicate_domain_tuple():
    with pytest.raises(ModelError):
        parse_model_constants("const f = fun(1){ (#0)->#1 ; (#0)->#2 }")


def test_zero_arity():
    with pytest.raises(ModelError):
        parse_model_constants("const f = fun(0){}")


def test_syntax_error():
    with pytest.raises(ModelError) as e:
        parse_model_constants("const A = \n")
    assert e.value.line == 1


def test_parse_model_interpretation():
    interp = parse_model("const A = {#1}")
    assert "A" in interp
    assert interp["A"] == SetV((Atom(1),))


def test_load_model(corpora, caplog):
    caplog.set_level(logging.DEBUG)
    interp = load_model(corpora / "bocardo.lm")
    assert interp["B"] == make_set([Atom(2)])
    assert "bocardo.lm" in caplog.text


def test_load_nat6(nat6):
    times = nat6["*"]
    assert isinstance(times, FuncV)
    assert times((Atom(4), Atom(5))) == Atom(2)
    assert nat6["|"]((Atom(4), Atom(2))) == TRUE
    assert nat6["|"]((Atom(4), Atom(3))) == FALSE
    assert len(nat6["N"]) == 6


def test_parse_value():
    assert parse_value("#2") == Atom(2)
    assert parse_value("{#2, #1}") == make_set([Atom(1), Atom(2)])
    assert parse_value("true") == TRUE


def test_parse_value_bad():
    with pytest.raises(ModelError):
        parse_value("#")
