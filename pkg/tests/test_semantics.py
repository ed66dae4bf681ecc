import random
from concurrent.futures import ThreadPoolExecutor

import pytest

from avon.ast import Const, Var
from avon.calculus import close
from avon.errors import (
    EnumerationLimitExceeded,
    IllFormedContext,
    NotAnExpression,
    NotASentence,
    PreconditionViolated,
)
from avon.generate import Fresh, random_context, random_model, random_sentence
from avon.semantics import (
    EMPTY_CONTEXT,
    EMPTY_STATE,
    OPERATOR_TABLE,
    Context,
    ExprCase,
    Interpretation,
    State,
    check_expr,
    check_sentence,
    classify,
    evaluate_closed,
    holds,
    is_context,
    is_expr,
    is_sentence,
    is_state,
    meaning,
    meanings,
    states,
)
from avon.syntax import SymbolTable, parse_binders, parse_expr
from avon.values import FALSE, TRUE, Atom, FuncV, make_set

table = SymbolTable(
    frozenset(["x", "y", "z", "w", "c", "X"]), frozenset(["A", "B", "a", "b", "U", "N", "*", "|"])
)


def e(text: str):
    return parse_expr(text, table)


def ctx(text: str) -> Context:
    return Context(parse_binders(text, table))


def test_states_empty_context(sets_model):
    assert states(EMPTY_CONTEXT, sets_model) == [EMPTY_STATE]


def test_states_single_binder(sets_model):
    assert states(ctx("x:A"), sets_model) == [
        State.of([("x", Atom(1))]),
        State.of([("x", Atom(2))]),
    ]


def test_states_product(sets_model):
    assert len(states(ctx("x:A, y:U"), sets_model)) == 6


def test_states_dependent(sets_model):
    # {}(w:U,x) is the singleton {x}
    found = states(ctx("x:A, y:{}(w:U,x)"), sets_model)
    assert [(s["x"], s["y"]) for s in found] == [(Atom(1), Atom(1)), (Atom(2), Atom(2))]


def test_states_empty_domain():
    interp = Interpretation({"A": make_set([])})
    assert states(ctx("x:A"), interp) == []


def test_context_duplicate_variable(sets_model):
    with pytest.raises(IllFormedContext):
        states(ctx("x:A").extend("x", Const("B")), sets_model)


def test_context_domain_not_a_set(sets_model):
    with pytest.raises(IllFormedContext) as err:
        states(ctx("x:A, y:x"), sets_model)
    assert err.value.witness == State.of([("x", Atom(1))])


def test_context_domain_not_an_expression(sets_model):
    assert not is_context(ctx("x:y"), sets_model)


def test_context_str():
    assert str(EMPTY_CONTEXT) == "ε"
    assert str(ctx("x:A, y:B")) == "[x:A, y:B]"


def test_state_str():
    assert str(State.of([("x", Atom(1)), ("y", TRUE)])) == "(x, #1) ∥ (y, true)"


def test_state_mismatched():
    with pytest.raises(ValueError):
        State(("x",), ())


def test_enumeration_limit(sets_model):
    interp = Interpretation(sets_model.constants, max_states=5)
    with pytest.raises(EnumerationLimitExceeded):
        states(ctx("x:U, y:U"), interp)


def test_enumeration_limit_env(monkeypatch, sets_model):
    monkeypatch.setenv("AVON_MAX_STATES", "3")
    interp = Interpretation(sets_model.constants)
    assert interp.max_states == 3
    with pytest.raises(EnumerationLimitExceeded):
        states(ctx("x:U, y:U"), interp)


def test_classify_variable(sets_model):
    assert classify(ctx("x:A"), Var("x"), sets_model).case == ExprCase.CONTEXT_VARIABLE


def test_classify_constant():
    assert classify(EMPTY_CONTEXT, Const("a")).case == ExprCase.CONSTANT


def test_classify_unknown_variable():
    with pytest.raises(NotAnExpression):
        classify(EMPTY_CONTEXT, Var("X"))


def test_classify_application(nat6):
    c = classify(ctx("x:N"), e("(*)(x,x)"), nat6)
    assert c.case == ExprCase.APPLICATION
    assert c.parts == (Const("*"), Var("x"), Var("x"))


def test_classify_operator(sets_model):
    c = classify(EMPTY_CONTEXT, e("(∈)(a,A)"), sets_model)
    assert c.case == ExprCase.OPERATOR_APPLICATION
    assert len(c.parts) == 2


def test_classify_set_builder(sets_model):
    c = classify(ctx("z:U"), e("{}(x:A,y:B,(=)(x,y))"), sets_model)
    assert c.case == ExprCase.SET_BUILDER
    assert c.contexts == (ctx("z:U, x:A"), ctx("z:U, x:A, y:B"))
    assert c.parts == (Const("A"), Const("B"), e("(=)(x,y)"))


def test_classify_checks_with_model(sets_model):
    with pytest.raises(NotAnExpression):
        classify(EMPTY_CONTEXT, e("(¬)(A)"), sets_model)


def test_is_expr_divides(nat6):
    assert is_expr(ctx("x:N, y:N, z:N"), e("(|)(x,y)"), nat6)


def test_is_expr_constant(sets_model):
    assert is_expr(EMPTY_CONTEXT, Const("A"), sets_model)


def test_is_expr_uninterpreted_constant(sets_model):
    assert not is_expr(EMPTY_CONTEXT, Const("N"), sets_model)


def test_is_expr_operator_not_applicable(sets_model):
    with pytest.raises(NotAnExpression) as err:
        check_expr(ctx("x:U"), e("(∈)(a,x)"), sets_model)
    assert err.value.witness == State.of([("x", Atom(1))])


def test_is_expr_wrong_arity(sets_model):
    assert not is_expr(EMPTY_CONTEXT, e("(¬)((∈)(a,A),(∈)(a,A))"), sets_model)


def test_is_expr_outside_function_domain():
    f = FuncV(1, (((Atom(1),), Atom(1)),))
    interp = Interpretation({"A": make_set([Atom(1), Atom(2)]), "a": f})
    assert is_expr(ctx("x:A"), e("(a)(x)"), interp) is False
    assert not is_context(ctx("x:{}(y:A,(a)(y))"), interp)


def test_is_expr_head_not_function(sets_model):
    assert not is_expr(EMPTY_CONTEXT, e("(A)(a)"), sets_model)


def test_is_expr_shadowing_rejected(sets_model):
    assert not is_expr(ctx("x:A"), e("{}(x:B,x)"), sets_model)


def test_meaning_variable(sets_model):
    sigma = State.of([("x", Atom(2))])
    assert meaning(ctx("x:A"), Var("x"), sigma, sets_model) == Atom(2)


def test_meaning_membership(sets_model):
    interp = Interpretation({"a": Atom(1), "A": make_set([Atom(2)])})
    assert meaning(EMPTY_CONTEXT, e("(∈)(a,A)"), EMPTY_STATE, interp) == FALSE


def test_meaning_forall(sets_model):
    assert evaluate_closed(e("(∀)({}(x:A,(∈)(x,A)))"), sets_model) == TRUE


def test_meaning_empty_quantifiers():
    interp = Interpretation({"A": make_set([])})
    assert evaluate_closed(e("(∀)({}(x:A,(¬)((=)(x,x))))"), interp) == TRUE
    assert evaluate_closed(e("(∃)({}(x:A,(=)(x,x)))"), interp) == FALSE


def test_meaning_set_builder(sets_model):
    # {x ∈ A : x ∈ B} collects truth values, one per state
    v = evaluate_closed(e("{}(x:A,(∈)(x,B))"), sets_model)
    assert v == make_set([TRUE, FALSE])


def test_meaning_image(sets_model):
    v = evaluate_closed(e("{}(x:A,y:B,(=)(x,y))"), sets_model)
    assert v == make_set([TRUE, FALSE])


def test_meaning_bad_state(sets_model):
    with pytest.raises(PreconditionViolated):
        meaning(ctx("x:A"), Var("x"), State.of([("x", Atom(3))]), sets_model)


def test_meaning_not_expression(sets_model):
    with pytest.raises(PreconditionViolated):
        meaning(ctx("x:A"), Var("y"), State.of([("x", Atom(1))]), sets_model)


def test_meanings_aligned(sets_model):
    k = ctx("x:A")
    assert meanings(k, e("(∈)(x,B)"), sets_model) == (FALSE, TRUE)


def test_is_state(sets_model):
    k = ctx("x:A")
    assert is_state(k, State.of([("x", Atom(1))]), sets_model)
    assert not is_state(k, State.of([("y", Atom(1))]), sets_model)


def test_sentence_equality(sets_model):
    assert is_sentence(ctx("x:A"), e("(=)(x,B)"), sets_model)


def test_sentence_membership(sets_model):
    assert is_sentence(ctx("x:U"), e("(∈)(x,A)"), sets_model)


def test_set_constant_not_sentence(sets_model):
    assert is_expr(EMPTY_CONTEXT, Const("A"), sets_model)
    assert not is_sentence(EMPTY_CONTEXT, Const("A"), sets_model)


def test_not_sentence_witness(sets_model):
    with pytest.raises(NotASentence) as err:
        check_sentence(ctx("x:A"), Var("x"), sets_model)
    assert err.value.witness == State.of([("x", Atom(1))])


def test_holds(nat6):
    assert holds(e("(∀)({}(x:N,(|)(x,x)))"), nat6)
    assert not holds(e("(∀)({}(x:N,y:N,(|)(x,y)))"), nat6)


def test_memo_is_reused(sets_model):
    k = ctx("x:A")
    first = meanings(k, e("(∈)(x,B)"), sets_model)
    assert meanings(k, e("(∈)(x,B)"), sets_model) is first
    sets_model.clear_cache()
    assert meanings(k, e("(∈)(x,B)"), sets_model) is not first


def test_operator_table_complete():
    assert set(OPERATOR_TABLE) == {"∧", "∨", "→", "¬", "∀", "∃", "∈", "=", "↔"}


def test_memo_tables_across_threads():
    # Many threads evaluating over one interpretation agree with a fresh, single-threaded one
    rng = random.Random(5)
    interp = random_model(rng)
    fresh = Fresh()
    sentences = [
        close(k, random_sentence(rng, k.dom, fresh))
        for k in (random_context(rng, rng.randint(0, 3), fresh) for _ in range(40))
    ]
    with ThreadPoolExecutor(max_workers=8) as pool:
        shared = list(pool.map(lambda s: evaluate_closed(s, interp), sentences * 4))
    alone = Interpretation(interp.constants)
    assert shared == [evaluate_closed(s, alone) for s in sentences] * 4
