# The proofs shipped in corpora/, checked end to end.
import itertools

import pytest

from avon.ast import OpApply
from avon.errors import ParseError
from avon.proof_script import load_script
from avon.proofcheck import check_proof
from avon.semantics import Context, State, holds, meaning
from avon.syntax import SymbolTable, parse_binders, parse_expr
from avon.values import TRUE, Atom

NAT6_SYMBOLS = SymbolTable(frozenset(["x", "y", "z"]), frozenset(["N", "*", "|"]))


def test_bocardo(corpora):
    v = check_proof(load_script(corpora / "bocardo.lp"))
    assert v.accepted, [str(d) for d in v.steps if not d.verified]
    assert v.summary() == "14/14 steps verified"
    assert v.post_check_failures == []


def test_bocardo_conclusion(corpora):
    script = load_script(corpora / "bocardo.lp")
    expected = parse_expr(
        "(→)((∧)((∃)({}(x:A,(¬)((∈)(x,B)))),(∀)({}(y:C,(∈)(y,B)))),"
        "(∃)({}(z:A,(¬)((∈)(z,C)))))",
        script.symbols,
    )
    assert script.goal == expected
    assert holds(expected, script.interpretation)


def test_bocardo_broken(corpora):
    v = check_proof(load_script(corpora / "bocardo-broken.lp"))
    assert not v.accepted
    assert v.first_failure.step_id == 7
    assert v.first_failure.message == "cites step 6, which is not in the script"
    assert v.summary() == "5/13 steps verified"


def without_step(corpora, tmp_path, name: str, model: str, drop: int):
    "Copy of a corpus script with one step removed, its model path made absolute"
    text = (corpora / name).read_text(encoding="utf-8").replace(
        f'model "{model}"', f'model "{(corpora / model).as_posix()}"'
    )
    lines = text.splitlines()
    start = next(i for i, line in enumerate(lines) if line.startswith(f"step {drop}:"))
    del lines[start : start + 2]
    path = tmp_path / "cut.lp"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.mark.parametrize("drop", range(1, 14))
def test_bocardo_without_a_step(corpora, tmp_path, drop):
    # Every step is used, so removing any one fails a later step
    path = without_step(corpora, tmp_path, "bocardo.lp", "bocardo.lm", drop)
    v = check_proof(load_script(path))
    assert not v.accepted
    assert v.first_failure.step_id > drop
    assert v.first_failure.message == f"cites step {drop}, which is not in the script"


def test_bocardo_without_the_last_step(corpora, tmp_path):
    with pytest.raises(ParseError, match="qed 14"):
        load_script(without_step(corpora, tmp_path, "bocardo.lp", "bocardo.lm", 14))


@pytest.mark.parametrize("name", ["bocardo.lp", "divides.lp"])
def test_every_step_is_cited(corpora, name):
    script = load_script(corpora / name)
    cited = {p for s in script.steps for p in s.justification.premises}
    assert [s.id for s in script.steps[:-1] if s.id not in cited] == []
    statements = [s.statement for s in script.steps]
    assert len(set(statements)) == len(statements)


def test_divides(corpora):
    v = check_proof(load_script(corpora / "divides.lp"))
    assert v.accepted, [str(d) for d in v.steps if not d.verified]
    assert v.summary() == "24/24 steps verified"


def test_divides_semantic_steps(corpora):
    # Only the definition of (|) and associativity of (*) come from the model
    script = load_script(corpora / "divides.lp")
    semantic = [s.id for s in script.steps if s.justification.schema == "semantic"]
    assert semantic == [1, 5, 12, 16]
    matrices = {}
    for i in semantic:
        e = script.step(i).statement
        while isinstance(e, OpApply) and e.op == "∀":
            e = e.args[0].body
        matrices[i] = e.op
    assert matrices == {1: "↔", 5: "↔", 12: "=", 16: "↔"}


def test_divides_goal_is_transitivity(corpora):
    script = load_script(corpora / "divides.lp")
    expected = parse_expr(
        "(∀)({}(x:N,(∀)({}(y:N,(∀)({}(z:N,(→)((∧)((|)(x,y),(|)(y,z)),(|)(x,z))))))))",
        script.symbols,
    )
    assert script.goal == expected


def test_divides_transitive_in_model(nat6):
    # Brute force over all 6³ triples
    k = Context(parse_binders("x:N, y:N, z:N", NAT6_SYMBOLS))
    body = parse_expr("(→)((∧)((|)(x,y),(|)(y,z)),(|)(x,z))", NAT6_SYMBOLS)
    count = 0
    for a, b, c in itertools.product(range(6), repeat=3):
        sigma = State(("x", "y", "z"), (Atom(a), Atom(b), Atom(c)))
        assert meaning(k, body, sigma, nat6) == TRUE, (a, b, c)
        count += 1
    assert count == 216
