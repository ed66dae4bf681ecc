"""Axiom and rule schemas, and the checker for their instances.

A proof step names a schema, the binders its γ-closures range over and the
values of the schema's metavariables. The checker rebuilds the premises and
the conclusion from that data, compares them with the sentences of the
script, and then checks the side conditions of the schema against the
model.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .ast.nodes import Expr, SetBuilder, Var, op
from .ast.variables import bound_vars
from .errors import (
    EvaluatesFalse,
    IllFormedContext,
    NotAnExpression,
    NotASentence,
    ShapeMismatch,
    SideConditionViolated,
    UnknownSchema,
)
from .semantics import (
    EMPTY_CONTEXT,
    Context,
    Interpretation,
    check_context,
    check_expr,
    check_sentence,
    evaluate_closed,
    meanings,
    states,
)
from .substitution import SubstRequest, check_side_conditions, replace_variable
from .values import TRUE, SetV, Truth, format_value

MetaValue = Union[Expr, int]


class SchemaId(Enum):
    A5_2 = "A5.2"
    A5_16 = "A5.16"
    R3_7 = "R3.7"
    R5_1 = "R5.1"
    R5_3 = "R5.3"
    R5_4 = "R5.4"
    R5_5 = "R5.5"
    R5_6 = "R5.6"
    R5_7 = "R5.7"
    R5_8 = "R5.8"
    R5_9 = "R5.9"
    R5_10 = "R5.10"
    R5_11 = "R5.11"
    R5_12 = "R5.12"
    R5_13 = "R5.13"
    R5_14 = "R5.14"
    R5_15 = "R5.15"
    R5_17 = "R5.17"
    R5_18 = "R5.18"
    R5_19 = "R5.19"
    R5_20 = "R5.20"
    R5_21 = "R5.21"
    SEMANTIC = "semantic"

    @classmethod
    def parse(cls, name: str) -> SchemaId:
        try:
            return cls(name)
        except ValueError:
            raise UnknownSchema(name) from None


@dataclass(frozen=True)
class Instantiation:
    """A schema with everything it is parameterized on pinned down.

    Args:
        schema      Which axiom or rule
        binders     The binders of the γ-closures (the context `k`)
        metavars    Values of the schema metavariables (`phi`, `psi`, `psi1`,
                    `psi2`, `chi`, `theta`, `t`, `tprime` are expressions,
                    `i` is a 1-based index)
    """

    schema: SchemaId
    binders: Context = EMPTY_CONTEXT
    metavars: Mapping[str, MetaValue] = field(default_factory=dict)


@dataclass(frozen=True)
class InstanceReport:
    "An accepted instance: the schema, which alternative form matched, what was checked"

    schema: SchemaId
    form: int
    checks: Tuple[str, ...]


def close(binders: Context, body: Expr) -> Expr:
    "γ[x1:φ1, ..., xm:φm, body] with no checks; the empty binder list gives `body`"
    result = body
    for v, d in reversed(binders.entries):
        result = op("∀", SetBuilder(((v, d),), result))
    return result


def gamma(binders: Context, phi: Expr, interp: Optional[Interpretation] = None) -> Expr:
    """The universal closure γ[x1:φ1, ..., xm:φm, φ] = (∀)({}(x1:φ1, γ[x2:φ2, ..., φ])).

    With an interpretation the body is first checked to be a sentence over
    the binders.

    Raises:
        NotASentence
    """
    if interp is not None:
        try:
            check_sentence(binders, phi, interp)
        except IllFormedContext as e:
            raise NotASentence(f"Binders {binders} do not form a valid context: {e}") from e
    return close(binders, phi)


class _Shape:
    """What a schema's shape builder gets to work with: the binders, their
    split into `h` and the last binder, and the metavariables.
    """

    def __init__(self, inst: Instantiation):
        self.inst = inst
        self.k = inst.binders
        self.n = len(self.k)
        self.m = inst.metavars
        if self.n >= 1:
            self.h = self.k.prefix(self.n - 1)
            self.x, self.phi_x = self.k.entries[-1]

    def __getattr__(self, name: str) -> MetaValue:
        m = self.__dict__.get("m", {})
        if name in m:
            return m[name]
        raise AttributeError(name)

    def g(self, body: Expr) -> Expr:
        return close(self.k, body)

    def gh(self, body: Expr) -> Expr:
        return close(self.h, body)

    def sub(self, phi: Expr, t: Expr) -> Expr:
        "φ{x/t} for the last binder `x`"
        return replace_variable(phi, self.x, t)

    def exists(self, body: Expr) -> Expr:
        return op("∃", SetBuilder(((self.x, self.phi_x),), body))

    def forall(self, body: Expr) -> Expr:
        return op("∀", SetBuilder(((self.x, self.phi_x),), body))


Form = Tuple[List[Expr], Expr]


def _imp(a: Expr, b: Expr) -> Expr:
    return op("→", a, b)


def _and(a: Expr, b: Expr) -> Expr:
    return op("∧", a, b)


def _not(a: Expr) -> Expr:
    return op("¬", a)


def _eq(a: Expr, b: Expr) -> Expr:
    return op("=", a, b)


# Shape builders. Each returns the admissible (premises, conclusion) forms.


def _a5_2(s: _Shape) -> List[Form]:
    return [
        ([], s.g(_imp(_and(s.phi, s.psi), s.phi))),
        ([], s.g(_imp(_and(s.phi, s.psi), s.psi))),
    ]


def _a5_16(s: _Shape) -> List[Form]:
    i = s.i
    if not isinstance(i, int) or i < 1 or i > s.n:
        raise SideConditionViolated("index", f"i({i}) is not in 1..{s.n}")
    x_i, phi_i = s.k.entries[i - 1]
    return [([], s.g(op("∈", Var(x_i), phi_i)))]


def _r3_7(s: _Shape) -> List[Form]:
    return [
        (
            [s.g(_imp(s.phi, s.psi1)), s.g(_imp(s.phi, s.psi2))],
            s.g(_imp(s.phi, _and(s.psi1, s.psi2))),
        )
    ]


def _r5_1(s: _Shape) -> List[Form]:
    premise = s.g(op("↔", s.phi, s.psi))
    return [([premise], s.g(_imp(s.phi, s.psi))), ([premise], s.g(_imp(s.psi, s.phi)))]


def _r5_3(s: _Shape) -> List[Form]:
    return [
        ([s.g(_imp(s.phi, s.psi)), s.g(_imp(s.psi, s.chi))], s.g(_imp(s.phi, s.chi))),
    ]


def _r5_4(s: _Shape) -> List[Form]:
    return [
        (
            [s.gh(_imp(s.chi, s.sub(s.phi, s.t))), s.gh(_imp(s.chi, _eq(s.t, s.tprime)))],
            s.gh(_imp(s.chi, s.sub(s.phi, s.tprime))),
        )
    ]


def _r5_5(s: _Shape) -> List[Form]:
    return [([s.g(s.phi)], s.g(_imp(s.psi, s.phi)))]


def _r5_6(s: _Shape) -> List[Form]:
    return [
        (
            [s.g(_imp(s.theta, _eq(s.phi, s.psi))), s.g(_imp(s.theta, _eq(s.psi, s.chi)))],
            s.g(_imp(s.theta, _eq(s.phi, s.chi))),
        )
    ]


def _r5_7(s: _Shape) -> List[Form]:
    return [([s.gh(_imp(s.chi, s.sub(s.phi, s.t)))], s.gh(_imp(s.chi, s.exists(s.phi))))]


def _r5_9(s: _Shape) -> List[Form]:
    return [([s.g(_imp(_and(s.phi, s.psi), s.chi))], s.g(_imp(s.phi, _imp(s.psi, s.chi))))]


def _r5_10(s: _Shape) -> List[Form]:
    return [([s.g(_imp(s.psi, s.phi))], s.gh(_imp(s.psi, s.forall(s.phi))))]


def _r5_11(s: _Shape) -> List[Form]:
    return [
        (
            [s.gh(_imp(s.chi, s.forall(_imp(s.psi, s.phi))))],
            s.gh(_imp(s.chi, _imp(s.exists(s.psi), s.phi))),
        )
    ]


def _r5_12(s: _Shape) -> List[Form]:
    return [([s.g(_imp(s.psi, s.phi))], s.gh(_imp(s.exists(s.psi), s.phi)))]


def _r5_13(s: _Shape) -> List[Form]:
    return [
        ([s.g(_imp(s.phi, s.psi)), s.g(_imp(s.phi, _imp(s.psi, s.chi)))], s.g(_imp(s.phi, s.chi)))
    ]


def _r5_14(s: _Shape) -> List[Form]:
    return [([s.gh(_imp(s.chi, s.forall(s.phi)))], s.gh(_imp(s.chi, s.sub(s.phi, s.t))))]


def _r5_15(s: _Shape) -> List[Form]:
    return [
        (
            [
                s.gh(_imp(s.chi, s.forall(op("∈", Var(s.x), s.phi)))),
                s.gh(_imp(s.chi, op("∈", s.t, s.phi_x))),
            ],
            s.gh(_imp(s.chi, op("∈", s.t, s.phi))),
        )
    ]


def _r5_17(s: _Shape) -> List[Form]:
    return [([s.g(_imp(s.phi, _and(s.psi, _not(s.psi))))], s.g(_not(s.phi)))]


def _r5_18(s: _Shape) -> List[Form]:
    return [([s.g(_not(_and(s.phi, s.psi)))], s.g(_imp(s.phi, _not(s.psi))))]


def _r5_19(s: _Shape) -> List[Form]:
    return [([s.gh(_not(s.forall(s.phi)))], s.gh(s.exists(_not(s.phi))))]


def _r5_20(s: _Shape) -> List[Form]:
    return [([s.g(_imp(s.psi, s.phi))], _imp(s.exists(s.psi), s.phi))]


def _r5_21(s: _Shape) -> List[Form]:
    return [([_imp(s.phi, _imp(s.psi, s.chi))], _imp(_and(s.phi, s.psi), s.chi))]


# Side conditions. Each raises on failure and returns the names of what it checked.


class _Checker:
    def __init__(self, s: _Shape, interp: Interpretation):
        self.s = s
        self.interp = interp
        self.done: List[str] = []

    def sentence(self, name: str, where: str = "k"):
        ctx = self.s.k if where == "k" else self.s.h if where == "h" else EMPTY_CONTEXT
        e = self.s.m[name]
        try:
            check_sentence(ctx, e, self.interp)
        except NotASentence as err:
            raise SideConditionViolated(
                f"{name} ∈ S({where})", f"{e} is not a sentence over {ctx}: {err}", err.witness
            ) from err
        self.done.append(f"{name} ∈ S({where})")

    def expression(self, name: str, where: str = "k"):
        ctx = self.s.k if where == "k" else self.s.h
        e = self.s.m[name]
        try:
            check_expr(ctx, e, self.interp)
        except NotAnExpression as err:
            raise SideConditionViolated(
                f"{name} ∈ E({where})", f"{e} is not an expression over {ctx}: {err}", err.witness
            ) from err
        self.done.append(f"{name} ∈ E({where})")

    def substitutable(self, t_name: str):
        req = SubstRequest(self.s.k, self.s.n, self.s.m[t_name], self.s.m["phi"])
        check_side_conditions(req, self.interp)
        self.done.append(f"{t_name} substitutable for {self.s.x} in phi")


def _sides_ppc(*names: str) -> Callable[[_Checker], None]:
    def check(c: _Checker):
        for n in names:
            c.sentence(n)

    return check


def _sides_a5_16(c: _Checker):
    s = c.s
    i = s.i
    _, phi_i = s.k.entries[i - 1]
    binding = bound_vars(phi_i)
    for x_j in s.k.dom[i - 1 :]:
        if x_j in binding:
            raise SideConditionViolated(
                "binders", f"'{x_j}' is bound inside the domain {phi_i} of binder {i}"
            )
    c.done.append("x_j ∉ V_b(φ_i)")


def _sides_r5_4(c: _Checker):
    c.sentence("chi", "h")
    c.sentence("phi")
    c.substitutable("t")
    c.substitutable("tprime")


def _sides_r5_6(c: _Checker):
    for n in ("phi", "psi", "chi"):
        c.expression(n)
    c.sentence("theta")


def _sides_r5_7(c: _Checker):
    c.sentence("chi", "h")
    c.sentence("phi")
    c.substitutable("t")


def _sides_r5_10(c: _Checker):
    c.sentence("psi")
    c.sentence("psi", "h")
    c.sentence("phi")


def _sides_r5_11(c: _Checker):
    c.sentence("chi", "h")
    c.sentence("psi")
    c.sentence("phi")
    c.sentence("phi", "h")


def _sides_r5_12(c: _Checker):
    c.sentence("psi")
    c.sentence("phi")
    c.sentence("phi", "h")


def _sides_r5_15(c: _Checker):
    s = c.s
    c.sentence("chi", "h")
    c.expression("t", "h")
    c.expression("phi", "h")
    for rho, v in zip(states(s.h, c.interp), meanings(s.h, s.phi, c.interp)):
        if not isinstance(v, SetV):
            raise SideConditionViolated(
                "phi set-valued", f"{s.phi} evaluates to {format_value(v)}, not a set", rho
            )
    c.done.append("phi set-valued on Ξ(h)")
    if s.x in bound_vars(s.phi):
        raise SideConditionViolated("binders", f"{s.phi} binds '{s.x}'")
    c.done.append("x ∉ V_b(phi)")


def _sides_r5_19(c: _Checker):
    c.sentence("phi")


def _sides_r5_20(c: _Checker):
    c.sentence("psi")
    c.sentence("phi")
    c.sentence("phi", "ε")


def _sides_r5_21(c: _Checker):
    for n in ("phi", "psi", "chi"):
        c.sentence(n, "ε")


@dataclass(frozen=True)
class Schema:
    """Everything the checker knows about one schema.

    `binders` is a predicate on the number of binders together with its
    description for error messages.
    """

    id: SchemaId
    metavars: Tuple[str, ...]
    premises: int
    binders: Tuple[Callable[[int], bool], str]
    shapes: Callable[[_Shape], List[Form]]
    side_conditions: Callable[[_Checker], None]


_AT_LEAST_ONE = (lambda n: n >= 1, "at least one binder")
_AT_LEAST_TWO = (lambda n: n >= 2, "at least two binders")

SCHEMAS: Dict[SchemaId, Schema] = {
    s.id: s
    for s in [
        Schema(SchemaId.A5_2, ("phi", "psi"), 0, _AT_LEAST_ONE, _a5_2, _sides_ppc("phi", "psi")),
        Schema(SchemaId.A5_16, ("i",), 0, _AT_LEAST_ONE, _a5_16, _sides_a5_16),
        Schema(
            SchemaId.R3_7,
            ("phi", "psi1", "psi2"),
            2,
            _AT_LEAST_ONE,
            _r3_7,
            _sides_ppc("phi", "psi1", "psi2"),
        ),
        Schema(SchemaId.R5_1, ("phi", "psi"), 1, _AT_LEAST_ONE, _r5_1, _sides_ppc("phi", "psi")),
        Schema(
            SchemaId.R5_3,
            ("phi", "psi", "chi"),
            2,
            _AT_LEAST_ONE,
            _r5_3,
            _sides_ppc("phi", "psi", "chi"),
        ),
        Schema(SchemaId.R5_4, ("chi", "phi", "t", "tprime"), 2, _AT_LEAST_TWO, _r5_4, _sides_r5_4),
        Schema(SchemaId.R5_5, ("phi", "psi"), 1, _AT_LEAST_ONE, _r5_5, _sides_ppc("phi", "psi")),
        Schema(SchemaId.R5_6, ("theta", "phi", "psi", "chi"), 2, _AT_LEAST_ONE, _r5_6, _sides_r5_6),
        Schema(SchemaId.R5_7, ("chi", "phi", "t"), 1, _AT_LEAST_TWO, _r5_7, _sides_r5_7),
        Schema(
            SchemaId.R5_8,
            ("phi", "psi", "chi"),
            2,
            _AT_LEAST_ONE,
            _r5_3,
            _sides_ppc("phi", "psi", "chi"),
        ),
        Schema(
            SchemaId.R5_9,
            ("phi", "psi", "chi"),
            1,
            _AT_LEAST_ONE,
            _r5_9,
            _sides_ppc("phi", "psi", "chi"),
        ),
        Schema(SchemaId.R5_10, ("psi", "phi"), 1, _AT_LEAST_TWO, _r5_10, _sides_r5_10),
        Schema(SchemaId.R5_11, ("chi", "psi", "phi"), 1, _AT_LEAST_TWO, _r5_11, _sides_r5_11),
        Schema(SchemaId.R5_12, ("psi", "phi"), 1, _AT_LEAST_TWO, _r5_12, _sides_r5_12),
        Schema(
            SchemaId.R5_13,
            ("phi", "psi", "chi"),
            2,
            _AT_LEAST_ONE,
            _r5_13,
            _sides_ppc("phi", "psi", "chi"),
        ),
        Schema(SchemaId.R5_14, ("chi", "phi", "t"), 1, _AT_LEAST_TWO, _r5_14, _sides_r5_7),
        Schema(SchemaId.R5_15, ("chi", "phi", "t"), 2, _AT_LEAST_TWO, _r5_15, _sides_r5_15),
        Schema(SchemaId.R5_17, ("phi", "psi"), 1, _AT_LEAST_ONE, _r5_17, _sides_ppc("phi", "psi")),
        Schema(SchemaId.R5_18, ("phi", "psi"), 1, _AT_LEAST_ONE, _r5_18, _sides_ppc("phi", "psi")),
        Schema(SchemaId.R5_19, ("phi",), 1, _AT_LEAST_TWO, _r5_19, _sides_r5_19),
        Schema(
            SchemaId.R5_20,
            ("psi", "phi"),
            1,
            (lambda n: n == 1, "exactly one binder"),
            _r5_20,
            _sides_r5_20,
        ),
        Schema(
            SchemaId.R5_21,
            ("phi", "psi", "chi"),
            1,
            (lambda n: n == 0, "no binders"),
            _r5_21,
            _sides_r5_21,
        ),
    ]
}


def _check_metavars(schema: Schema, metavars: Mapping[str, MetaValue]):
    expected = set(schema.metavars)
    given = set(metavars)
    if given != expected:
        missing = sorted(expected - given)
        extra = sorted(given - expected)
        detail = []
        if missing:
            detail.append(f"missing {', '.join(missing)}")
        if extra:
            detail.append(f"unexpected {', '.join(extra)}")
        raise ShapeMismatch(
            f"{schema.id.value} takes metavariables {', '.join(schema.metavars)}: "
            f"{'; '.join(detail)}"
        )
    for name, v in metavars.items():
        if name == "i":
            if not isinstance(v, int):
                raise ShapeMismatch(f"{schema.id.value}: metavariable i must be an index")
        elif not isinstance(v, Expr):
            raise ShapeMismatch(f"{schema.id.value}: metavariable {name} must be an expression")


def _render_form(form: Form) -> str:
    premises, conclusion = form
    return f"{', '.join(str(p) for p in premises) or '(none)'} ⊢ {conclusion}"


def check_instance(
    inst: Instantiation,
    premises: Sequence[Expr],
    conclusion: Expr,
    interp: Interpretation,
) -> InstanceReport:
    """Check that `premises ⊢ conclusion` is an instance of `inst.schema`.

    The premises must be given in the order the schema lists them.

    Raises:
        UnknownSchema
        EvaluatesFalse          A `semantic` axiom that the model makes false
        ShapeMismatch           Wrong metavariables, binder count, premise
                                count, or the sentences are not what the
                                instantiation produces.
        SideConditionViolated   A side condition of the schema fails; the
                                exception names it and carries a witness
                                state when there is one.
        NotASentence            The conclusion is not a closed sentence.
    """
    if inst.schema is SchemaId.SEMANTIC:
        if len(premises) > 0 or len(inst.metavars) > 0 or len(inst.binders) > 0:
            raise ShapeMismatch("semantic axioms take no premises and no parameters")
        return admit_semantic_axiom(conclusion, interp)

    schema = SCHEMAS.get(inst.schema)
    if schema is None:
        raise UnknownSchema(inst.schema.value)
    name = schema.id.value

    _check_metavars(schema, inst.metavars)

    n = len(inst.binders)
    accepts, described = schema.binders
    if not accepts(n):
        raise ShapeMismatch(f"{name} needs {described}, got {n}")

    if len(premises) != schema.premises:
        raise ShapeMismatch(f"{name} takes {schema.premises} premise(s), got {len(premises)}")

    shape = _Shape(inst)
    forms = schema.shapes(shape)
    given = (list(premises), conclusion)
    matched = next((i for i, f in enumerate(forms) if f == given), None)
    if matched is None:
        expected = " or ".join(_render_form(f) for f in forms)
        raise ShapeMismatch(
            f"{name} instance does not match: expected {expected}; got {_render_form(given)}"
        )

    try:
        check_context(inst.binders, interp)
    except IllFormedContext as e:
        raise SideConditionViolated("H[binders]", str(e), e.witness) from e

    checker = _Checker(shape, interp)
    checker.done.append("H[binders]")
    schema.side_conditions(checker)

    check_sentence(EMPTY_CONTEXT, conclusion, interp)
    checker.done.append("conclusion ∈ S(ε)")

    logging.getLogger(__name__).debug(f"{name} instance accepted ({', '.join(checker.done)})")
    return InstanceReport(schema.id, matched, tuple(checker.done))


def admit_semantic_axiom(phi: Expr, interp: Interpretation) -> InstanceReport:
    """Admit a closed sentence as an axiom when the model makes it true.

    Raises:
        NotASentence
        EvaluatesFalse
    """
    check_sentence(EMPTY_CONTEXT, phi, interp)
    if evaluate_closed(phi, interp) != TRUE:
        raise EvaluatesFalse(f"{phi} is false in the model")
    return InstanceReport(SchemaId.SEMANTIC, 0, ("φ ∈ S(ε)", "#(φ) = true"))


def closure_agrees_with_states(binders: Context, phi: Expr, interp: Interpretation) -> bool:
    """Compare the meaning of γ[binders, φ] with the conjunction of the meanings
    of φ over every state of the binders. The two always agree.
    """
    closed = close(binders, phi)
    direct = evaluate_closed(closed, interp)
    per_state = meanings(binders, phi, interp)
    expected = all(isinstance(v, Truth) and bool(v) for v in per_state)
    agree = direct == Truth(expected)
    if not agree:
        logging.getLogger(__name__).error(
            f"Closure of {phi} over {binders} evaluates to {format_value(direct)}, "
            f"the states give {expected}"
        )
    return agree

