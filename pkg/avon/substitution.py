import logging
from dataclasses import dataclass, field
from typing import List, Optional

from .ast.binder_stack import binder_frame, binder_stack
from .ast.expr_visitor import ExprTransformer
from .ast.nodes import Expr, SetBuilder, Var
from .ast.variables import bound_vars
from .errors import (
    IllFormedContext,
    NotAnExpression,
    PreconditionViolated,
    SideConditionViolated,
)
from .semantics import (
    Context,
    Interpretation,
    State,
    check_context,
    check_expr,
    is_state,
    meaning,
    meanings,
    states,
)
from .values import SetV, format_value


@dataclass(frozen=True)
class SubstRequest:
    """Replace the variable `x_i` of the context `k` by the expression `t`.

    Args:
        k       The context `[x1:φ1, ..., xp:φp]`
        i       1-based index of the variable being replaced
        t       The replacement, an expression over `k_{i-1}`
        phi     The target expression over `k`. If `None` only the context is
                substituted.
    """

    k: Context
    i: int
    t: Expr
    phi: Optional[Expr] = None

    @property
    def variable(self) -> str:
        return self.k.entries[self.i - 1][0]

    @property
    def before(self) -> Context:
        "k_{i-1}, the context `t` lives in"
        return self.k.prefix(self.i - 1)


class _replacer(ExprTransformer):
    "Replace the free occurrences of one variable"

    def __init__(self, name: str, replacement: Expr):
        self._name = name
        self._replacement = replacement
        self._scope = binder_stack()

    def visit_Var(self, node: Var) -> Expr:
        if node.name == self._name and not self._scope.is_bound(node.name):
            return self._replacement
        return node

    def visit_SetBuilder(self, node: SetBuilder) -> Expr:
        with binder_frame(self._scope):
            binders = []
            for v, d in node.binders:
                binders.append((v, self.visit(d)))
                self._scope.bind(v)
            body = self.visit(node.body)
        if body is node.body and all(n[1] is o[1] for n, o in zip(binders, node.binders)):
            return node
        return SetBuilder(tuple(binders), body)


def replace_variable(phi: Expr, x: str, t: Expr) -> Expr:
    """Syntactically replace the free occurrences of `x` in `phi` by `t`.

    No side conditions are checked: this is the rewrite that builds rule
    shapes. Use `subst_expr` for a checked substitution.
    """
    return _replacer(x, t).visit(phi)


def check_side_conditions(req: SubstRequest, interp: Interpretation):
    """Check everything a substitution needs before it is carried out.

    Raises:
        SideConditionViolated   Names the condition that fails, one of
                                `index`, `context`, `replacement-expression`,
                                `replacement-binders`, `tail-binders`,
                                `target-expression`, `target-binders`,
                                `replacement-meaning`. Semantic conditions
                                carry the state where they fail.
    """
    k = req.k
    if req.i < 1 or req.i > len(k):
        raise SideConditionViolated("index", f"{req.i} is not in 1..{len(k)} for context {k}")

    try:
        check_context(k, interp)
    except IllFormedContext as e:
        raise SideConditionViolated("context", str(e), e.witness) from e

    before = req.before
    try:
        check_expr(before, req.t, interp)
    except NotAnExpression as e:
        raise SideConditionViolated(
            "replacement-expression", f"{req.t} is not an expression over {before}: {e}"
        ) from e

    t_bound = bound_vars(req.t)
    for j, (x_j, phi_j) in enumerate(k.entries, start=1):
        if j != req.i and x_j in t_bound:
            raise SideConditionViolated(
                "replacement-binders", f"{req.t} binds '{x_j}', a variable of the context"
            )
        if j > req.i:
            common = t_bound & bound_vars(phi_j)
            if len(common) > 0:
                raise SideConditionViolated(
                    "tail-binders",
                    f"{req.t} and the domain of '{x_j}' both bind {sorted(common)}",
                )

    if req.phi is not None:
        try:
            check_expr(k, req.phi, interp)
        except NotAnExpression as e:
            raise SideConditionViolated(
                "target-expression", f"{req.phi} is not an expression over {k}: {e}"
            ) from e
        common = t_bound & bound_vars(req.phi)
        if len(common) > 0:
            raise SideConditionViolated(
                "target-binders", f"{req.t} and {req.phi} both bind {sorted(common)}"
            )

    domain = k.entries[req.i - 1][1]
    for rho, value, dom in zip(
        states(before, interp), meanings(before, req.t, interp), meanings(before, domain, interp)
    ):
        if not isinstance(dom, SetV) or value not in dom:
            raise SideConditionViolated(
                "replacement-meaning",
                f"{req.t} evaluates to {format_value(value)}, which is not in the domain "
                f"{domain} of '{req.variable}' = {format_value(dom)}",
                rho,
            )


def subst_context(req: SubstRequest, interp: Interpretation) -> Context:
    """k{x_i/t}: drop `x_i` and replace it by `t` in the domains that follow.

    Raises:
        SideConditionViolated
    """
    check_side_conditions(req, interp)
    return _subst_context(req)


def _subst_context(req: SubstRequest) -> Context:
    tail = tuple(
        (x_j, replace_variable(phi_j, req.variable, req.t))
        for x_j, phi_j in req.k.entries[req.i :]
    )
    return Context(req.before.entries + tail)


def subst_expr(req: SubstRequest, interp: Interpretation) -> Expr:
    """φ_k{x_i/t}, an expression over `k{x_i/t}`.

    Raises:
        SideConditionViolated
        NotAnExpression         The request has no target.
    """
    if req.phi is None:
        raise NotAnExpression("A substitution into an expression needs a target")
    check_side_conditions(req, interp)
    return replace_variable(req.phi, req.variable, req.t)


@dataclass
class SubstReport:
    """Outcome of `certify_subst`.

    `checked` counts the states of `k{x_i/t}` looked at, `counterexamples`
    describes each failure, `rejected` holds the side condition message when
    the request was refused up front.
    """

    checked: int = 0
    counterexamples: List[str] = field(default_factory=list)
    rejected: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.rejected is None and len(self.counterexamples) == 0


def certify_subst(req: SubstRequest, interp: Interpretation) -> SubstReport:
    """Check, state by state, that substitution preserves meaning.

    For every ρ ∈ Ξ(k{x_i/t}) the matching state σ of `k` is rebuilt (σ(x_i)
    is the meaning of `t` at the prefix of ρ). σ must be a state of `k`, and
    the target must mean the same thing at σ in `k` as its substituted form
    at ρ. The bound variables of the result must come from `phi` or `t`.
    Failures are collected in the report rather than raised.
    """
    report = SubstReport()
    try:
        check_side_conditions(req, interp)
    except SideConditionViolated as e:
        report.rejected = str(e)
        return report

    k = req.k
    new_k = _subst_context(req)
    new_phi = None
    if req.phi is not None:
        new_phi = replace_variable(req.phi, req.variable, req.t)
        extra = bound_vars(new_phi) - (bound_vars(req.phi) | bound_vars(req.t))
        if len(extra) > 0:
            report.counterexamples.append(f"result binds {sorted(extra)}, not bound before")

    try:
        rhos = states(new_k, interp)
    except IllFormedContext as e:
        report.counterexamples.append(f"substituted context {new_k} is not valid: {e}")
        return report

    head = req.i - 1
    for rho in rhos:
        report.checked += 1
        prefix = rho.prefix(head)
        r_i = meaning(req.before, req.t, prefix, interp)
        sigma = State(k.dom, rho.values[:head] + (r_i,) + rho.values[head:])
        if not is_state(k, sigma, interp):
            report.counterexamples.append(f"{sigma} is not a state of {k} (from {rho})")
            continue
        if new_phi is None:
            continue
        try:
            before = meaning(k, req.phi, sigma, interp)
            after = meaning(new_k, new_phi, rho, interp)
        except PreconditionViolated as e:
            report.counterexamples.append(f"evaluation failed at {rho}: {e}")
            continue
        if before != after:
            report.counterexamples.append(
                f"at {rho}: {req.phi} means {format_value(before)} but {new_phi} means "
                f"{format_value(after)}"
            )

    if not report.ok:
        logging.getLogger(__name__).warning(
            f"Substitution of {req.t} for '{req.variable}' in {k} has "
            f"{len(report.counterexamples)} counterexample(s)"
        )
    return report
