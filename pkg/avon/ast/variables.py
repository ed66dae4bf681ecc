from typing import FrozenSet, Set

from .expr_visitor import ExprVisitor, ScopedExprVisitor
from .nodes import Expr, SetBuilder, Var


class _free_finder(ScopedExprVisitor):
    def __init__(self):
        super().__init__()
        self.found: Set[str] = set()

    def visit_Var(self, node: Var):
        if not self.scope.is_bound(node.name):
            self.found.add(node.name)


class _bound_finder(ExprVisitor):
    def __init__(self):
        self.found: Set[str] = set()

    def visit_SetBuilder(self, node: SetBuilder):
        self.found.update(node.variables)
        return self.generic_visit(node)


def free_vars(t: Expr) -> FrozenSet[str]:
    """Free variables of `t`, V_f(t).

    For `{}(x1:φ1, ..., xm:φm, φ)` this is
    V_f(φ1) ∪ (V_f(φ2) - {x1}) ∪ ... ∪ (V_f(φ) - {x1, ..., xm}).
    """
    f = _free_finder()
    f.visit(t)
    return frozenset(f.found)


def bound_vars(t: Expr) -> FrozenSet[str]:
    """Bound variables of `t`, V_b(t): every variable introduced by a
    set-builder anywhere in `t`.
    """
    f = _bound_finder()
    f.visit(t)
    return frozenset(f.found)
