from typing import Any

from .binder_stack import binder_frame, binder_stack
from .nodes import Apply, Expr, OpApply, SetBuilder


class ExprVisitor:
    """Walk an expression tree. A node of class `Foo` is handed to
    `visit_Foo(self, node)` if that method exists, otherwise to
    `generic_visit`, which visits the children in source order.
    """

    def visit(self, node: Expr) -> Any:
        visitor = getattr(self, f"visit_{node.__class__.__name__}", None)
        if visitor is None:
            return self.generic_visit(node)
        return visitor(node)

    def generic_visit(self, node: Expr) -> Any:
        if isinstance(node, Apply):
            self.visit(node.head)
            for a in node.args:
                self.visit(a)
        elif isinstance(node, OpApply):
            for a in node.args:
                self.visit(a)
        elif isinstance(node, SetBuilder):
            for _, d in node.binders:
                self.visit(d)
            self.visit(node.body)
        return None


class ScopedExprVisitor(ExprVisitor):
    """Visitor that keeps track of the set-builder variables in scope.

    While the domain of the i-th binder is visited, binders 1..i-1 are bound;
    while the body is visited all of them are.
    """

    def __init__(self):
        self.scope = binder_stack()

    def visit_SetBuilder(self, node: SetBuilder) -> Any:
        with binder_frame(self.scope):
            for v, d in node.binders:
                self.visit(d)
                self.scope.bind(v)
            self.visit(node.body)
        return None


class ExprTransformer:
    """Rebuild an expression tree bottom up. `visit_Foo(self, node)` may return a
    replacement node; nodes without a method are rebuilt from their
    transformed children by `generic_visit`. Unchanged sub-trees are
    returned as-is.
    """

    def visit(self, node: Expr) -> Expr:
        visitor = getattr(self, f"visit_{node.__class__.__name__}", None)
        if visitor is None:
            return self.generic_visit(node)
        return visitor(node)

    def generic_visit(self, node: Expr) -> Expr:
        if isinstance(node, Apply):
            head = self.visit(node.head)
            args = tuple(self.visit(a) for a in node.args)
            if head is node.head and all(n is o for n, o in zip(args, node.args)):
                return node
            return Apply(head, args)
        if isinstance(node, OpApply):
            args = tuple(self.visit(a) for a in node.args)
            if all(n is o for n, o in zip(args, node.args)):
                return node
            return OpApply(node.op, args)
        if isinstance(node, SetBuilder):
            binders = tuple((v, self.visit(d)) for v, d in node.binders)
            body = self.visit(node.body)
            if body is node.body and all(n[1] is o[1] for n, o in zip(binders, node.binders)):
                return node
            return SetBuilder(binders, body)
        return node
