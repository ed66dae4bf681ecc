# Test out the visitor and transformer base classes.
from avon.ast import Const, ExprTransformer, ExprVisitor, ScopedExprVisitor, Var

from .utils import p


class const_counter(ExprVisitor):
    def __init__(self):
        self.names = []

    def visit_Const(self, node: Const):
        self.names.append(node.name)


class scope_recorder(ScopedExprVisitor):
    def __init__(self):
        super().__init__()
        self.seen = []

    def visit_Var(self, node: Var):
        self.seen.append((node.name, self.scope.is_bound(node.name)))


class rename_a(ExprTransformer):
    def visit_Const(self, node: Const):
        return Const("B") if node.name == "A" else node


def test_visitor_order():
    c = const_counter()
    c.visit(p("(f)(A,(∧)(B,a))"))
    assert c.names == ["f", "A", "B", "a"]


def test_visitor_set_builder_domains_first():
    c = const_counter()
    c.visit(p("{}(x:A,y:B,(f)(a))"))
    assert c.names == ["A", "B", "f", "a"]


def test_scoped_domain_sees_earlier_binders_only():
    r = scope_recorder()
    r.visit(p("{}(x:(f)(y),y:(f)(x),(=)(x,y))"))
    assert r.seen == [("y", False), ("x", True), ("x", True), ("y", True)]


def test_scoped_free_after_set_builder():
    r = scope_recorder()
    r.visit(p("(∧)({}(x:A,x),x)"))
    assert r.seen == [("x", True), ("x", False)]


def test_transformer_rebuilds():
    e = p("(∈)(a,{}(x:A,(=)(x,A)))")
    assert rename_a().visit(e) == p("(∈)(a,{}(x:B,(=)(x,B)))")


def test_transformer_unchanged_is_same_object():
    e = p("(∈)(a,{}(x:B,x))")
    assert rename_a().visit(e) is e
