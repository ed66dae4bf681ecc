from .binder_stack import binder_frame, binder_stack  # NOQA
from .expr_visitor import ExprTransformer, ExprVisitor, ScopedExprVisitor  # NOQA
from .nodes import OPERATORS, Apply, Const, Expr, OpApply, SetBuilder, SourceSpan, Var  # NOQA
from .variables import bound_vars, free_vars  # NOQA
