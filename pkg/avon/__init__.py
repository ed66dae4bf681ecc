# flake8: noqa

# Expression trees and their text form
from .ast import Apply, Const, Expr, OpApply, SetBuilder, Var, bound_vars, free_vars
from .syntax import SymbolTable, parse, parse_binders, parse_expr, render, tokenize

# Values and models
from .values import FALSE, TRUE, Atom, FuncV, SetV, Truth, Value, format_value
from .model_file import load_model, parse_model, parse_value

# Meaning of expressions
from .semantics import (
    EMPTY_CONTEXT,
    Context,
    ExprCase,
    Interpretation,
    State,
    classify,
    check_expr,
    check_sentence,
    is_expr,
    is_sentence,
    meaning,
    states,
)

# Substitution and the calculus
from .substitution import SubstRequest, certify_subst, subst_context, subst_expr
from .calculus import (
    Instantiation,
    SchemaId,
    admit_semantic_axiom,
    check_instance,
    gamma,
    closure_agrees_with_states,
)

# Proof scripts
from .proof_script import ProofScript, load_script, parse_script
from .proofcheck import Verdict, check_proof, check_proof_async
