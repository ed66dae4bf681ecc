from avon.ast import Expr
from avon.syntax import SymbolTable, parse_expr

_table = SymbolTable(frozenset(["x", "y", "z", "w"]), frozenset(["A", "B", "f", "a"]))


def p(text: str) -> Expr:
    "Parse with variables x y z w and constants A B f a"
    return parse_expr(text, _table)
