from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Optional, Tuple


class Value:
    """Base class of the hereditarily finite semantic values.

    Every value has a canonical sort key; sets store their members in key
    order so that two sets with the same members are structurally equal.
    """

    def sort_key(self) -> Tuple[Any, ...]:
        raise NotImplementedError()  # pragma: no cover

    def __lt__(self, other: Value) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_value(self)


@dataclass(frozen=True)
class Truth(Value):
    value: bool

    def sort_key(self) -> Tuple[Any, ...]:
        return (0, int(self.value))

    def __bool__(self) -> bool:
        return self.value


TRUE = Truth(True)
FALSE = Truth(False)


def truth(b: bool) -> Truth:
    return TRUE if b else FALSE


@dataclass(frozen=True)
class Atom(Value):
    "An urelement, written `#n` in model files"

    ident: int

    def __post_init__(self):
        if self.ident < 0:
            raise ValueError(f"Atom identifiers are non-negative, not {self.ident}")

    def sort_key(self) -> Tuple[Any, ...]:
        return (1, self.ident)


@dataclass(frozen=True)
class SetV(Value):
    """A finite set. Duplicates (under value equality) are collapsed and the
    members are kept in canonical order.
    """

    members: Tuple[Value, ...] = ()
    _key: Tuple[Any, ...] = field(default=(), init=False, compare=False, repr=False)
    _index: FrozenSet[Value] = field(default=frozenset(), init=False, compare=False, repr=False)
    _hash: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self):
        unique = frozenset(self.members)
        ordered = tuple(sorted(unique, key=lambda v: v.sort_key()))
        object.__setattr__(self, "members", ordered)
        object.__setattr__(self, "_index", unique)
        object.__setattr__(self, "_key", (2, tuple(m.sort_key() for m in ordered)))
        object.__setattr__(self, "_hash", hash(ordered))

    def __hash__(self) -> int:
        return self._hash

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def sort_key(self) -> Tuple[Any, ...]:
        return self._key


@dataclass(frozen=True)
class FuncV(Value):
    """A function with `arity` arguments given by its (finite) graph.

    `graph` holds `(argument tuple, result)` pairs; the domain is the set of
    argument tuples.
    """

    arity: int
    graph: Tuple[Tuple[Tuple[Value, ...], Value], ...]
    _table: Dict[Tuple[Value, ...], Value] = field(
        default_factory=dict, init=False, compare=False, repr=False, hash=False
    )

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError(f"Functions need at least one argument, not {self.arity}")
        table: Dict[Tuple[Value, ...], Value] = {}
        for args, result in self.graph:
            args = tuple(args)
            if len(args) != self.arity:
                raise ValueError(
                    f"Function of arity {self.arity} given a tuple of {len(args)} arguments"
                )
            if args in table:
                raise ValueError(
                    f"Function domain tuple ({','.join(str(a) for a in args)}) appears twice"
                )
            table[args] = result
        ordered = tuple(
            sorted(table.items(), key=lambda p: tuple(a.sort_key() for a in p[0]))
        )
        object.__setattr__(self, "graph", ordered)
        object.__setattr__(self, "_table", table)

    def __call__(self, args: Tuple[Value, ...]) -> Optional[Value]:
        "Value at `args`, or `None` when `args` is outside the domain"
        if len(args) != self.arity:
            return None
        return self._table.get(tuple(args))

    def sort_key(self) -> Tuple[Any, ...]:
        return (
            3,
            self.arity,
            tuple((tuple(a.sort_key() for a in args), r.sort_key()) for args, r in self.graph),
        )


def make_set(members: Iterable[Value]) -> SetV:
    return SetV(tuple(members))


def format_value(v: Value) -> str:
    "Render a value in model-file literal syntax"
    if isinstance(v, Truth):
        return "true" if v.value else "false"
    if isinstance(v, Atom):
        return f"#{v.ident}"
    if isinstance(v, SetV):
        return "{" + ",".join(format_value(m) for m in v.members) + "}"
    if isinstance(v, FuncV):
        entries = " ; ".join(
            f"({','.join(format_value(a) for a in args)})->{format_value(r)}"
            for args, r in v.graph
        )
        return f"fun({v.arity}){{ {entries} }}" if entries else f"fun({v.arity}){{}}"
    raise ValueError(f"Unknown value type {type(v).__name__}")
