"""Random expressions, models, contexts and derivations.

Everything takes a `random.Random` so a seed reproduces a run exactly. The
generators are used by the `roundtrip` command and the property tests.
"""

import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .ast.nodes import OPERATORS, Apply, Const, Expr, OpApply, SetBuilder, Var, op
from .calculus import Instantiation, SchemaId, admit_semantic_axiom, check_instance, close
from .errors import AvonError
from .semantics import EMPTY_CONTEXT, Context, Interpretation, evaluate_closed, is_sentence
from .substitution import SubstRequest, check_side_conditions, replace_variable
from .syntax import SymbolTable
from .values import TRUE, Atom, FuncV, SetV

ROUNDTRIP_VARIABLES = ("x", "y", "z", "u", "v")
ROUNDTRIP_CONSTANTS = ("A", "B", "a", "f", "N")
ROUNDTRIP_SYMBOLS = SymbolTable(frozenset(ROUNDTRIP_VARIABLES), frozenset(ROUNDTRIP_CONSTANTS))

_ARITY = {"¬": 1, "∀": 1, "∃": 1}

SET_CONSTANTS = ("A", "B", "C", "U")
ELEMENT_CONSTANTS = ("a", "b")


def random_expr(rng: random.Random, depth: int = 4) -> Expr:
    "A syntactically well-formed tree over `ROUNDTRIP_SYMBOLS`, not necessarily meaningful"
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Var(rng.choice(ROUNDTRIP_VARIABLES))
        return Const(rng.choice(ROUNDTRIP_CONSTANTS))

    kind = rng.choice(["apply", "operator", "set-builder"])
    if kind == "apply":
        head = random_expr(rng, depth - 1)
        return Apply(head, tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(1, 3))))
    if kind == "operator":
        symbol = rng.choice(OPERATORS)
        arity = _ARITY.get(symbol, 2)
        return OpApply(symbol, tuple(random_expr(rng, depth - 1) for _ in range(arity)))
    names = rng.sample(ROUNDTRIP_VARIABLES, rng.randint(1, 2))
    binders = tuple((n, random_expr(rng, depth - 1)) for n in names)
    return SetBuilder(binders, random_expr(rng, depth - 1))


def random_model(rng: random.Random, max_atoms: int = 4) -> Interpretation:
    """A small model: sets `A`, `B`, `C` of atoms, `U` all of them, elements `a`,
    `b` and a total unary function `f` on the atoms.
    """
    atoms = [Atom(i) for i in range(rng.randint(1, max_atoms))]

    def subset() -> SetV:
        return SetV(tuple(a for a in atoms if rng.random() < 0.5))

    constants = {
        "A": subset(),
        "B": subset(),
        "C": subset(),
        "U": SetV(tuple(atoms)),
        "a": rng.choice(atoms),
        "b": rng.choice(atoms),
        "f": FuncV(1, tuple(((x,), rng.choice(atoms)) for x in atoms)),
    }
    return Interpretation(constants)


class Fresh:
    "Hands out bound variable names that never clash with each other"

    def __init__(self, prefix: str = "w"):
        self._prefix = prefix
        self._next = 0

    def __call__(self) -> str:
        name = f"{self._prefix}{self._next}"
        self._next += 1
        return name


def random_term(rng: random.Random, variables: Sequence[str], depth: int = 2) -> Expr:
    "An atom-valued term: a variable, `a`, `b` or `(f)(term)`"
    if depth <= 0 or rng.random() < 0.6:
        choices: List[Expr] = [Var(v) for v in variables]
        choices += [Const(c) for c in ELEMENT_CONSTANTS]
        return rng.choice(choices)
    return Apply(Const("f"), (random_term(rng, variables, depth - 1),))


def random_sentence(
    rng: random.Random, variables: Sequence[str], fresh: Fresh, depth: int = 3
) -> Expr:
    """A truth-valued expression over a context whose variables range over
    atoms. Quantifiers bind names from `fresh`.
    """
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return op("∈", random_term(rng, variables), Const(rng.choice(SET_CONSTANTS)))
        return op("=", random_term(rng, variables), random_term(rng, variables))

    kind = rng.choice(["¬", "∧", "∨", "→", "↔", "∀", "∃"])
    if kind == "¬":
        return op("¬", random_sentence(rng, variables, fresh, depth - 1))
    if kind in ("∀", "∃"):
        w = fresh()
        body = random_sentence(rng, list(variables) + [w], fresh, depth - 1)
        return op(kind, SetBuilder(((w, Const(rng.choice(SET_CONSTANTS))),), body))
    return op(
        kind,
        random_sentence(rng, variables, fresh, depth - 1),
        random_sentence(rng, variables, fresh, depth - 1),
    )


def random_context(rng: random.Random, n: int, fresh: Fresh, prefix: str = "x") -> Context:
    """`n` binders over set constants. Later binders sometimes get the dependent
    domain `{}(w:U,(f)(x_j))` = {f(x_j)} for an earlier `x_j`.
    """
    entries: List[Tuple[str, Expr]] = []
    for i in range(n):
        name = f"{prefix}{i}"
        if i > 0 and rng.random() < 0.3:
            earlier = rng.choice(entries)[0]
            domain: Expr = SetBuilder(
                ((fresh(), Const("U")),), Apply(Const("f"), (Var(earlier),))
            )
        else:
            domain = Const(rng.choice(SET_CONSTANTS))
        entries.append((name, domain))
    return Context(tuple(entries))


def random_subst_request(rng: random.Random, interp: Interpretation) -> SubstRequest:
    """A substitution request that meets every side condition. When the random
    replacement does not fit the domain of the replaced variable, that
    domain is widened to `U`.
    """
    fresh = Fresh()
    k = random_context(rng, rng.randint(1, 3), fresh)
    i = rng.randint(1, len(k))
    before = k.dom[: i - 1]
    t = random_term(rng, before)
    phi = (
        random_sentence(rng, k.dom, fresh, depth=2)
        if rng.random() < 0.7
        else random_term(rng, k.dom)
    )
    req = SubstRequest(k, i, t, phi)
    try:
        check_side_conditions(req, interp)
        return req
    except AvonError:
        entries = list(k.entries)
        entries[i - 1] = (entries[i - 1][0], Const("U"))
        return SubstRequest(Context(tuple(entries)), i, t, phi)


# Derivations


@dataclass(frozen=True)
class Fact:
    "A derived statement `close(binders, body)` and the schema that produced it"

    binders: Context
    body: Expr
    statement: Expr
    schema: SchemaId


def _split(e: Expr, symbol: str) -> Optional[Tuple[Expr, ...]]:
    if isinstance(e, OpApply) and e.op == symbol:
        return e.args
    return None


def _split_imp(e: Expr) -> Optional[Tuple[Expr, ...]]:
    return _split(e, "→")


def _quantified(e: Expr, symbol: str) -> Optional[Tuple[str, Expr, Expr]]:
    "`(symbol)({}(x:φx, body))` as `(x, φx, body)`"
    args = _split(e, symbol)
    if args is None or not isinstance(args[0], SetBuilder) or len(args[0].binders) != 1:
        return None
    ((x, phi_x),) = args[0].binders
    return x, phi_x, args[0].body


def _bind(symbol: str, x: str, domain: Expr, body: Expr) -> Expr:
    return op(symbol, SetBuilder(((x, domain),), body))


class _Deriver:
    def __init__(self, rng: random.Random, interp: Interpretation):
        self.rng = rng
        self.interp = interp
        self.fresh = Fresh()
        self.facts: List[Fact] = []
        self.attempts = 0

    def binders(self, least: int = 1) -> Context:
        return random_context(self.rng, self.rng.randint(least, 3), self.fresh)

    def sentence(self, k: Context, depth: int = 2) -> Expr:
        return random_sentence(self.rng, k.dom, self.fresh, depth)

    def term(self, k: Context) -> Expr:
        return random_term(self.rng, k.dom)

    def pick(self, want: Callable[[Fact], bool]) -> Optional[Fact]:
        candidates = [f for f in self.facts if want(f)]
        return self.rng.choice(candidates) if len(candidates) > 0 else None

    def admit(self, k: Context, body: Expr) -> Optional[Fact]:
        "Admit `close(k, body)` as a semantic axiom if the model makes it true"
        statement = close(k, body)
        try:
            admit_semantic_axiom(statement, self.interp)
        except AvonError:
            return None
        fact = Fact(k, body, statement, SchemaId.SEMANTIC)
        self.facts.append(fact)
        return fact

    def find(
        self, want: Callable[[Fact], bool], make: Callable[[], Tuple[Context, Expr]]
    ) -> Optional[Fact]:
        "An earlier fact `want` accepts, or else a new semantic one built by `make`"
        f = self.pick(want)
        if f is None:
            f = self.admit(*make())
        return f

    def apply(
        self,
        schema: SchemaId,
        k: Context,
        metavars: Dict[str, object],
        premises: List[Fact],
        conclusion_body: Expr,
        conclusion_binders: Optional[Context] = None,
    ):
        "Record the conclusion if the calculus accepts the instance"
        self.attempts += 1
        binders = conclusion_binders if conclusion_binders is not None else k
        conclusion = close(binders, conclusion_body)
        try:
            check_instance(
                Instantiation(schema, k, metavars),  # type: ignore
                [p.statement for p in premises],
                conclusion,
                self.interp,
            )
        except AvonError as e:
            logging.getLogger(__name__).debug(f"{schema.value} not applicable: {e}")
            return
        self.facts.append(Fact(binders, conclusion_body, conclusion, schema))

    # Axioms

    def a5_2(self):
        k = self.binders()
        phi, psi = self.sentence(k), self.sentence(k)
        chosen = phi if self.rng.random() < 0.5 else psi
        body = op("→", op("∧", phi, psi), chosen)
        self.apply(SchemaId.A5_2, k, {"phi": phi, "psi": psi}, [], body)

    def a5_16(self):
        k = self.binders()
        i = self.rng.randint(1, len(k))
        x_i, phi_i = k.entries[i - 1]
        self.apply(SchemaId.A5_16, k, {"i": i}, [], op("∈", Var(x_i), phi_i))

    def semantic(self):
        k = self.binders()
        self.admit(k, self.sentence(k))

    # Rules over the full binder list

    def r5_1(self):
        def make() -> Tuple[Context, Expr]:
            k = self.binders()
            phi = self.sentence(k)
            return k, op("↔", phi, op("¬", op("¬", phi)))

        f = self.find(lambda f: len(f.binders) >= 1 and _split(f.body, "↔") is not None, make)
        if f is None:
            return
        phi, psi = f.body.args  # type: ignore
        body = op("→", phi, psi) if self.rng.random() < 0.5 else op("→", psi, phi)
        self.apply(SchemaId.R5_1, f.binders, {"phi": phi, "psi": psi}, [f], body)

    def r5_5(self):
        f = self.pick(lambda f: len(f.binders) >= 1)
        if f is None:
            return
        psi = self.sentence(f.binders)
        self.apply(
            SchemaId.R5_5, f.binders, {"phi": f.body, "psi": psi}, [f], op("→", psi, f.body)
        )

    def r5_6(self):
        k = self.binders()
        theta = self.sentence(k)
        p = self.term(k)
        q = p if self.rng.random() < 0.5 else self.term(k)
        r = q if self.rng.random() < 0.5 else self.term(k)
        first = self.admit(k, op("→", theta, op("=", p, q)))
        second = self.admit(k, op("→", theta, op("=", q, r)))
        if first is None or second is None:
            return
        self.apply(
            SchemaId.R5_6,
            k,
            {"theta": theta, "phi": p, "psi": q, "chi": r},
            [first, second],
            op("→", theta, op("=", p, r)),
        )

    def r5_9(self):
        def fits(f: Fact) -> bool:
            parts = _split_imp(f.body)
            if len(f.binders) < 1 or parts is None:
                return False
            return _split(parts[0], "∧") is not None

        f = self.pick(fits)
        if f is None:
            return
        conj, chi = _split_imp(f.body)  # type: ignore
        phi, psi = conj.args  # type: ignore
        self.apply(
            SchemaId.R5_9,
            f.binders,
            {"phi": phi, "psi": psi, "chi": chi},
            [f],
            op("→", phi, op("→", psi, chi)),
        )

    def r5_3(self):
        first = self.pick(lambda f: len(f.binders) >= 1 and _split_imp(f.body) is not None)
        if first is None:
            return
        phi, psi = _split_imp(first.body)  # type: ignore

        def follows(f: Fact) -> bool:
            parts = _split_imp(f.body)
            return f.binders == first.binders and parts is not None and parts[0] == psi

        second = self.find(follows, lambda: (first.binders, op("→", psi, psi)))
        if second is None:
            return
        chi = _split_imp(second.body)[1]  # type: ignore
        schema = SchemaId.R5_3 if self.rng.random() < 0.5 else SchemaId.R5_8
        self.apply(
            schema,
            first.binders,
            {"phi": phi, "psi": psi, "chi": chi},
            [first, second],
            op("→", phi, chi),
        )

    def r5_13(self):
        first = self.pick(lambda f: len(f.binders) >= 1 and _split_imp(f.body) is not None)
        if first is None:
            return
        phi, psi = _split_imp(first.body)  # type: ignore

        def fits(f: Fact) -> bool:
            parts = _split_imp(f.body)
            if f.binders != first.binders or parts is None or parts[0] != phi:
                return False
            inner = _split_imp(parts[1])
            return inner is not None and inner[0] == psi

        def make() -> Tuple[Context, Expr]:
            chi = psi if self.rng.random() < 0.5 else self.sentence(first.binders)
            return first.binders, op("→", phi, op("→", psi, chi))

        second = self.find(fits, make)
        if second is None:
            return
        chi = _split_imp(_split_imp(second.body)[1])[1]  # type: ignore
        self.apply(
            SchemaId.R5_13,
            first.binders,
            {"phi": phi, "psi": psi, "chi": chi},
            [first, second],
            op("→", phi, chi),
        )

    def r3_7(self):
        first = self.pick(lambda f: len(f.binders) >= 1 and _split_imp(f.body) is not None)
        if first is None:
            return
        phi, psi1 = _split_imp(first.body)  # type: ignore

        def same_hypothesis(f: Fact) -> bool:
            parts = _split_imp(f.body)
            return f.binders == first.binders and parts is not None and parts[0] == phi

        second = self.pick(same_hypothesis)
        if second is None:
            return
        psi2 = _split_imp(second.body)[1]  # type: ignore
        self.apply(
            SchemaId.R3_7,
            first.binders,
            {"phi": phi, "psi1": psi1, "psi2": psi2},
            [first, second],
            op("→", phi, op("∧", psi1, psi2)),
        )

    def r5_17(self):
        def fits(f: Fact) -> bool:
            parts = _split_imp(f.body)
            if len(f.binders) < 1 or parts is None:
                return False
            conj = _split(parts[1], "∧")
            return conj is not None and conj[1] == op("¬", conj[0])

        def make() -> Tuple[Context, Expr]:
            k = self.binders()
            psi = self.sentence(k)
            theta = self.sentence(k)
            contradiction = op("∧", theta, op("¬", theta))
            phi = self.sentence(k) if self.rng.random() < 0.5 else contradiction
            return k, op("→", phi, op("∧", psi, op("¬", psi)))

        f = self.find(fits, make)
        if f is None:
            return
        phi, conj = _split_imp(f.body)  # type: ignore
        psi = conj.args[0]  # type: ignore
        self.apply(SchemaId.R5_17, f.binders, {"phi": phi, "psi": psi}, [f], op("¬", phi))

    def r5_18(self):
        def fits(f: Fact) -> bool:
            negated = _split(f.body, "¬")
            if len(f.binders) < 1 or negated is None:
                return False
            return _split(negated[0], "∧") is not None

        def make() -> Tuple[Context, Expr]:
            k = self.binders()
            theta = self.sentence(k)
            return k, op("¬", op("∧", theta, op("¬", theta)))

        f = self.find(fits, make)
        if f is None:
            return
        phi, psi = f.body.args[0].args  # type: ignore
        self.apply(
            SchemaId.R5_18, f.binders, {"phi": phi, "psi": psi}, [f], op("→", phi, op("¬", psi))
        )

    # Rules that split off the last binder

    def r5_4(self):
        h = self.binders()
        chi = self.sentence(h)
        t = self.term(h)
        tprime = t if self.rng.random() < 0.5 else self.term(h)
        x = self.fresh()
        k = h.extend(x, Const("U"))
        phi = self.sentence(k)
        first = self.admit(h, op("→", chi, replace_variable(phi, x, t)))
        second = self.admit(h, op("→", chi, op("=", t, tprime)))
        if first is None or second is None:
            return
        self.apply(
            SchemaId.R5_4,
            k,
            {"chi": chi, "phi": phi, "t": t, "tprime": tprime},
            [first, second],
            op("→", chi, replace_variable(phi, x, tprime)),
            h,
        )

    def r5_7(self):
        # Abstract a context variable of a known implication into an existential witness
        f = self.pick(lambda f: len(f.binders) >= 1 and _split_imp(f.body) is not None)
        if f is None:
            return
        chi, psi = _split_imp(f.body)  # type: ignore
        v = self.rng.choice(f.binders.dom)
        x = self.fresh()
        phi = replace_variable(psi, v, Var(x))
        self.apply(
            SchemaId.R5_7,
            f.binders.extend(x, Const("U")),
            {"chi": chi, "phi": phi, "t": Var(v)},
            [f],
            op("→", chi, _bind("∃", x, Const("U"), phi)),
            f.binders,
        )

    def r5_14(self):
        def fits(f: Fact) -> bool:
            parts = _split_imp(f.body)
            return (
                len(f.binders) >= 1
                and parts is not None
                and _quantified(parts[1], "∀") is not None
            )

        def make() -> Tuple[Context, Expr]:
            h = self.binders()
            x = self.fresh()
            everything = _bind("∀", x, Const("U"), op("∈", Var(x), Const("U")))
            return h, op("→", self.sentence(h), everything)

        f = self.find(fits, make)
        if f is None:
            return
        chi, forall = _split_imp(f.body)  # type: ignore
        x, phi_x, phi = _quantified(forall, "∀")  # type: ignore
        t = self.term(f.binders)
        self.apply(
            SchemaId.R5_14,
            f.binders.extend(x, phi_x),
            {"chi": chi, "phi": phi, "t": t},
            [f],
            op("→", chi, replace_variable(phi, x, t)),
            f.binders,
        )

    def r5_15(self):
        h = self.binders()
        chi = self.sentence(h)
        v, domain = self.rng.choice(h.entries)
        target = Const("U") if self.rng.random() < 0.5 else Const(self.rng.choice(SET_CONSTANTS))
        x = self.fresh()
        first = self.admit(h, op("→", chi, _bind("∀", x, domain, op("∈", Var(x), target))))
        second = self.admit(h, op("→", chi, op("∈", Var(v), domain)))
        if first is None or second is None:
            return
        self.apply(
            SchemaId.R5_15,
            h.extend(x, domain),
            {"chi": chi, "phi": target, "t": Var(v)},
            [first, second],
            op("→", chi, op("∈", Var(v), target)),
            h,
        )

    def r5_10_or_12(self):
        f = self.pick(lambda f: len(f.binders) >= 2 and _split_imp(f.body) is not None)
        if f is None:
            return
        psi, phi = _split_imp(f.body)  # type: ignore
        h = f.binders.prefix(len(f.binders) - 1)
        x, phi_x = f.binders.entries[-1]
        if self.rng.random() < 0.5 and is_sentence(h, psi, self.interp):
            body = op("→", psi, _bind("∀", x, phi_x, phi))
            self.apply(SchemaId.R5_10, f.binders, {"psi": psi, "phi": phi}, [f], body, h)
        elif is_sentence(h, phi, self.interp):
            body = op("→", _bind("∃", x, phi_x, psi), phi)
            self.apply(SchemaId.R5_12, f.binders, {"psi": psi, "phi": phi}, [f], body, h)

    def r5_11(self):
        def fits(f: Fact) -> bool:
            parts = _split_imp(f.body)
            if len(f.binders) < 1 or parts is None:
                return False
            q = _quantified(parts[1], "∀")
            return q is not None and _split_imp(q[2]) is not None

        def make() -> Tuple[Context, Expr]:
            h = self.binders()
            x = self.fresh()
            domain = Const(self.rng.choice(SET_CONSTANTS))
            psi = self.sentence(h.extend(x, domain))
            body = _bind("∀", x, domain, op("→", psi, self.sentence(h)))
            return h, op("→", self.sentence(h), body)

        f = self.find(fits, make)
        if f is None:
            return
        chi, forall = _split_imp(f.body)  # type: ignore
        x, phi_x, inner = _quantified(forall, "∀")  # type: ignore
        psi, phi = _split_imp(inner)  # type: ignore
        self.apply(
            SchemaId.R5_11,
            f.binders.extend(x, phi_x),
            {"chi": chi, "psi": psi, "phi": phi},
            [f],
            op("→", chi, op("→", _bind("∃", x, phi_x, psi), phi)),
            f.binders,
        )

    def r5_19(self):
        def fits(f: Fact) -> bool:
            negated = _split(f.body, "¬")
            return (
                len(f.binders) >= 1
                and negated is not None
                and _quantified(negated[0], "∀") is not None
            )

        def make() -> Tuple[Context, Expr]:
            h = self.binders()
            x = self.fresh()
            domain = Const(self.rng.choice(SET_CONSTANTS))
            if self.rng.random() < 0.5:
                phi = self.sentence(h.extend(x, domain))
            else:
                phi = op("¬", op("∈", Var(x), domain))
            return h, op("¬", _bind("∀", x, domain, phi))

        f = self.find(fits, make)
        if f is None:
            return
        x, phi_x, phi = _quantified(f.body.args[0], "∀")  # type: ignore
        self.apply(
            SchemaId.R5_19,
            f.binders.extend(x, phi_x),
            {"phi": phi},
            [f],
            _bind("∃", x, phi_x, op("¬", phi)),
            f.binders,
        )

    # Rules that close a sentence completely

    def r5_20(self):
        def fits(f: Fact) -> bool:
            parts = _split_imp(f.body)
            return (
                len(f.binders) == 1
                and parts is not None
                and is_sentence(EMPTY_CONTEXT, parts[1], self.interp)
            )

        def make() -> Tuple[Context, Expr]:
            k = random_context(self.rng, 1, self.fresh)
            return k, op("→", self.sentence(k), self.sentence(EMPTY_CONTEXT))

        f = self.find(fits, make)
        if f is None:
            return
        psi, phi = _split_imp(f.body)  # type: ignore
        x, phi_x = f.binders.entries[0]
        self.apply(
            SchemaId.R5_20,
            f.binders,
            {"psi": psi, "phi": phi},
            [f],
            op("→", _bind("∃", x, phi_x, psi), phi),
            EMPTY_CONTEXT,
        )

    def r5_21(self):
        def fits(f: Fact) -> bool:
            parts = _split_imp(f.body)
            return len(f.binders) == 0 and parts is not None and _split_imp(parts[1]) is not None

        def make() -> Tuple[Context, Expr]:
            phi, psi, chi = (self.sentence(EMPTY_CONTEXT) for _ in range(3))
            return EMPTY_CONTEXT, op("→", phi, op("→", psi, chi))

        f = self.find(fits, make)
        if f is None:
            return
        phi, rest = _split_imp(f.body)  # type: ignore
        psi, chi = _split_imp(rest)  # type: ignore
        self.apply(
            SchemaId.R5_21,
            EMPTY_CONTEXT,
            {"phi": phi, "psi": psi, "chi": chi},
            [f],
            op("→", op("∧", phi, psi), chi),
        )

    def step(self):
        moves = [
            self.a5_2,
            self.a5_2,
            self.a5_16,
            self.semantic,
            self.r3_7,
            self.r5_1,
            self.r5_3,
            self.r5_4,
            self.r5_5,
            self.r5_6,
            self.r5_7,
            self.r5_9,
            self.r5_10_or_12,
            self.r5_11,
            self.r5_13,
            self.r5_14,
            self.r5_15,
            self.r5_17,
            self.r5_18,
            self.r5_19,
            self.r5_20,
            self.r5_21,
        ]
        self.rng.choice(moves)()


def random_derivation(
    rng: random.Random, interp: Interpretation, steps: int = 8
) -> List[Fact]:
    """Chain randomly chosen axiom and rule instances. Only instances the
    calculus accepts are kept; rules take their premises from earlier facts.
    """
    d = _Deriver(rng, interp)
    for _ in range(steps):
        d.step()
    logging.getLogger(__name__).debug(
        f"Derived {len(d.facts)} facts in {d.attempts} rule attempts"
    )
    return d.facts


def all_true(facts: Sequence[Fact], interp: Interpretation) -> bool:
    "True if every fact evaluates to true in `interp`"
    return all(evaluate_closed(f.statement, interp) == TRUE for f in facts)
