import asyncio
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from make_it_sync import make_sync

from .ast.nodes import Expr, OpApply
from .calculus import Instantiation, SchemaId, check_instance
from .errors import AvonError
from .proof_script import ProofScript, Step
from .semantics import EMPTY_CONTEXT, Interpretation, check_sentence, evaluate_closed
from .values import TRUE, format_value


@dataclass(frozen=True)
class StepDiagnostic:
    "Outcome of checking one step"

    step_id: int
    schema: str
    verified: bool
    message: str = ""
    witness: Optional[str] = None

    def as_record(self) -> Dict[str, Any]:
        "The json-lines report record"
        return {
            "id": self.step_id,
            "schema": self.schema,
            "verdict": "verified" if self.verified else "rejected",
            "message": self.message,
            "witness": self.witness,
        }

    def __str__(self) -> str:
        if self.verified:
            return f"step {self.step_id}: verified by {self.schema}"
        text = f"step {self.step_id}: REJECTED ({self.schema}): {self.message}"
        return text


@dataclass
class Verdict:
    """The result of checking a whole script.

    `accepted` is true exactly when every step verified, the last step states
    the script's goal, and the soundness and consistency post-checks passed.
    """

    accepted: bool
    steps: List[StepDiagnostic] = field(default_factory=list)
    first_failure: Optional[StepDiagnostic] = None
    elapsed: float = 0.0
    post_check_failures: List[str] = field(default_factory=list)

    @property
    def verified(self) -> int:
        return sum(1 for s in self.steps if s.verified)

    def summary(self) -> str:
        return f"{self.verified}/{len(self.steps)} steps verified"


def _check_step(
    step: Step, statements: Dict[int, Expr], verified: Dict[int, bool], interp: Interpretation
) -> StepDiagnostic:
    j = step.justification
    try:
        check_sentence(EMPTY_CONTEXT, step.statement, interp)
        for p in j.premises:
            if p not in statements:
                return StepDiagnostic(
                    step.id, j.schema, False, f"cites step {p}, which is not in the script"
                )
            if not verified[p]:
                return StepDiagnostic(
                    step.id, j.schema, False, f"cites step {p}, which was not verified"
                )
        schema = SchemaId.parse(j.schema)
        inst = Instantiation(schema, j.binders, dict(j.metavars))
        report = check_instance(
            inst, [statements[p] for p in j.premises], step.statement, interp
        )
        return StepDiagnostic(step.id, j.schema, True, f"checked {', '.join(report.checks)}")
    except AvonError as e:
        witness = getattr(e, "witness", None)
        return StepDiagnostic(
            step.id, j.schema, False, str(e), str(witness) if witness is not None else None
        )


def _negation_of(e: Expr) -> Optional[Expr]:
    if isinstance(e, OpApply) and e.op == "¬":
        return e.args[0]
    return None


def _goal_failures(script: ProofScript) -> List[str]:
    if len(script.steps) == 0:
        return ["goal: the script has no steps"]
    last = script.steps[-1]
    if last.statement != script.goal:
        return [f"goal: step {last.id} states {last.statement}, not the goal {script.goal}"]
    return []


async def _post_checks(steps: List[Step], interp: Interpretation) -> List[str]:
    """Every accepted statement must be true in the model, and no statement may
    appear together with its negation.

    Statements are evaluated concurrently in the default executor; the
    interpretation's memo tables are shared under its lock.
    """
    loop = asyncio.get_running_loop()
    values = await asyncio.gather(
        *[loop.run_in_executor(None, evaluate_closed, s.statement, interp) for s in steps]
    )

    failures: List[str] = []
    for s, v in zip(steps, values):
        if v != TRUE:
            failures.append(f"soundness: step {s.id} evaluates to {format_value(v)}")

    by_statement = {s.statement: s.id for s in steps}
    for s in steps:
        positive = _negation_of(s.statement)
        if positive is not None and positive in by_statement:
            failures.append(
                f"consistency: step {s.id} negates step {by_statement[positive]}"
            )
    return failures


async def check_proof_async(
    script: ProofScript, interp: Optional[Interpretation] = None
) -> Verdict:
    """Check every step of a proof script.

    A step verifies when its statement is a closed sentence, every step it
    cites is earlier and verified, and its justification is a valid instance
    of the schema it names (or, for `semantic`, the model makes it true).
    All steps are checked even after a failure; `first_failure` is the
    earliest one.

    Arguments:

        script      The loaded proof script
        interp      The model to check against. Defaults to the one the
                    script names.

    Returns

        The verdict, with one diagnostic per step.
    """
    interp = interp if interp is not None else script.interpretation
    start = time.monotonic()
    statements = {s.id: s.statement for s in script.steps}
    verified: Dict[int, bool] = {}
    diagnostics: List[StepDiagnostic] = []
    for step in script.steps:
        d = _check_step(step, statements, verified, interp)
        verified[step.id] = d.verified
        diagnostics.append(d)
        if d.verified:
            logging.getLogger(__name__).debug(str(d))
        else:
            logging.getLogger(__name__).info(str(d))

    first_failure = next((d for d in diagnostics if not d.verified), None)

    post_failures = _goal_failures(script)
    if first_failure is None and len(post_failures) == 0:
        post_failures = await _post_checks(script.steps, interp)
    for f in post_failures:
        logging.getLogger(__name__).warning(f"Post-check failed: {f}")
    accepted = first_failure is None and len(post_failures) == 0

    verdict = Verdict(
        accepted, diagnostics, first_failure, time.monotonic() - start, post_failures
    )
    logging.getLogger(__name__).info(
        f"{verdict.summary()} in {verdict.elapsed:.2f}s: "
        f"{'accepted' if verdict.accepted else 'rejected'}"
    )
    return verdict


check_proof = make_sync(check_proof_async)
