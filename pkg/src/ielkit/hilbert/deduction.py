"""The deduction transform on line derivations."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..formula import Formula
from .derivation import Hyp, Line, check_derivation
from .proof import ProofError, discharge, from_derivation, linearize
from .schemas import SystemId


class DeductionError(ProofError):
    pass


def deduction(
    d: Sequence[Line],
    system: SystemId | str,
    hypothesis: Formula | None = None,
    cs: Iterable = (),
    mode: str = "rule",
) -> tuple[Line, ...]:
    """From a derivation of F using hypothesis A, a derivation of A -> F.

    `hypothesis` defaults to the first hypothesis line.  Other hypotheses stay
    open in the result.
    """
    cs = tuple(cs)
    hyps = [line.formula for line in d if isinstance(line.just, Hyp)]
    if hypothesis is None:
        if not hyps:
            raise DeductionError("the derivation has no hypothesis to discharge")
        hypothesis = hyps[0]
    elif hypothesis not in hyps:
        raise DeductionError("the hypothesis does not occur in the derivation")
    proofs = from_derivation(d, system, cs, mode)
    try:
        out = linearize(discharge(hypothesis, proofs[-1]))
    except ProofError as e:
        raise DeductionError(str(e)) from e
    res = check_derivation(out, system, cs, mode)
    if not res.ok:  # pragma: no cover - discharge preserves validity
        raise DeductionError(f"transformed derivation does not check: {res.describe()}")
    return out
