"""Line-by-line Hilbert derivations and their checker.

Line numbers in justifications are 1-based, as in the usual presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..formula import Box, Const, Evid, Formula, Implies, in_language
from .schemas import SCHEMAS, SYSTEM_SCHEMAS, SystemId, match, matching_schemas, system_id

# ------------------------------------------------------------- justifications


@dataclass(frozen=True)
class Hyp:
    pass


@dataclass(frozen=True)
class Axiom:
    schema: str | None = None


@dataclass(frozen=True)
class CSRef:
    """The line is c:A taken from the constant specification."""

    constant: str


@dataclass(frozen=True)
class MP:
    """Modus ponens; the two premises may be given in either order."""

    first: int
    second: int


@dataclass(frozen=True)
class BoxNec:
    premise: int


@dataclass(frozen=True)
class AxNec:
    premise: int
    constant: str


Justification = Hyp | Axiom | CSRef | MP | BoxNec | AxNec


@dataclass(frozen=True)
class Line:
    formula: Formula | None  # None for inference lines whose conclusion the checker reconstructs
    just: Justification


def hyp(f: Formula) -> Line:
    return Line(f, Hyp())


def axiom(f: Formula, schema: str | None = None) -> Line:
    return Line(f, Axiom(schema))


def cs_line(constant: str, f: Formula) -> Line:
    return Line(Evid(Const(constant), f), CSRef(constant))


def mp(i: int, j: int, f: Formula | None = None) -> Line:
    return Line(f, MP(i, j))


def box_nec(i: int, f: Formula | None = None) -> Line:
    return Line(f, BoxNec(i))


def ax_nec(i: int, constant: str, f: Formula | None = None) -> Line:
    return Line(f, AxNec(i, constant))


HilbertDerivation = tuple[Line, ...]


# ----------------------------------------------------- constant specifications


@dataclass(frozen=True)
class ConstantSpecification:
    entries: tuple[tuple[str, Formula], ...] = ()

    def __post_init__(self):
        seen, uniq = set(), []
        for entry in self.entries:
            if entry not in seen:
                seen.add(entry)
                uniq.append(entry)
        object.__setattr__(self, "entries", tuple(uniq))

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, Formula]]) -> "ConstantSpecification":
        return cls(tuple(pairs))

    def __contains__(self, entry) -> bool:
        return entry in set(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def union(self, other: Iterable[tuple[str, Formula]]) -> "ConstantSpecification":
        return ConstantSpecification(self.entries + tuple(other))

    def constants(self) -> set[str]:
        return {c for c, _ in self.entries}

    def formulas_for(self, constant: str) -> list[Formula]:
        return [f for c, f in self.entries if c == constant]


@dataclass
class CSVerdict:
    ok: bool
    offending: list[tuple[str, Formula, str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_cs(cs: Iterable[tuple[str, Formula]], system: SystemId | str, injective: bool = False) -> CSVerdict:
    system = system_id(system)
    if not system.explicit:
        raise ValueError(f"{system.value} has no proof constants")
    bad = []
    owner: dict[str, Formula] = {}
    for c, f in cs:
        if not in_language(f, system.language):
            bad.append((c, f, "formula outside the system language"))
        elif not matching_schemas(f, system):
            bad.append((c, f, "not an axiom instance of the system"))
        if injective and owner.setdefault(c, f) is not f:
            bad.append((c, f, "constant already specifies another axiom"))
    return CSVerdict(not bad, bad)


# -------------------------------------------------------------------- checker


@dataclass
class CheckResult:
    ok: bool
    conclusions: list[Formula | None]
    errors: list[tuple[int, str]]
    used_cs: ConstantSpecification

    def __bool__(self) -> bool:
        return self.ok

    @property
    def conclusion(self) -> Formula | None:
        return self.conclusions[-1] if self.conclusions else None

    def describe(self) -> str:
        if self.ok:
            return "accepted"
        return "; ".join(f"line {n}: {msg}" for n, msg in self.errors)


class _LineError(Exception):
    pass


def check_derivation(
    d: Sequence[Line],
    system: SystemId | str,
    cs: Iterable[tuple[str, Formula]] = (),
    mode: str = "rule",
    injective: bool = False,
) -> CheckResult:
    """Check every line; `mode` is "rule" (axiom necessitation allowed) or "cs".

    In "cs" mode axiom-necessitation lines are rejected and constants must come
    from `cs`.  The returned `used_cs` lists every c:A fact the derivation relies on.
    """
    system = system_id(system)
    if mode not in ("rule", "cs"):
        raise ValueError("mode must be 'rule' or 'cs'")
    cs = cs if isinstance(cs, ConstantSpecification) else ConstantSpecification.of(cs)
    cs_set = set(cs.entries)
    errors: list[tuple[int, str]] = []
    if cs.entries and system.explicit:
        verdict = validate_cs(cs, system, injective)
        for c, f, why in verdict.offending:
            errors.append((0, f"constant specification entry {c}: {why}"))

    concl: list[Formula | None] = []
    deps: list[frozenset[int]] = []
    used: list[tuple[str, Formula]] = []
    owner: dict[str, Formula] = {}

    def premise(n: int, i: int) -> Formula:
        if not 1 <= i < n:
            raise _LineError(f"premise index {i} does not precede line {n}")
        f = concl[i - 1]
        if f is None:
            raise _LineError(f"premise line {i} is itself invalid")
        return f

    for n, line in enumerate(d, start=1):
        dep: frozenset[int] = frozenset()
        try:
            j = line.just
            if isinstance(j, Hyp):
                f = _need_formula(line)
                dep = frozenset([n])
            elif isinstance(j, Axiom):
                f = _need_formula(line)
                if j.schema is not None:
                    if j.schema not in SCHEMAS:
                        raise _LineError(f"unknown schema {j.schema}")
                    if j.schema not in SYSTEM_SCHEMAS[system]:
                        raise _LineError(f"schema {j.schema} is not an axiom of {system.value}")
                    if match(SCHEMAS[j.schema], f) is None:
                        raise _LineError(f"formula is not an instance of {j.schema}")
                elif not matching_schemas(f, system):
                    raise _LineError("no schema matches")
            elif isinstance(j, CSRef):
                f = _need_formula(line)
                if type(f) is not Evid or f.term != Const(j.constant):
                    raise _LineError(f"constant specification line must read {j.constant}:A")
                if not system.explicit:
                    raise _LineError("constant specification lines need an explicit system")
                if (j.constant, f.body) not in cs_set:
                    raise _LineError(f"{j.constant}:A is not in the constant specification")
                used.append((j.constant, f.body))
            elif isinstance(j, MP):
                a, b = premise(n, j.first), premise(n, j.second)
                if type(b) is Implies and b.left is a:
                    f = b.right
                elif type(a) is Implies and a.left is b:
                    f = a.right
                else:
                    raise _LineError(f"modus ponens mismatch between lines {j.first} and {j.second}")
                dep = deps[j.first - 1] | deps[j.second - 1]
            elif isinstance(j, BoxNec):
                if not system.has_box:
                    raise _LineError(f"box necessitation is not a rule of {system.value}")
                a = premise(n, j.premise)
                if deps[j.premise - 1]:
                    raise _LineError("box necessitation under open hypotheses")
                f = Box(a)
            elif isinstance(j, AxNec):
                if not system.explicit:
                    raise _LineError(f"axiom necessitation is not a rule of {system.value}")
                if mode == "cs":
                    raise _LineError("axiom necessitation is replaced by the constant specification in cs mode")
                a = premise(n, j.premise)
                if not isinstance(d[j.premise - 1].just, Axiom):
                    raise _LineError("axiom necessitation premise must be an axiom line")
                if injective and owner.setdefault(j.constant, a) is not a:
                    raise _LineError(f"constant {j.constant} already specifies another axiom")
                f = Evid(Const(j.constant), a)
                used.append((j.constant, a))
            else:
                raise _LineError(f"unknown justification {j!r}")
            if line.formula is not None and line.formula is not f:
                raise _LineError("stated formula differs from the one its justification yields")
            if not in_language(f, system.language):
                raise _LineError(f"formula is outside the {system.value} language")
        except _LineError as e:
            errors.append((n, str(e)))
            f = None
        concl.append(f)
        deps.append(dep)

    ok = not errors and bool(d)
    if not d:
        errors.append((0, "empty derivation"))
    return CheckResult(ok, concl, errors, ConstantSpecification.of(used))


def _need_formula(line: Line) -> Formula:
    if line.formula is None:
        raise _LineError("this line must state its formula")
    return line.formula


def open_hypotheses(d: Sequence[Line]) -> list[Formula]:
    return [line.formula for line in d if isinstance(line.just, Hyp)]
