"""Command-line interface: one JSON document per invocation on stdout.

Exit codes: 0 success / proved / accepted, 1 refuted / rejected / saturated,
2 budget exhausted, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .formula import Language, language_of
from .hilbert.derivation import ConstantSpecification, check_derivation as check_hilbert
from .hilbert.schemas import system_id
from .realize.pipeline import NotProved, realize_iel
from .realize.realizer import realize
from .sequent.core import Sequent, check_derivation as check_sequent, sequent_system
from .sequent.prover import Outcome, prove
from .serialize import (
    DocumentError,
    cs_from_doc,
    hilbert_from_doc,
    realization_to_doc,
    sequent_from_doc,
    sequent_to_doc,
)
from .syntax import LanguageError, ParseError, parse, parse_sequent, to_string
from .translate import forgetful_projection, godel_tr

OK, REJECTED, BUDGET, INPUT_ERROR = 0, 1, 2, 3
_OUTCOME_CODE = {Outcome.PROVED: OK, Outcome.SATURATED: REJECTED, Outcome.BUDGET: BUDGET}


@dataclass
class CommandOutcome:
    code: int
    payload: dict


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage()}")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ielkit", description="Intuitionistic epistemic logic, verification logic and explicit proofs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="logic or sequent system name")
    common.add_argument("--in", dest="text", help="input given inline")
    common.add_argument("--file", help="read the input from a file ('-' for stdin)")
    common.add_argument("--cs", help="constant specification document (JSON)")
    common.add_argument("--max-depth", type=int, default=50)
    common.add_argument("--max-nodes", type=int, default=200_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = sub.add_parser("parse", parents=[common], help="parse and reprint a formula")
    sp.add_argument("--language", choices=[lang.value for lang in Language])
    sub.add_parser("translate", parents=[common], help="Gödel translation of an IEL formula")
    sub.add_parser("project", parents=[common], help="forgetful projection of an explicit formula")
    sp = sub.add_parser("prove", parents=[common], help="sequent proof search")
    sp.add_argument("--goal", help='sequent "A1, A2 => B" or a single formula')
    sp = sub.add_parser("check", parents=[common], help="check a derivation document")
    sp.add_argument("--kind", choices=["hilbert", "sequent"], required=True)
    sp.add_argument("--mode", choices=["rule", "cs"])
    sub.add_parser("realize", parents=[common], help="realize a sequent derivation document")
    sub.add_parser("realize-iel", parents=[common], help="translate, prove and realize an IEL formula")
    return p


# ------------------------------------------------------------------ inputs


def _read_input(args, stdin: str | None) -> str:
    if args.text is not None:
        return args.text
    if args.file and args.file != "-":
        try:
            return Path(args.file).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e.strerror}") from e
    if stdin is None:
        stdin = sys.stdin.read()
    return stdin


def _read_json(args, stdin) -> dict:
    text = _read_input(args, stdin)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"input is not JSON: {e}") from e
    if not isinstance(doc, dict):
        raise UsageError("input must be a JSON object")
    return doc


def _embedded(doc: dict, kind: str) -> dict:
    """Accept a bare derivation document or a command payload wrapping one."""
    if doc.get("kind") == kind:
        return doc
    for key in ("derivation", "witness"):
        inner = doc.get(key)
        if isinstance(inner, dict) and inner.get("kind") == kind:
            return inner
    if "lines" in doc and kind == "hilbert" or "nodes" in doc and kind == "sequent":
        return doc
    raise UsageError(f"no {kind} derivation in the input document")


# ---------------------------------------------------------------- commands


def _cmd_parse(args, stdin):
    f = parse(_read_input(args, stdin).strip(), args.language)
    lang = language_of(f)
    return OK, {"formula": to_string(f), "language": None if lang is None else lang.value}


def _cmd_translate(args, stdin):
    f = parse(_read_input(args, stdin).strip(), Language.IEL)
    return OK, {"input": to_string(f), "translation": to_string(godel_tr(f))}


def _cmd_project(args, stdin):
    f = parse(_read_input(args, stdin).strip(), Language.EXPLICIT)
    return OK, {"input": to_string(f), "projection": to_string(forgetful_projection(f))}


def _cmd_prove(args, stdin):
    text = args.goal if args.goal is not None else _read_input(args, stdin)
    text = text.strip()
    if "=>" in text or "⇒" in text:
        ante, succ = parse_sequent(text, Language.MODAL)
    else:
        ante, succ = (), (parse(text, Language.MODAL),)
    system = sequent_system(args.system or "s4vg")
    res = prove(Sequent(ante, succ), system, max_depth=args.max_depth, max_nodes=args.max_nodes)
    payload: dict[str, Any] = {
        "goal": str(Sequent(ante, succ)),
        "system": system.value,
        "outcome": res.outcome.value,
        "searched": res.nodes,
    }
    if res.proved:
        payload["derivation"] = sequent_to_doc(res.derivation, system)
    return _OUTCOME_CODE[res.outcome], payload


def _cs_arg(args) -> ConstantSpecification:
    if not args.cs:
        return ConstantSpecification()
    try:
        doc = json.loads(Path(args.cs).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read constant specification {args.cs}: {e}") from e
    return cs_from_doc(doc)


def _cmd_check(args, stdin):
    doc = _read_json(args, stdin)
    if args.kind == "sequent":
        inner = _embedded(doc, "sequent")
        system = sequent_system(args.system or inner.get("system") or "s4vg")
        verdict = check_sequent(sequent_from_doc(inner), system)
        payload = {"kind": "sequent", "system": system.value, "accepted": verdict.ok}
        if not verdict.ok:
            payload.update(reason=verdict.reason, path=list(verdict.path))
        return (OK if verdict.ok else REJECTED), payload
    inner = _embedded(doc, "hilbert")
    name = args.system or inner.get("system")
    if not name:
        raise UsageError("--system is required for this document")
    system = system_id(name)
    lines, cs = hilbert_from_doc(inner)
    cs = cs.union(_cs_arg(args))
    mode = args.mode or inner.get("mode", "rule")
    res = check_hilbert(lines, system, cs, mode)
    payload = {
        "kind": "hilbert",
        "system": system.value,
        "accepted": res.ok,
        "conclusion": None if res.conclusion is None else to_string(res.conclusion),
        "used_cs": [{"constant": c, "formula": to_string(f)} for c, f in res.used_cs],
    }
    if not res.ok:
        payload["errors"] = [{"line": n, "message": m} for n, m in res.errors]
    return (OK if res.ok else REJECTED), payload


def _cmd_realize(args, stdin):
    doc = _embedded(_read_json(args, stdin), "sequent")
    system = sequent_system(args.system or doc.get("system") or "s4vg")
    root = sequent_from_doc(doc)
    verdict = check_sequent(root, system)
    if not verdict.ok:
        return REJECTED, {"accepted": False, "reason": verdict.reason}
    return OK, realization_to_doc(realize(root, system))


def _cmd_realize_iel(args, stdin):
    f = parse(_read_input(args, stdin).strip(), Language.IEL)
    res = realize_iel(f, args.system or "iel", max_depth=args.max_depth, max_nodes=args.max_nodes)
    if isinstance(res, NotProved):
        return _OUTCOME_CODE[res.outcome], {
            "input": to_string(f),
            "translation": to_string(res.translation),
            "outcome": res.outcome.value,
        }
    payload = {"input": to_string(f), "outcome": Outcome.PROVED.value}
    payload.update(realization_to_doc(res))
    return OK, payload


_COMMANDS = {
    "parse": _cmd_parse,
    "translate": _cmd_translate,
    "project": _cmd_project,
    "prove": _cmd_prove,
    "check": _cmd_check,
    "realize": _cmd_realize,
    "realize-iel": _cmd_realize_iel,
}


def dispatch(argv: Sequence[str], stdin: str | bytes | None = None) -> CommandOutcome:
    """Run one command; never raises on bad input."""
    if isinstance(stdin, bytes):
        stdin = stdin.decode("utf-8")
    try:
        args = _parser().parse_args(list(argv))
        random.seed(args.seed)
        code, payload = _COMMANDS[args.command](args, stdin)
    except UsageError as e:
        return CommandOutcome(INPUT_ERROR, {"error": str(e)})
    except (ParseError, LanguageError, DocumentError, ValueError, KeyError) as e:
        return CommandOutcome(INPUT_ERROR, {"error": f"{type(e).__name__}: {e}"})
    return CommandOutcome(code, payload)


def _pretty(payload: dict, indent: str = "") -> str:
    out = []
    for key, value in payload.items():
        if isinstance(value, dict):
            out.append(f"{indent}{key}:")
            out.append(_pretty(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.append(f"{indent}{key}: ({len(value)} entries)")
            for item in value:
                out.append(indent + "  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            out.append(f"{indent}{key}: {value}")
    return "\n".join(out)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = dispatch(argv)
    if "--pretty" in argv:
        text = _pretty(result.payload)
    else:
        text = json.dumps(result.payload, ensure_ascii=False, sort_keys=False)
    try:
        print(text)
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. `| head`); keep the exit code quiet
        sys.stdout = None
    return result.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
