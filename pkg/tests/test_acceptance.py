"""Acceptance checks.  Each test prints one PASS/FAIL line.

Run alone with:  pytest tests/test_acceptance.py -v
"""

import random
import time

import pytest

from corpus import IEL_MINUS_THEOREMS, IEL_THEOREMS, S4VG_NON_THEOREMS, S4VMINUS_NON_THEOREMS
from validators import independent_hilbert_valid, independent_sequent_valid, mutate_hilbert, mutate_sequent
from ielkit.formula import Evid, Implies, Polarity, Var, Ver, is_ground, vars_of_all
from ielkit.generators import random_derivation, random_hypothetical_derivation
from ielkit.hilbert import check_derivation, deduction, internalize, v_lift
from ielkit.hilbert.derivation import Hyp, Line, MP
from ielkit.realize import realize
from ielkit.sequent import prove
from ielkit.sequent.core import Sequent, check_derivation as check_sequent
from ielkit.sequent.prover import Outcome
from ielkit.syntax import parse, to_string
from ielkit.translate import forgetful_projection, godel_tr

HILBERT_FOR = {"s4vminus_g": "lpvminus", "s4vg": "lpv"}


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, problems=()):
        if problems:
            detail += "; " + "; ".join(problems)
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail

    return emit


def _corpus():
    return [(f, "s4vminus_g") for f in IEL_MINUS_THEOREMS] + [(f, "s4vg") for f in IEL_THEOREMS]


@pytest.fixture(scope="module")
def proofs():
    out = []
    for text, system in _corpus():
        tr = godel_tr(parse(text, "iel"))
        start = time.perf_counter()
        res = prove(Sequent((), (tr,)), system, max_depth=50)
        out.append((text, system, tr, res, time.perf_counter() - start))
    return out


def test_criterion_1_translation(report):
    got = to_string(godel_tr(parse("~K _|_", "iel")))
    report(1, got == "[]~[]V[]_|_", f"tr(~K _|_) printed as {got}")


def test_criterion_2_theorems_proved(proofs, report):
    bad = [
        f"{text} in {system}: {res.outcome.value} after {secs:.2f}s"
        for text, system, _, res, secs in proofs
        if res.outcome is not Outcome.PROVED or secs >= 5.0 or not check_sequent(res.derivation, system).ok
    ]
    slowest = max(secs for *_, secs in proofs)
    detail = f"{len(proofs) - len(bad)}/{len(proofs)} proved and checked, slowest {slowest:.2f}s"
    report(2, not bad, detail, bad)


def test_criterion_3_saturated_non_theorems(report):
    cases = [(f, "s4vg") for f in S4VG_NON_THEOREMS] + [(f, "s4vminus_g") for f in S4VMINUS_NON_THEOREMS]
    bad = []
    for text, system in cases:
        res = prove(Sequent((), (godel_tr(parse(text, "iel")),)), system, max_depth=50)
        if res.outcome is not Outcome.SATURATED:
            bad.append(f"{text} in {system}: {res.outcome.value}")
    report(3, not bad, f"{len(cases) - len(bad)}/{len(cases)} saturated-unprovable", bad)


def test_criterion_4_realization(proofs, report):
    bad = []
    total_lines = 0
    for text, system, tr, res, _ in proofs:
        r = realize(res.derivation, system)
        total_lines += len(r.witness)
        problems = []
        if not check_derivation(r.witness, HILBERT_FOR[system], r.cs, r.mode).ok:
            problems.append("witness rejected")
        if r.witness[-1].formula is not r.formula:
            problems.append("witness concludes another formula")
        if forgetful_projection(r.formula) is not tr:
            problems.append("projection differs from tr(F)")
        negative = [r.terms[f.id] for f in r.families if f.polarity is Polarity.NEGATIVE]
        if not all(type(t) is Var for t in negative) or len(set(negative)) != len(negative):
            problems.append("negative families share or lack variables")
        leftover = vars_of_all(line.formula for line in r.witness) & r.provisional
        if leftover:
            problems.append(f"provisional variables {sorted(leftover)} remain")
        if problems:
            bad.append(f"{text}: {', '.join(problems)}")
    detail = f"{len(proofs) - len(bad)}/{len(proofs)} realized ({total_lines} witness lines)"
    report(4, not bad, detail, bad)


def test_criterion_5_projection_of_random_derivations(report):
    rng = random.Random(5)
    bad = []
    for k in range(50):
        system = "lpvminus" if k % 2 else "lpv"
        d = random_derivation(rng, system, max_height=6)
        assert check_derivation(d.lines, system, d.cs, d.mode).ok
        target = forgetful_projection(d.conclusion)
        seq = "s4vminus_g" if system == "lpvminus" else "s4vg"
        res = prove(Sequent((), (target,)), seq, max_depth=50)
        if res.outcome is not Outcome.PROVED:
            bad.append(f"{to_string(target)}: {res.outcome.value}")
    report(5, not bad, f"{50 - len(bad)}/50 projected conclusions proved", bad)


def test_criterion_6_internalize_and_v_lift(report):
    rng = random.Random(6)
    bad = []
    for k in range(20):
        d = random_derivation(rng, "lpvminus", max_height=5, mode="cs")
        F = d.conclusion
        inner = internalize(d.lines, "lpvminus", d.cs, mode="cs")
        if inner.term is None or not is_ground(inner.term):
            bad.append(f"#{k}: term not ground")
        elif inner.conclusion is not Evid(inner.term, F):
            bad.append(f"#{k}: internalized conclusion {to_string(inner.conclusion)}")
        elif not check_derivation(inner.derivation, "lpvminus", inner.cs, "cs").ok:
            bad.append(f"#{k}: t:F derivation rejected")
        lifted = v_lift(d.lines, "lpvminus", cs=d.cs, mode="cs")
        if lifted.conclusion is not Ver(F) or not check_derivation(lifted.derivation, "lpvminus", lifted.cs, "cs").ok:
            bad.append(f"#{k}: v_lift did not yield an accepted VF")
    report(6, not bad, f"{20 - len({b.split(':')[0] for b in bad})}/20 internalized and V-lifted", bad)


def test_criterion_7_mutations(proofs, report):
    rng = random.Random(7)
    worst, unexplained = 100, []
    for k in range(10):
        system = ("lpv", "lpvminus", "s4v", "s4vminus")[k % 4]
        d = random_derivation(rng, system, max_height=5, steps=10)
        rejected = 0
        for _ in range(100):
            m = mutate_hilbert(rng, d.lines)
            if not check_derivation(m, system, d.cs, d.mode).ok:
                rejected += 1
            elif not independent_hilbert_valid(m, system, d.cs):
                unexplained.append(f"hilbert #{k}")
        worst = min(worst, rejected)
    for text, system, _, res, _ in proofs[:10]:
        rejected = 0
        for _ in range(100):
            m = mutate_sequent(rng, res.derivation)
            if not check_sequent(m, system).ok:
                rejected += 1
            elif not independent_sequent_valid(m, system):
                unexplained.append(f"sequent {text}")
        worst = min(worst, rejected)
    detail = f"worst rejection rate {worst}/100 over 20 derivations, {len(unexplained)} unexplained acceptances"
    report(7, worst >= 99 and not unexplained, detail)


def test_criterion_8_deduction(report):
    rng = random.Random(8)
    bad = []
    for k in range(20):
        system = "lpvminus" if k % 2 else "lpv"
        d = random_hypothetical_derivation(rng, system)
        (A,) = d.hypotheses
        out = deduction(d.lines, system, A, d.cs, d.mode)
        if out[-1].formula is not Implies(A, d.conclusion):
            bad.append(f"#{k}: concluded {to_string(out[-1].formula)}")
            continue
        n = len(out)
        again = out + (Line(A, Hyp()), Line(d.conclusion, MP(n, n + 1)))
        res = check_derivation(again, system, d.cs, d.mode)
        if not res.ok or res.conclusion is not d.conclusion:
            bad.append(f"#{k}: MP with the hypothesis failed")
    report(8, not bad, f"{20 - len(bad)}/20 deductions re-derive F by MP", bad)
