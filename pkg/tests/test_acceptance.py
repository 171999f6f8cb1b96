"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import math
import random
from fractions import Fraction

import pytest

from sptri.bruhat import IDENTITY_CELL, WEYL, bruhat_cell
from sptri.canonical import ENTRY
from sptri.families import INF, HFamily
from sptri.identities import rand_gl, rand_lower, rand_sym, run_identities
from sptri.matrix import B, I2, J2, SIGMA4, SIGMA5, Mat, dagger
from sptri.parabolic import QElement
from sptri.scalar import SYMBOLIC
from sptri.spclassify import conjugacy_witness, crazytau_analysis, route_prep, sp_classify, w0_gamma
from sptri.subalgebra import LieSub, classify_subalgebra
from sptri.triple import (
    GIOVANNI, SPANS, Coboundary, SymSpan, Triple, check_cocycle, detect_coboundary, extract_triple, tau_equivalent,
)
from sptri.verify import verify_theorem

from .test_bruhat import cell_failures
from .test_spclassify import ma_conjugate, representatives
from .test_subalgebra import conjugation_invariance_failures

TOL = 1e-9


@pytest.fixture(scope="module")
def theorem_report():
    return verify_theorem(grid=7, tol=TOL, identity_draws=200)


def announce(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


def test_criterion_1_theorem_reproduction(capsys, theorem_report):
    r = theorem_report
    classify = [c for c in r.claims if c.group == "classify"]
    ok = (r.passed and len(r.reached) == 19 and r.counts() == {"2": 5, "3": 9, "4": 4, "5": 1}
          and all(c.residual <= TOL for c in classify) and r.elapsed < 60)
    detail = (f"{len(r.reached)} families, counts {r.counts()}, worst residual {r.worst_residual:.2g}, "
              f"{len(r.claims)} claims, {r.elapsed:.1f} s, failures {[c.name for c in r.failures]}")
    announce(capsys, 1, "theorem reproduction", ok, detail)


def test_criterion_2_case_table(capsys, theorem_report):
    cases = [c for c in theorem_report.claims if c.group == "case"]
    rows = {c.name.split(":")[0][5:] for c in cases}
    bad = [c.name for c in cases if not c.passed]
    gammas = [Fraction(x) for x in ("-2", "-1", "-1/4", "0", "1/3", "1", "2")]
    dictionary = all(w0_gamma(g) == -g / (2 * g + 1) and w0_gamma(w0_gamma(g)) == g for g in gammas)
    dictionary = dictionary and w0_gamma(Fraction(-1, 2)) is INF
    pair = conjugacy_witness(ENTRY["(3.iv)"].triple(), ENTRY["(3.v)"].triple(Fraction(-1, 2)))
    phrases = []
    for ident in ("(3.iii)", "(3.xi)"):
        t = ENTRY[ident].triple()
        prep, _ = route_prep(ENTRY[ident])
        an = crazytau_analysis(SymSpan([dagger(prep, b) for b in t.sigma.basis]), t.h.conjugate(prep), 0)
        phrases.append((not an.ok) and "are not satisfied" in an.transcript[-1])
    ok = len(rows) == 16 and not bad and dictionary and pair.conjugate and pair.residual <= TOL and all(phrases)
    detail = (f"{len(rows)} rows / {len(cases)} parametrised claims, failing {bad}, dictionary exact: {dictionary}, "
              f"(3.iv)~(3.v,-1/2) residual {pair.residual:.2g}, crazytau transcripts: {phrases}")
    announce(capsys, 2, "case table", ok, detail)


def test_criterion_3_exact_identities(capsys):
    fails = run_identities(1000)
    ok = len(fails) == 8 and not any(fails.values())
    announce(capsys, 3, "exact identities on 1000 rational draws", ok, ", ".join(f"{k}={v}" for k, v in fails.items()))


def test_criterion_4_cocycle_suite(capsys):
    diag_fam = HFamily("H_gamma0(sigma3)", Fraction(-1, 2))
    g = check_cocycle(Triple(SPANS["Sigma3"], diag_fam, GIOVANNI), backend=SYMBOLIC)
    g_cob = detect_coboundary(GIOVANNI, diag_fam)
    tau0 = Mat.diag(1, -1)
    unip = HFamily("H_0(sigma3)")
    c = check_cocycle(Triple(SPANS["Sigma3"], unip, Coboundary(tau0)))
    found = detect_coboundary(Coboundary(tau0), unip)
    recovered = found is not None and tau_equivalent(Coboundary(found), Coboundary(tau0), SPANS["Sigma3"], unip)

    def rot_elem(theta):
        r = Mat([[math.cos(theta), math.sin(theta)], [-math.sin(theta), math.cos(theta)]])
        return Mat.from_blocks(r, Mat.zeros(2), r * theta, r)

    discrete = extract_triple([rot_elem(2 * math.pi * k) for k in (0, 1, 2)], TOL).discrete_sigma
    ok = g.passed and g.exact_zero and g_cob is None and c.passed and recovered and discrete
    detail = (f"twisted cocycle defect exactly 0: {g.exact_zero}, not a coboundary: {g_cob is None}; "
              f"coboundary triple passes: {c.passed}, tau0 recovered: {recovered}; rotation family discrete: {discrete}")
    announce(capsys, 4, "cocycle suite", ok, detail)


def test_criterion_5_subalgebra_classifier(capsys):
    fails = {amb: conjugation_invariance_failures(amb, 500, seed=5) for amb in ("sigma1", "sigma2", "sigma3")}
    rng = random.Random(5)
    folding = lgamma = True
    for _ in range(200):
        p, q = rng.choice([0, 1, -2, Fraction(1, 3)]), Fraction(rng.randint(1, 9), rng.randint(1, 5))
        for amb, other in (("sigma1", J2), ("sigma2", SIGMA5)):
            a = classify_subalgebra(LieSub(amb, [I2 * p - other * q]))
            want = INF if p == 0 else abs(q / p)
            folding = folding and a.param == want
        gamma = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        lab = classify_subalgebra(LieSub("sigma3", [B, I2 * gamma + SIGMA4 + B * rng.randint(-5, 5)]))
        lgamma = lgamma and lab.name == "l_gamma" and lab.param == gamma
    ok = not any(fails.values()) and folding and lgamma
    detail = f"invariance failures per ambient {fails} (500 each), alpha folding: {folding}, l_gamma preserved: {lgamma}"
    announce(capsys, 5, "subalgebra classifier", ok, detail)


def test_criterion_6_bruhat_cells(capsys):
    fails = {w.tag: cell_failures(w, 100, seed=6) for w in WEYL}
    rng = random.Random(6)
    q_ok = all(bruhat_cell(QElement(rand_sym(rng), rand_lower(rng)).matrix) == IDENTITY_CELL for _ in range(200))
    ok = len(fails) == 8 and not any(fails.values()) and q_ok
    detail = f"mislabelled products per Weyl element {list(fails.values())} (100 each), QElement identity cell: {q_ok}"
    announce(capsys, 6, "Bruhat cells", ok, detail)


def test_criterion_7_ma_invariance(capsys):
    rng = random.Random(7)
    reps = representatives()
    moved = []
    for label in reps:
        t = label.representative()
        if not (sp_classify(t).label == label):
            moved.append(f"{label} (idempotence)")
        for _ in range(3):
            c = sp_classify(ma_conjugate(t, rand_gl(rng)))
            if c.label != label or c.residual > TOL:
                moved.append(str(label))
    ok = not moved
    announce(capsys, 7, "classifier idempotence and MA-invariance", ok,
             f"{len(reps)} representatives x 3 random MA conjugations, mismatches {moved}")
