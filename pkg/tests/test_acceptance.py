"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary (see conftest.py).  All
comparisons are exact; there are no tolerances.
"""
import time

from conftest import ACCEPTANCE
from qhk.checks import (MUTATIONS, check_corollary, check_lemma1, check_lemma2, check_lemma3,
                        check_structure, check_trace_identities, kernel_oracle)
from qhk.closed_forms import corollary_coefficient, he_coefficient
from qhk.decompose import FORBIDDEN

NS = (2, 3, 4, 5)


def record(k: int, ok: bool, text: str):
    ACCEPTANCE[k] = (ok, text)
    print(f"{'PASS' if ok else 'FAIL'} criterion {k}: {text}")
    assert ok, text


def _timed(fn, *args):
    t0 = time.perf_counter()
    r = fn(*args)
    return r, time.perf_counter() - t0


def test_criterion_1_lambda_stage():
    needed = ("interior gamma0 alpha0", "omega stage of gamma0 alpha0", "lambda constants",
              "projection onto H E Lambda^2_0 E", "skew defect")
    bad, slowest = [], 0.0
    for n in NS:
        r, dt = _timed(check_lemma1, n)
        slowest = max(slowest, dt)
        sub = r.details["subchecks"]
        if r.status != "pass" or any(sub.get(s) != "pass" for s in needed) or dt >= 10:
            bad.append((n, {k: v for k, v in sub.items() if v != "pass"}, round(dt, 2)))
    record(1, not bad, f"interior product, -4n stage, lambda_1..4, six-term projection, skew defect "
                       f"exact for n=2..5 (slowest {slowest:.2f}s){' ' + str(bad) if bad else ''}")


def test_criterion_2_he_coefficient():
    got = {n: check_lemma2(n) for n in NS}
    ok = all(r.status == "pass" and r.actual["coefficient of h e_2"] == str(he_coefficient(n))
             for n, r in got.items())
    shown = ", ".join(f"n={n}: {r.actual['coefficient of h e_2']}" for n, r in got.items())
    record(2, ok, f"T_HE(gamma_0 alpha_0) = 8n(2n+1)/(5(4n-3)) h e_2 ({shown})")


def test_criterion_3_s3h_lambda3():
    bad = []
    for n in NS:
        r = check_lemma3(n)
        sub = r.details["subchecks"]
        want_l3 = "vacuous" if n == 2 else "pass"
        if (r.status != "pass" or sub["beta display"] != "pass"
                or sub["S3H Lambda3 E projection"] != "pass"
                or sub["beta constants (b1, b3, b4 - b2, b5)"] != "pass"
                or sub["S3H Lambda3_0 E component"] != want_l3):
            bad.append((n, sub))
    record(3, not bad, "two-term projection and beta display exact for n=2..5 (beta_2, beta_4 enter "
                       "only as beta_4 - beta_2); Lambda^3_0 sub-check vacuous at n=2, passes n>=3"
                       f"{' ' + str(bad) if bad else ''}")


def test_criterion_4_corollary():
    got = {n: check_corollary(n) for n in NS}
    ok = all(r.status == "pass" and r.actual["coefficient of sym(h h h~) e_2"] == str(corollary_coefficient(n))
             for n, r in got.items())
    shown = ", ".join(f"n={n}: {r.actual['coefficient of sym(h h h~) e_2']}" for n, r in got.items())
    record(4, ok, f"T_(S3H)E(gamma_0 alpha_0) = 4n(n+3)/(4n-3) sym(h h h~) e_2 ({shown})")


def test_criterion_5_traces():
    r2 = check_trace_identities(2)
    rs = [check_trace_identities(n, 50, 0) for n in (3, 4)]
    ok = (r2.status == "pass" and r2.details["checked"] == 120
          and all(r.status == "pass" and r.details["checked"] >= 50 for r in rs))
    record(5, ok, f"both traces vanish on all {r2.details['checked']} basis elements at n=2 and on "
                  f"{[r.details['checked'] for r in rs]} seeded samples at n=3,4")


def test_criterion_6_kernel_oracle():
    k2, t2 = _timed(kernel_oracle, 2)
    k3, t3 = _timed(kernel_oracle, 3)
    forbidden_zero = all(k.componentNorms[s] == "zero" for k in (k2, k3) for s in FORBIDDEN)
    ok = (k2.status == k3.status == "pass" and k2.reverified and k3.reverified and forbidden_zero
          and k2.domainDim == 120 and k2.kernelDim <= 64 and t2 < 60
          and k3.domainDim == 504 and t3 < 15 * 60)
    record(6, ok, f"n=2: dim {k2.domainDim}, kernel {k2.kernelDim} <= 64 ({t2:.1f}s); "
                  f"n=3: dim {k3.domainDim}, kernel {k3.kernelDim} ({t3:.1f}s); forbidden components zero")


def test_criterion_7_structure():
    got = {n: check_structure(n) for n in NS}
    bad = {n: r.details["subchecks"] for n, r in got.items() if r.status != "pass"}
    record(7, not bad, "quaternion relations, Omega rotation invariance, dim Lambda^2_0 E = 2n^2-n-1, "
                       f"dim Lambda^3_0 E = C(2n,3)-2n for n=2..5{' ' + str(bad) if bad else ''}")


def test_criterion_8_mutation_sensitivity():
    caught = {}
    for name, make in MUTATIONS.items():
        for m in (2, 3):
            v = make(m)
            failing = [fn.__name__ for fn in (check_lemma1, check_lemma2, check_lemma3, check_corollary)
                       if fn(m, v).status == "fail"]
            caught[(name, m)] = failing
    ok = all(caught.values())
    summary = "; ".join(f"{name}@n={m}: {len(f)}/4 checks fail" for (name, m), f in caught.items())
    record(8, ok, f"every mutation breaks criteria 1-4 ({summary})")
