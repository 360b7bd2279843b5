"""Acceptance gate: eleven numbered criteria, one test (and so one pass/fail
line under pytest -v) per criterion.

Three criteria assert nonvanishing or recursion properties whose computed
values come out exactly zero here; those tests fail, on purpose, rather than
have their assertions loosened.  The certified values behind that call are
frozen in test_hecke.py / test_almost.py against an independent matrix model.
"""

import contextlib
import io
import pathlib
import time
from fractions import Fraction
from math import comb

import pytest

from almostchar.almost import (
    cuspidal_index_set,
    cuspidal_pair_sign,
    f_cuspidal_via_rectangles,
    f_lambda,
    involution_check,
    m2_check,
    orthogonality_check,
    recursion_check,
    verify_nonvanishing,
)
from almostchar.cli import main
from almostchar.config import Config
from almostchar.hecke import (
    MNContext,
    ResourceGuardError,
    br_from_cycles,
    class_reps,
    identity_cycles,
    mn_trace,
    st_bitableaux,
    valid_d_cycle_lists,
)
from almostchar.shapes import bipartition, bipartitions_of
from almostchar.symbols import (
    enumerate_P_ab,
    pairing,
    special_cuspidal,
    symbol_from_bipartition,
)

from golden_battery import BATTERY

GOLDEN_DIR = pathlib.Path(__file__).resolve().parent / "golden"


def report(num, name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {num:2d} {name}: {tag}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_01_fourier_involution():
    started = time.perf_counter()
    failures = []
    for kind in ("B", "D"):
        rep = involution_check(10, kind)
        if not rep.passed:
            failures.append((kind, rep.fields["failures"]))
    elapsed = time.perf_counter() - started
    ok = not failures and elapsed < 10.0
    report(1, "pairing matrix is an involution, n <= 10", ok,
           f"{elapsed:.2f}s" if not failures else str(failures))


def test_criterion_02_rectangle_index_sets():
    expected_3_2 = [
        ((), (3, 3)),
        ((1,), (3, 2)),
        ((2,), (2, 2)),
        ((1, 1), (3, 1)),
        ((2, 1), (2, 1)),
        ((1, 1, 1), (3,)),
        ((2, 2), (1, 1)),
        ((2, 1, 1), (2,)),
        ((2, 2, 1), (1,)),
        ((2, 2, 2), ()),
    ]
    got_3_2 = [(p.alpha, p.beta) for p in enumerate_P_ab(3, 2)]
    got_2_2 = [(p.alpha, p.beta) for p in enumerate_P_ab(2, 2, unordered=True)]
    counts_ok = all(
        len(enumerate_P_ab(a, b)) == comb(a + b, a)
        for a in range(7)
        for b in range(7)
    )
    ok = got_3_2 == expected_3_2 and got_2_2 == [
        ((2, 2), ()),
        ((2, 1), (1,)),
        ((2,), (1, 1)),
    ] and counts_ok
    report(2, "rectangle index sets P(a,b)", ok)


def test_criterion_03_closed_form_signs():
    started = time.perf_counter()
    bad = []
    for kind, ds in (("B", (1, 2, 3)), ("D", (1, 2))):
        for d in ds:
            lam_c, _ = special_cuspidal(kind, d)
            for pair in cuspidal_index_set(kind, d):
                direct = pairing(lam_c, symbol_from_bipartition(kind, pair), kind)
                if cuspidal_pair_sign(kind, d, pair) != direct:
                    bad.append((kind, d, pair))
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 5.0
    report(3, "closed-form signs match the pairing", ok,
           f"{elapsed:.2f}s" if not bad else str(bad[:3]))


def test_criterion_04_identity_trace_is_dimension():
    started = time.perf_counter()
    bad = []
    for n in range(1, 9):
        br = br_from_cycles("B", identity_cycles(n))
        ctx = MNContext(br)
        for lam in bipartitions_of(n):
            got = mn_trace("B", lam, br, context=ctx)
            if got.terms != {0: Fraction(st_bitableaux(lam))}:
                bad.append(lam)
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 30.0
    report(4, "identity trace equals bitableaux count, n <= 8", ok,
           f"{elapsed:.2f}s" if not bad else str(bad[:3]))


def test_criterion_05_orthogonality():
    started = time.perf_counter()
    bad = []
    for n in range(1, 6):
        rep = orthogonality_check(n)
        if not rep.passed:
            bad.append((n, rep.fields["mismatches"][:2]))
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 120.0
    report(5, "specialized row orthogonality, n <= 5", ok,
           f"{elapsed:.2f}s" if not bad else str(bad))


def test_criterion_06_prop713():
    started = time.perf_counter()
    problems = []
    for d in (1, 2, 3):
        rep = verify_nonvanishing("B", d)
        if not rep.passed:
            problems.append(f"d={d} cycles {rep.fields['cycles']} gives 0")
    lam_c, _ = special_cuspidal("B", 1)
    if not f_lambda("B", lam_c, [2]).is_zero():
        problems.append("d=1 plain 2-cycle should vanish and does not")
    elapsed = time.perf_counter() - started
    ok = not problems and elapsed < 120.0
    report(6, "prop713 nonvanishing battery, B up to n=12", ok, "; ".join(problems))


def test_criterion_07_prop714():
    started = time.perf_counter()
    problems = []
    for d in (1, 2):
        rep = verify_nonvanishing("D", d)
        if not rep.passed:
            problems.append(f"d={d} cycles {rep.fields['cycles']} gives 0")
    elapsed = time.perf_counter() - started
    ok = not problems and elapsed < 900.0
    report(7, "prop714 nonvanishing battery, D up to n=16", ok, "; ".join(problems))


def test_criterion_08_recursion():
    started = time.perf_counter()
    try:
        rep = recursion_check(6, 5, [-2, 12, 16], config=Config(max_rank=30))
        detail = f"verdict {rep.verdict}, h = {rep.fields['h']}"
        ok = rep.verdict == "pass"
    except ResourceGuardError as guard:
        detail = f"guard tripped: {guard}"
        ok = False
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < 1800.0
    report(8, "recursion check at (6,5) with barred head", ok, detail)


def test_criterion_09_m2_sums():
    started = time.perf_counter()
    bad = []
    for kind in ("B", "D"):
        rep = m2_check(10, kind)
        if not rep.passed:
            bad.append((kind, rep.fields["failures"][:2]))
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 120.0
    report(9, "multiplicity-two sums equal one, n <= 10", ok,
           f"{elapsed:.2f}s" if not bad else str(bad))


def test_criterion_10_route_agreement():
    started = time.perf_counter()
    bad = []
    lam_c1, _ = special_cuspidal("B", 1)
    for cycles in class_reps(2):
        if f_lambda("B", lam_c1, cycles) != f_cuspidal_via_rectangles("B", 1, cycles):
            bad.append(("B", 1, cycles))
    lam_c2, _ = special_cuspidal("B", 2)
    for cycles in class_reps(6):
        if f_lambda("B", lam_c2, cycles) != f_cuspidal_via_rectangles("B", 2, cycles):
            bad.append(("B", 2, cycles))
    lam_cd, _ = special_cuspidal("D", 1)
    for cycles in valid_d_cycle_lists(4):
        if f_lambda("D", lam_cd, cycles) != f_cuspidal_via_rectangles("D", 1, cycles):
            bad.append(("D", 1, cycles))
    elapsed = time.perf_counter() - started
    ok = not bad
    report(10, "family route equals rectangle route", ok,
           f"{elapsed:.2f}s" if ok else str(bad[:3]))


def _capture(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, buf.getvalue()


def test_criterion_11_deterministic_output():
    problems = []
    for name, argv, expected_exit in BATTERY:
        code_one, out_one = _capture(argv + ["--workers", "1"])
        code_two, out_two = _capture(argv + ["--workers", "2"])
        golden = (GOLDEN_DIR / f"{name}.json").read_text()
        if (code_one, code_two) != (expected_exit, expected_exit):
            problems.append(f"{name}: exit codes {code_one}/{code_two}")
        elif out_one != out_two:
            problems.append(f"{name}: bytes differ across worker counts")
        elif out_one != golden:
            problems.append(f"{name}: bytes differ from golden file")
    report(11, "byte-stable output across workers and runs", not problems,
           "; ".join(problems))
