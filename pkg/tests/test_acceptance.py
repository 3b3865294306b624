"""Acceptance gate: one PASS/FAIL line per criterion, printed even without ``-s``.

Each check gathers every failed condition before asserting, so the printed
line says what broke.
"""

import json
import random
import subprocess
import sys
import time
from itertools import permutations

import pytest
import sympy
from gmpy2 import mpq

from sunitrec.bounds import bm_bound, floor_q, lattice_gap, single_term_bound
from sunitrec.exactalg import compose
from sunitrec.places import (
    EMPTY,
    divisor,
    enlarge,
    height,
    height_by_divisor,
    is_s_unit,
    is_s_unit_by_divisor,
    place_count,
)
from sunitrec.recurrence import is_nondegenerate, pairwise_mult_independent, validate
from sunitrec.solver import solve_single, window_scan

from conftest import F, X, oracle_is_s_unit, oracle_terms, random_poly, random_ratfunc, to_sympy

E2_SPEC = {"coefficients": ["1", "-1"], "roots": ["x", "x+1"], "S": [], "mode": "pair"}


@pytest.fixture
def gate(capsys):
    """Collects failed conditions; prints the verdict line and asserts."""

    class Gate:
        def __init__(self):
            self.failures = []

        def check(self, ok, what):
            if not ok:
                self.failures.append(what)

        def finish(self, label, summary):
            status = "PASS" if not self.failures else "FAIL"
            detail = summary if not self.failures else "; ".join(self.failures)
            with capsys.disabled():
                print(f"\n[{status}] {label}: {detail}")
            assert not self.failures, detail

    return Gate()


def test_ac1_single_term_fixture(gate, E1):
    start = time.perf_counter()
    rep = solve_single(E1, EMPTY)
    elapsed = time.perf_counter() - start
    b = rep.bound_report
    gate.check(b.s_count == 3, f"|S| = {b.s_count}")
    gate.check(b.constants == {"C1": 3, "C2": 4, "C3": 4}, f"constants {b.constants}")
    gate.check(b.final_bound == 4, f"final bound {b.final_bound}")
    gate.check(rep.solutions == [0, 2], f"solutions {rep.solutions}")
    S = b.enlarged_S
    oracle = [n for n, g in enumerate(oracle_terms(E1.coeffs, E1.roots, 8)) if oracle_is_s_unit(g, S)]
    gate.check(oracle == [0, 2], f"naive oracle n <= 8 gives {oracle}")
    gate.check(elapsed < 1.0, f"runtime {elapsed:.3f}s")
    gate.finish("AC1 single-term fixture E1", f"bound 4, solutions [0, 2], oracle agrees, {elapsed:.3f}s")


def test_ac2_pair_sum_fixture(gate, E2, E2_timed):
    rep, elapsed = E2_timed
    b = rep.bound_report
    c = b.constants
    expected = {"C4": 18, "C5": 18, "C6": 18, "C7": 36, "C8": 36, "C9": 18, "C12": 18, "C13": 18}
    for k, v in expected.items():
        gate.check(c[k] == v, f"{k} = {c[k]}, expected {v}")
    gate.check(all(g == 1 for g in b.gaps.values()) and len(b.gaps) == 2, f"gaps {b.gaps}")

    # S' and C10 rebuilt from scratch
    gens = [1 + a ** k for a in E2.roots for k in range(1, floor_q(c["C9"]) + 1)]
    s_prime = enlarge(b.enlarged_S, gens)
    gate.check(s_prime == b.s_prime, "recorded S' differs from a fresh enlargement")
    gate.check(all(is_s_unit_by_divisor(g, b.s_prime)[0] for g in gens), "a generator is not an S'-unit")
    # independent count: irreducible factors of every generator, by sympy
    factors = {sympy.Poly(f, X).monic().as_expr() for g in gens for f, _ in sympy.factor_list(to_sympy(g.num), X)[1]}
    factors |= {X, X + 1}
    sympy_count = sum(sympy.degree(f, X) for f in factors) + 1
    gate.check(b.s_prime_count == sympy_count, f"|S'| = {b.s_prime_count}, sympy count {sympy_count}")
    bm = bm_bound(2, b.s_prime_count)
    c10 = mpq(0)
    for k in range(1, floor_q(c["C9"]) + 1):
        shifted = [f * (1 + a ** k) for f, a in zip(E2.coeffs, E2.roots)]
        ratio = max(height(p / q) for p, q in permutations(shifted, 2))
        c10 = max(c10, mpq(bm + ratio, 1))
    gate.check(c["C10"] == c10, f"C10 = {c['C10']}, recomputed {c10}")
    gate.check(c["C11"] == c10 + c["C9"], f"C11 = {c['C11']}")
    final = floor_q(max(c[k] for k in ("C4", "C5", "C8", "C11", "C13")))
    gate.check(b.final_bound == final, f"final bound {b.final_bound}, recomputed {final}")

    small = [s for s in rep.solutions if s[0] <= 6]
    gate.check(small == [(1, 0), (2, 1)], f"solutions with n <= 6: {small}")
    gs = oracle_terms(E2.coeffs, E2.roots, 6)
    oracle = [(n, m) for n in range(7) for m in range(n) if oracle_is_s_unit(gs[n] + gs[m], b.enlarged_S)]
    gate.check(oracle == [(1, 0), (2, 1)], f"hand oracle n <= 6 gives {oracle}")
    for idx, w in rep.witnesses.items():
        fast = is_s_unit(w.value, b.enlarged_S)
        slow = is_s_unit_by_divisor(w.value, b.enlarged_S)[0]
        gate.check(fast and slow, f"solution {idx} fails a membership test ({fast}, {slow})")
    gate.check(elapsed <= 300, f"runtime {elapsed:.1f}s")
    gate.finish(
        "AC2 pair-sum fixture E2",
        f"C10 = {c['C10']}, C11 = {c['C11']}, |S'| = {b.s_prime_count}, final bound {b.final_bound}, "
        f"{len(rep.solutions)} solutions, {elapsed:.1f}s",
    )


def test_ac3_height_properties(gate):
    rng = random.Random(3)
    skipped_f = 0
    for i in range(200):
        f, g = random_ratfunc(rng, 4), random_ratfunc(rng, 4)
        n = rng.randint(-6, 6)
        A = random_poly(rng, 3)
        hf, hg = height(f), height(g)
        gate.check(hf >= 0 and hf == height(f.inverse()), f"#{i} a) fails for {f.render()}")
        s = f + g
        if not s.is_zero():
            gate.check(hf - hg <= height(s) <= hf + hg, f"#{i} b) fails")
        gate.check(hf - hg <= height(f * g) <= hf + hg, f"#{i} c) fails")
        gate.check(height(f ** n) == abs(n) * hf, f"#{i} d) fails for n = {n}")
        gate.check((hf == 0) == f.is_constant(), f"#{i} e) fails")
        value = compose(A, f)
        if value.is_zero():
            skipped_f += 1  # only when f is a constant root of A
        else:
            gate.check(height(value) == A.degree * hf, f"#{i} f) fails")
    gate.finish("AC3 six height properties", f"200 instances exact, {skipped_f} f)-checks had A(f) = 0")


def test_ac4_sum_formula(gate):
    rng = random.Random(4)
    for i in range(200):
        f = random_ratfunc(rng)
        d, _ = divisor(f)
        gate.check(d.weighted_total() == 0, f"#{i} weighted total {d.weighted_total()}")
        gate.check(height_by_divisor(f) == height(f), f"#{i} heights differ for {f.render()}")
    gate.finish("AC4 sum formula and height equivalence", "200 random functions")


def test_ac5_lattice_gap(gate):
    cases = [("x", "x+1", 1), ("x^2/(x+1)", "(x+1)^3/x", 2)]
    for gamma, delta, expected in cases:
        g, d = F(gamma), F(delta)
        c = lattice_gap(g, d)
        gate.check(c == expected, f"gap({gamma}, {delta}) = {c}")
        gp, dp = [F("1")], [F("1")]
        for _ in range(50):
            gp.append(gp[-1] * g)
            dp.append(dp[-1] * d)
        for n in range(51):
            for m in range(51):
                if not (n or m):
                    continue
                h = height(gp[n] / dp[m])
                gate.check(h >= c * max(n, m), f"({gamma}, {delta}) fails at n={n}, m={m}")
                if expected == 1:
                    gate.check(h == max(n, m), f"no equality at n={n}, m={m}")
    gate.finish("AC5 lattice gap soundness", "gaps 1 and 2 hold on 0 <= n, m <= 50, equality for (x, x+1)")


def test_ac6_independence(gate):
    def pmi(a, b):
        return pairwise_mult_independent(validate([F("1"), F("1")], [F(a), F(b)]))

    gate.check(pmi("x", "x+1"), "(x, x+1) should be independent")
    gate.check(pmi("x/(x+1)", "x*(x+1)"), "(x/(x+1), x(x+1)) should be independent")
    gate.check(not pmi("x^2", "x^3"), "(x^2, x^3) should be dependent")
    gate.check(not is_nondegenerate(validate([F("1"), F("1")], [F("x"), F("2*x")])), "(x, 2x) should be degenerate")
    gate.finish("AC6 independence checks", "all four verdicts as expected")


def test_ac7_window_consistency(gate, E1, E2, E2_solved):
    b1 = single_term_bound(E1, EMPTY).final_bound
    w1 = window_scan(E1, EMPTY, "single", b1 + 1, 2 * b1)
    gate.check(w1.count == 0, f"E1 window found {w1.solutions}")
    b2 = E2_solved.bound_report.final_bound
    start = time.perf_counter()
    w2 = window_scan(E2, EMPTY, "pair", b2 + 1, b2 + 20)
    elapsed = time.perf_counter() - start
    gate.check(w2.count == 0, f"E2 window found {w2.solutions}")
    gate.finish(
        "AC7 window consistency",
        f"E1 ({b1}, {2 * b1}] and E2 ({b2}, {b2 + 20}] with all m < n: 0 found ({elapsed:.1f}s)",
    )


def _cli_solve(path, threads):
    proc = subprocess.run(
        [sys.executable, "-m", "sunitrec", "solve", "--json", "--threads", str(threads), str(path)],
        capture_output=True,
        check=False,
    )
    return proc.returncode, proc.stdout


def test_ac8_determinism(gate, tmp_path):
    path = tmp_path / "e2.json"
    path.write_text(json.dumps(E2_SPEC))
    runs = {t: _cli_solve(path, t) for t in (1, 3)}
    codes = {t: r[0] for t, r in runs.items()}
    gate.check(all(c == 0 for c in codes.values()), f"exit codes {codes}")
    gate.check(runs[1][1] == runs[3][1], "reports differ between --threads 1 and --threads 3")
    again = _cli_solve(path, 1)
    gate.check(again == runs[1], "two --threads 1 runs differ")
    doc = json.loads(runs[1][1])
    gate.check([s["index"] for s in doc["solutions"]][:2] == [[1, 0], [2, 1]], "unexpected solutions")
    gate.finish("AC8 determinism", f"3 CLI runs byte-identical ({len(runs[1][1])} bytes)")
