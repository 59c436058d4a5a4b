"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Under pytest the lines appear in the terminal summary; run directly with
``python tests/test_acceptance.py`` they are printed as each check finishes.
"""

import io
import random
import sys
import time
from contextlib import redirect_stdout
from functools import lru_cache

import pytest

from filiform_lsa.affine import (
    central_extension,
    find_affine_class,
    is_affine_by_definition,
    is_affine_by_slots,
    lsa_on_quotient,
    quotient_by_center,
    verify_lsa,
)
from filiform_lsa.cli import main as cli_main
from filiform_lsa.cli import table_rows
from filiform_lsa.cohomology import (
    ADJOINT,
    TRIVIAL,
    betti_numbers,
    coboundary_matrix,
    cohomology,
    conjecture_checks,
    is_cocycle,
    omega_cochain,
)
from filiform_lsa.filiform import (
    ClassLabel,
    FiliformParams,
    build_algebra,
    find_witness,
    index_set,
    psi_cochain,
    standard_graded,
    table_classes,
)
from filiform_lsa.lie_core import center_sparse, is_filiform, jacobi_defects

import oracles

TABLE_LABELS = [l for n in range(3, 12) for l in table_classes(n)]


# lines collected here are printed in the pytest terminal summary (see conftest.py)
REPORT_LINES = []


def report(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    REPORT_LINES.append(line)
    if __name__ == "__main__":
        print(line, flush=True)
    return ok


@lru_cache(maxsize=None)
def table_witnesses():
    out = []
    for label in TABLE_LABELS:
        p = find_witness(label, seed=0)
        assert p is not None, f"no witness for {label}"
        out.append((label, p, build_algebra(p)))
    return tuple(out)


@lru_cache(maxsize=None)
def random_witnesses(n, count=20):
    """``count`` pairs (params, algebra) in dimension n, cycling through classes and seeds."""
    labels = table_classes(n)
    out = []
    seed = 0
    while len(out) < count:
        label = labels[seed % len(labels)]
        p = find_witness(label, seed=seed, density=0.5)
        if p is not None:
            g = build_algebra(p)
            g.validate()
            out.append((p, g))
        seed += 1
    return tuple(out)


def all_generated():
    gs = [g for _, _, g in table_witnesses()]
    for n in range(3, 11):
        gs.extend(g for _, g in random_witnesses(n))
    return gs


# -- 1 ------------------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    rows = table_rows(3, 11, seed=0, budget=2000)
    elapsed = time.perf_counter() - start
    classified = [r for r in rows if r["status"] != "info"]
    bad = [r["class"] for r in classified if r["status"] != "ok"]
    ok = len(classified) == 35 and not bad and elapsed < 120
    return report(1, ok, f"table: {len(classified) - len(bad)}/35 rows match b2 and affine column "
                         f"({elapsed:.1f}s){'; mismatches ' + ', '.join(bad) if bad else ''}")


# -- 2 ------------------------------------------------------------------------------

def criterion_2():
    psi_bad = [(n, ks) for n in range(3, 13) for ks in index_set(n)
               if not is_cocycle(standard_graded(n), psi_cochain(n, *ks))]
    rng = random.Random(2)
    pool = [g for _, _, g in table_witnesses() if g.n >= 5]
    for n in range(5, 11):
        pool.extend(g for _, g in random_witnesses(n))
    sample = rng.sample(pool, 50)
    omega_bad = [g.label() for g in sample for l in (1, 2) if not is_cocycle(g, omega_cochain(g.n, l))]
    affine_bad = []
    for g in sample:
        for l in range(1, (g.n - 1) // 2):
            w = omega_cochain(g.n, l)
            if is_cocycle(g, w) and (is_affine_by_definition(g, w) or is_affine_by_slots(g, w)):
                affine_bad.append((g.label(), l))
    npsi = sum(len(index_set(n)) for n in range(3, 13))
    ok = not psi_bad and not omega_bad and not affine_bad
    return report(2, ok, f"psi in Z2(L,L): {npsi - len(psi_bad)}/{npsi}; w1,w2 cocycles on 50 witnesses: "
                         f"{'yes' if not omega_bad else omega_bad}; low w_l never affine: {not affine_bad}")


# -- 3 ------------------------------------------------------------------------------

def criterion_3():
    failures = []
    count = 0
    for n in range(3, 11):
        for _, g in random_witnesses(n):
            count += 1
            for module in (TRIVIAL, ADJOINT):
                for p in range(n):
                    if not (coboundary_matrix(g, p + 1, module) @ coboundary_matrix(g, p, module)).is_zero():
                        failures.append((g.label(), module, p))
            bs = betti_numbers(g)
            if bs != bs[::-1]:
                failures.append((g.label(), "duality"))
            if sum((-1) ** p * b for p, b in enumerate(bs)) != 0:
                failures.append((g.label(), "euler"))
    return report(3, not failures, f"d o d = 0 (trivial, adjoint), duality, Euler on {count} witnesses"
                                   f"{': ' + str(failures[:3]) if failures else ''}")


# -- 4 ------------------------------------------------------------------------------

def criterion_4():
    forward, backward = [], []
    checked = 0
    for label, _, g in table_witnesses():
        verdict = find_affine_class(g)
        if not verdict.exists:
            continue
        checked += 1
        ext = central_extension(g, verdict.witness)
        h = ext.total
        if not (h.n == g.n + 1 and is_filiform(h) and len(center_sparse(h)) == 1):
            forward.append(str(label))
            continue
        q, _ = quotient_by_center(h)
        if not find_affine_class(q).exists:
            backward.append(str(label))
    ok = checked > 0 and not forward and not backward
    return report(4, ok, f"extension filiform with 1-dim center and quotient affine: {checked} affine witnesses"
                         f"{'; failed ' + str(forward + backward) if not ok else ''}")


# -- 5 ------------------------------------------------------------------------------

def criterion_5():
    bad = []
    checked = 0
    for label, _, g in table_witnesses():
        verdict = find_affine_class(g)
        if not verdict.exists:
            continue
        checked += 1
        prod = lsa_on_quotient(central_extension(g, verdict.witness))
        if not (prod.verified and verify_lsa(g, prod)):
            bad.append(str(label))
    ok = checked >= 20 and not bad
    return report(5, ok, f"verified left-symmetric products on {checked} affine witnesses (3 <= n <= 11)"
                         f"{'; failed ' + ', '.join(bad) if bad else ''}")


# -- 6 ------------------------------------------------------------------------------

def criterion_6():
    hits, bad = [], []
    for g in all_generated():
        if g.n >= 6 and cohomology(g, 2).betti == 2:
            hits.append(g.label())
            if find_affine_class(g).exists:
                bad.append(g.label())
    ok = bool(hits) and not bad
    return report(6, ok, f"b2 = 2 (n >= 6) implies no affine class: {len(hits)} algebras"
                         f"{'; counterexamples ' + str(bad) if bad else ''}")


# -- 7 ------------------------------------------------------------------------------

def _sample(label, samples, budget=300, stop=None):
    out = []
    for seed in range(samples):
        p = find_witness(label, budget=budget, seed=seed)
        if p is None:
            continue
        g = build_algebra(p)
        out.append((cohomology(g, 2).betti, find_affine_class(g).exists))
        if stop and stop(out):
            break
    return out


def criterion_7():
    a1 = _sample(ClassLabel(12, "A1"), 20)
    a2 = _sample(ClassLabel(12, "A2"), 20)
    both = lambda xs: len(xs) >= 50 and {b for b, _ in xs} >= {2, 3}
    a13 = _sample(ClassLabel(13, "A2"), 500, stop=both)
    ok1 = bool(a1) and all(b >= 3 and a for b, a in a1)
    ok2 = bool(a2) and all(b == 3 and a for b, a in a2)
    ok3 = bool(a13) and all(b in (2, 3) and a == (b == 3) for b, a in a13) and {b for b, _ in a13} == {2, 3}
    return report(7, ok1 and ok2 and ok3,
                  f"A1_12 {len(a1)} samples ok={ok1}; A2_12 {len(a2)} samples ok={ok2}; "
                  f"A2_13 {len(a13)} samples ok={ok3} "
                  f"(b2=2: {sum(b == 2 for b, _ in a13)}, b2=3: {sum(b == 3 for b, _ in a13)})")


# -- 8 ------------------------------------------------------------------------------

def criterion_8():
    bad = []
    gs = all_generated()
    for g in gs:
        chk = conjecture_checks(g)
        if not (chk.b2_conjecture and chk.toral_rank):
            bad.append(g.label())
    return report(8, not bad, f"b2 > b1^2/4 and sum b_p >= 2^dim z on {len(gs)} witnesses"
                              f"{'; failed ' + str(bad) if bad else ''}")


# -- 9 ------------------------------------------------------------------------------

def criterion_9():
    b2_bad = []
    pool = [(p.n, p.alpha, g) for _, p, g in table_witnesses() if p.n <= 8]
    pool += [(p.n, p.alpha, g) for n in range(3, 9) for p, g in random_witnesses(n)]
    count = len(pool)
    for n, alpha, g in pool:
        if cohomology(g, 2).betti != oracles.b2(n, alpha):
            b2_bad.append(g.label())
    rng = random.Random(9)
    jac_bad = []
    for _ in range(100):
        n = rng.randint(7, 10)
        alpha = {ks: rng.randint(-2, 2) for ks in index_set(n) if rng.random() < 0.3}
        g = build_algebra(FiliformParams(n, alpha))
        got = {(i, j, k) for i, j, k, _ in jacobi_defects(g)}
        if got != oracles.jacobi_violations(n, g.structure_constants()):
            jac_bad.append(alpha)
    ok = not b2_bad and not jac_bad
    return report(9, ok, f"b2 vs brute-force oracle on {count} witnesses (n <= 8); "
                         f"Jacobi defects vs enumeration on 100 draws: {100 - len(jac_bad)}/100")


# -- 10 -----------------------------------------------------------------------------

def _table_once():
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(["table", "--seed", "0"])
    return code, buf.getvalue()


def criterion_10():
    c1, a = _table_once()
    c2, b = _table_once()
    ok = c1 == c2 == 0 and a == b and len(a.splitlines()) == 37
    return report(10, ok, f"two table runs byte-identical ({len(a)} bytes, exit {c1})")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
