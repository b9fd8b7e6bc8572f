"""Acceptance criteria AC1..AC10.

Each test prints one line ``ACn PASS|FAIL: ...``; the lines are repeated in
the terminal summary.  Every polynomial comparison is exact.
"""

import itertools
import random
import time

import pytest

import conftest
from reidemeister import euler_ok, random_move
from skeinlab.bt_algebra import (
    BTElement,
    enumerate_basis,
    from_tied_braid,
    generator_b,
    generator_eps,
    multiply,
    ptl_element,
    ptl_ideal_check,
    theta_trace,
    tie,
    trace_rho,
)
from skeinlab.classical import homflypt, jones
from skeinlab.data import load_pairs
from skeinlab.diagram import BraidWord, braid_closure, parse_braid, parse_pd, resolve
from skeinlab.poly import LaurentFraction, parse, substitute, var
from skeinlab.theta import Theta_partition, theta_partition, theta_skein

q, z, E = var("q"), var("z"), var("E")


def report(ac, ok, detail):
    line = "%s %s: %s" % (ac, "PASS" if ok else "FAIL", detail)
    conftest.ACCEPTANCE_LINES[ac] = line
    print(line)
    assert ok, line


def test_AC1_thistlethwaite_jones(corpus):
    t0 = time.perf_counter()
    v = jones(corpus["thistlethwaite"])
    dt = time.perf_counter() - t0
    ok = v == parse("-q^-1 - q") and v == jones(corpus["unlink2"]) and dt < 1
    report("AC1", ok, "V(TLink) = %s, equals V(unlink2): %s, %.2fs" % (v, v == jones(corpus["unlink2"]), dt))


def test_AC2_thistlethwaite_theta(corpus):
    t0 = time.perf_counter()
    T = corpus["thistlethwaite"]
    th = theta_partition(T)
    dt = time.perf_counter() - t0
    v = jones(T)
    closed = (1 - E**-1) * (q + q**-1) * jones(corpus["3_1"]) * jones(corpus["4_1"]) + v
    unlink = LaurentFraction(-(q + q**-1) * E**-1)
    checks = {
        "closed expression": th == closed,
        "differs from unlink2": th != unlink and theta_partition(corpus["unlink2"]) == unlink,
        "E=1 collapse": substitute(th, "E", 1) == v,
        "under 5s": dt < 5,
    }
    report("AC2", all(checks.values()), ", ".join("%s: %s" % kv for kv in checks.items()) + " (%.2fs)" % dt)


def test_AC3_six_differences(corpus):
    lines, all_ok = [], True
    for pair in load_pairs():
        t0 = time.perf_counter()
        A, B = corpus[pair.first], corpus[pair.second]
        diff = theta_partition(A) - theta_partition(B)
        ref = parse(pair.reference_difference)
        same_v = jones(A) == jones(B)
        same_p = homflypt(A) == homflypt(B)
        dt = time.perf_counter() - t0
        ok = same_v and same_p and not diff.is_zero() and diff == ref and dt < 30
        all_ok &= ok
        note = "exact" if diff == ref else ("computed = -printed" if diff == -ref else "computed/printed = %s" % (diff / ref))
        lines.append("%s vs %s: V=%s P=%s %s" % (pair.first, pair.second, same_v, same_p, note))
    report("AC3", all_ok, "; ".join(lines))


def _random_braid(rng, max_strands=4, max_letters=8):
    n = rng.randint(2, max_strands)
    return BraidWord(n, [(rng.randint(1, n - 1), rng.choice((-1, 1))) for _ in range(rng.randint(0, max_letters))])


def test_AC4_oracle_equivalence(corpus):
    t0 = time.perf_counter()
    bad = [name for name, D in corpus.items() if theta_skein(D, cap=None) != theta_partition(D, cap=None)]
    rng = random.Random(2024)
    for _ in range(200):
        w = _random_braid(rng)
        D = braid_closure(w)
        if theta_skein(D) != theta_partition(D):
            bad.append(str(w))
    dt = time.perf_counter() - t0
    report("AC4", not bad and dt < 120, "%d bundled + 200 braids, mismatches: %s (%.1fs)" % (len(corpus), bad or "none", dt))


def test_AC5_specialisation_ladder(corpus):
    bad = []
    for name, D in corpus.items():
        th, Th = theta_partition(D, cap=None), Theta_partition(D, cap=None)
        if substitute(th, "E", 1) != jones(D, cap=None):
            bad.append((name, "theta|E=1"))
        if substitute(Th, "s", q**2) != th:
            bad.append((name, "Theta|s=q^2"))
        if substitute(Th, "E", 1) != homflypt(D, cap=None):
            bad.append((name, "Theta|E=1"))
        for d in range(1, 6):
            if not substitute(th, "E", LaurentFraction(1) / d).is_laurent():
                bad.append((name, "E=1/%d" % d))
    report("AC5", not bad, "%d links, failures: %s" % (len(corpus), bad or "none"))


def test_AC6_algebra():
    t0 = time.perf_counter()
    basis = enumerate_basis(3)
    b12 = ptl_element(3)
    eigen = all(
        multiply(BTElement.basis_element(p, w), b12) == b12.scale(q**w.length)
        and multiply(b12, BTElement.basis_element(p, w)) == b12.scale(q**w.length)
        for p, w in basis
    )
    m = multiply(tie(1, 3, 3), from_tied_braid((3, [(1, 1), (2, 1), (1, 1)])))
    worked = multiply(m, b12) == b12.scale(q**3)
    rho = trace_rho(b12)
    fact = rho == ((q**2 + 1) * q * z + E) * (q * z + E)
    rep = ptl_ideal_check()
    dt = time.perf_counter() - t0
    ok = len(basis) == 30 and eigen and worked and fact and rep["flags"]["eigenline"] and dt < 30
    report(
        "AC6",
        ok,
        "basis %d, eigenline %s, worked case %s, rho(b12) = %s factorises: %s (%.2fs)"
        % (len(basis), eigen, worked, rho, fact, dt),
    )


def _random_element(n, rng):
    basis = enumerate_basis(n)
    x = BTElement(n)
    for _ in range(3):
        p, w = rng.choice(basis)
        x = x + BTElement.basis_element(p, w).scale(var("q", rng.randint(-2, 2)) * rng.choice((1, -1, 2)))
    return x


def test_AC7_trace_properties():
    t0 = time.perf_counter()
    rng = random.Random(77)
    trace_bad = 0
    for _ in range(500):
        n = rng.randint(1, 4)
        x, y = _random_element(n, rng), _random_element(n, rng)
        trace_bad += trace_rho(multiply(x, y)) != trace_rho(multiply(y, x))
    markov_bad = 0
    for _ in range(100):
        n = rng.randint(2, 4)
        a = _random_element(n - 1, rng)
        # embed E_{n-1} in E_n: same partition and permutation, strand n untouched
        emb = BTElement(n, {(k[0]._r + (n - 1,), k[1]._w + (n - 1,)): c for k, c in a.terms.items()})
        ra = trace_rho(a)
        b, e = generator_b(n - 1, n), generator_eps(n - 1, n)
        markov_bad += trace_rho(emb) != ra
        markov_bad += trace_rho(multiply(emb, b)) != z * ra
        markov_bad += trace_rho(multiply(emb, e)) != E * ra
        markov_bad += trace_rho(multiply(multiply(emb, e), b)) != z * ra
    dt = time.perf_counter() - t0
    ok = not trace_bad and not markov_bad and dt < 120
    report("AC7", ok, "500 trace pairs: %d failures, Markov rules on 100 elements: %d failures (%.1fs)" % (trace_bad, markov_bad, dt))


def test_AC8_trace_vs_topology():
    bad, count = [], 0
    for n in (1, 2, 3):
        letters = [(i, s) for i in range(1, n) for s in (1, -1)]
        for length in range(7):
            if n == 1 and length:
                break
            for word in itertools.product(letters, repeat=length):
                w = BraidWord(n, word)
                count += 1
                if theta_trace(w) != theta_partition(braid_closure(w)):
                    bad.append(str(w))
    rng = random.Random(88)
    for _ in range(50):
        w = BraidWord(4, [(rng.randint(1, 3), rng.choice((1, -1))) for _ in range(rng.randint(1, 8))])
        count += 1
        if theta_trace(w) != theta_partition(braid_closure(w)):
            bad.append(str(w))
    report("AC8", not bad, "%d words, mismatches: %s" % (count, bad[:5] or "none"))


def test_AC9_hand_values():
    hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)")
    checks = {
        "theta(Hopf+)": theta_skein(hopf) == parse("-(q^5 + q^3)*E^-1 + q^3 - q")
        and theta_partition(hopf) == parse("-(q^5 + q^3)*E^-1 + q^3 - q"),
        "V(Hopf+)": jones(hopf) == parse("-q^5 - q"),
        "V(s1^3)": jones(braid_closure(parse_braid("s1 s1 s1"))) == parse("-q^8 + q^6 + q^2"),
    }
    report("AC9", all(checks.values()), ", ".join("%s: %s" % kv for kv in checks.items()))


def test_AC10_invariance(corpus):
    rng = random.Random(1010)
    starts = [n for n, D in corpus.items() if 0 < D.n_crossings <= 11]
    moves, move_bad = 0, []
    while moves < 100:
        name = rng.choice(starts)
        D = corpus[name]
        th = theta_partition(D, cap=None)
        for _ in range(5):
            kind, D = random_move(D, rng)
            moves += 1
            if not euler_ok(D) or theta_partition(D, cap=None) != th:
                move_bad.append((name, kind))
                break
    relabel_bad = []
    for name, D in corpus.items():
        comps = D.components
        if len(comps) < 2:
            continue
        mapping, k = {}, 0
        for cyc in comps[::-1]:
            for lab in cyc:
                k += 1
                mapping[lab] = k
        if theta_partition(D.relabel(mapping)) != theta_partition(D):
            relabel_bad.append(name)
    skein_bad, mixed = [], 0
    for name, D in corpus.items():
        for i in range(D.n_crossings):
            if not D.is_mixed(i):
                continue
            mixed += 1
            plus = D if D.crossings[i].sign > 0 else resolve(D, i, "switch")
            minus = resolve(plus, i, "switch")
            zero = resolve(plus, i, "smooth")
            res = q**-2 * theta_partition(plus, cap=None) - q**2 * theta_partition(minus, cap=None)
            res = res - (q - q**-1) * theta_partition(zero, cap=None)
            if not res.is_zero():
                skein_bad.append((name, i))
    ok = not move_bad and not relabel_bad and not skein_bad
    report(
        "AC10",
        ok,
        "%d random moves: %s; component relabeling: %s; skein residual at %d mixed crossings: %s"
        % (moves, move_bad or "unchanged", relabel_bad or "unchanged", mixed, skein_bad or "all zero"),
    )
