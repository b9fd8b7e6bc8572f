import random

import pytest

from skeinlab.classical import (
    MU,
    TooManyCrossings,
    homflypt,
    jones,
    kauffman_bracket,
    kauffman_bracket_naive,
)
from skeinlab.diagram import BraidWord, braid_closure, disjoint_union, parse_braid, parse_pd, resolve
from skeinlab.poly import LaurentFraction, OddExponent, parse, render_t, substitute, var

q, s = var("q"), var("s")
HOPF = parse_pd("X(1,3,2,4) X(3,1,4,2)")
TREFOIL = braid_closure(parse_braid("s1 s1 s1"))


def test_bracket_examples():
    assert kauffman_bracket(parse_pd("O(1)")) == parse("1").as_poly()
    assert kauffman_bracket(parse_pd("X(1,1,2,2)")) == parse("-A^3").as_poly()
    assert kauffman_bracket(parse_pd("X(1,2,2,1)")) == parse("-A^-3").as_poly()
    assert kauffman_bracket(HOPF) == parse("-A^4 - A^-4").as_poly()


def test_bracket_parity():
    for D in (HOPF, TREFOIL, parse_pd("X(1,2,2,1)")):
        assert all((m[4] - D.n_crossings) % 2 == 0 for m, _ in kauffman_bracket(D).terms())


def test_bracket_matches_naive_state_sum(corpus):
    for name, D in corpus.items():
        if D.n_crossings <= 11:
            assert kauffman_bracket(D) == kauffman_bracket_naive(D, cap=None), name


def test_jones_examples(corpus):
    assert jones(parse_pd("O(1)")) == parse("1")
    assert jones(HOPF) == parse("-q^5 - q")
    assert jones(TREFOIL) == parse("-q^8 + q^6 + q^2")
    assert jones(corpus["thistlethwaite"]) == parse("-q^-1 - q")
    assert render_t(jones(corpus["thistlethwaite"])) == "-t^(1/2) - t^(-1/2)"


def test_jones_t_convention():
    assert jones(TREFOIL, "t") == parse("-t^4 + t^3 + t")
    with pytest.raises(OddExponent):
        jones(HOPF, "t")


def test_cap():
    with pytest.raises(TooManyCrossings):
        jones(TREFOIL, cap=2)
    with pytest.raises(TooManyCrossings):
        homflypt(TREFOIL, cap=2)


def test_homflypt_examples():
    assert homflypt(parse_pd("O(1)")) == parse("1")
    assert homflypt(parse_pd("O(1) O(2)")) == LaurentFraction(s**-1 - s) / (q - q**-1)
    assert homflypt(HOPF) == s * (q - q**-1) + LaurentFraction(s - s**3) / (q - q**-1)


def _random_diagrams(corpus, n, seed):
    rng = random.Random(seed)
    small = [D for D in corpus.values() if 0 < D.n_crossings <= 11]
    out = []
    while len(out) < n:
        if rng.random() < 0.5:
            out.append(rng.choice(small))
        else:
            k = rng.randint(2, 4)
            letters = [(rng.randint(1, k - 1), rng.choice((-1, 1))) for _ in range(rng.randint(1, 8))]
            out.append(braid_closure(BraidWord(k, letters)))
    return out, rng


def test_skein_relations_random(corpus):
    diagrams, rng = _random_diagrams(corpus, 100, 11)
    for D in diagrams:
        i = rng.randrange(D.n_crossings)
        plus = D if D.crossings[i].sign > 0 else resolve(D, i, "switch")
        minus = resolve(plus, i, "switch")
        zero = resolve(plus, i, "smooth")
        P = s**-1 * homflypt(plus) - s * homflypt(minus) - (q - q**-1) * homflypt(zero)
        assert P.is_zero()
        V = q**-2 * jones(plus) - q**2 * jones(minus) - (q - q**-1) * jones(zero)
        assert V.is_zero()


def test_distant_union_multiplicative(corpus):
    pairs = [("3_1", "4_1"), ("L2a1{0}", "3_1"), ("L4a1{0}", "L2a1{1}")]
    for a, b in pairs:
        A, B = corpus[a], corpus[b]
        U = disjoint_union(A, B)
        assert jones(U) == -(q + q**-1) * jones(A) * jones(B)
        assert homflypt(U) == MU * homflypt(A) * homflypt(B)


def test_homflypt_specialises_to_jones(corpus):
    for name, D in corpus.items():
        assert substitute(homflypt(D, cap=None), "s", q**2) == jones(D, cap=None), name
