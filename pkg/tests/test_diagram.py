import random

import pytest
from hypothesis import given, settings, strategies as st

from skeinlab.diagram import (
    BraidWord,
    Crossing,
    DiagramError,
    EmptySubset,
    InconsistentEdgeCount,
    LinkDiagram,
    MalformedRecord,
    TieLettersPresent,
    UnknownCrossing,
    analyze,
    braid_closure,
    canonical_key,
    disjoint_union,
    parse_braid,
    parse_pd,
    renumber,
    resolve,
    simplify,
    split,
    sublink,
)
from skeinlab.classical import jones
from reidemeister import r1_add

HOPF = "X(1,3,2,4) X(3,1,4,2)"


def test_hopf_parse():
    H = parse_pd(HOPF)
    comps, w, lk = analyze(H)
    assert len(comps) == 2
    assert w == 2
    assert lk[0][1] == lk[1][0] == 1


def test_parse_errors():
    with pytest.raises(MalformedRecord):
        parse_pd("")
    with pytest.raises(MalformedRecord):
        parse_pd("X(1,2,3)")
    with pytest.raises(InconsistentEdgeCount):
        parse_pd("X(7,7,7,1) X(1,2,3,2)")


def test_loops_parse():
    U = parse_pd("O(1) O(2)")
    assert U.n_components == 2 and U.n_crossings == 0


def test_braid_closures():
    H = braid_closure(parse_braid("s1 s1"))
    assert H.n_components == 2 and H.linking_number(0, 1) == 1
    T = braid_closure(parse_braid("s1 s1 s1"))
    assert T.n_components == 1 and T.writhe == 3
    assert analyze(T)[2] == ((0,),)
    U = braid_closure(BraidWord(2))
    assert U.n_components == 2 and len(split(U)) == 2


def test_braid_parse_forms():
    assert parse_braid("s1 s2^-1 S1 e2").letters == ((1, 1), (2, -1), (1, -1), (2, 0))
    assert parse_braid("1 -2") == parse_braid("s1 s2^-1")
    assert parse_braid("s1", 4).strands == 4
    with pytest.raises(MalformedRecord):
        parse_braid("x1")
    with pytest.raises(MalformedRecord):
        parse_braid("s3", 2)


def test_tied_closure_refused():
    with pytest.raises(TieLettersPresent):
        braid_closure(parse_braid("e1 s1"))


def test_braid_component_count_is_cycle_count():
    w = parse_braid("s1 s2 s3", 5)
    assert braid_closure(w).n_components == 2


def test_thistlethwaite_structure(corpus):
    T = corpus["thistlethwaite"]
    assert T.n_components == 2 and T.n_crossings == 15
    assert T.linking_number(0, 1) == 0
    assert jones(sublink(T, [0])) == jones(corpus["3_1"])
    assert jones(sublink(T, [1])) == jones(corpus["4_1"])


def test_sublink_examples():
    H = parse_pd(HOPF)
    assert sublink(H, [0]).n_crossings == 0
    assert sublink(H, [0, 1]) == H
    with pytest.raises(EmptySubset):
        sublink(H, [])


def test_resolve_examples():
    H = parse_pd(HOPF)
    sm = resolve(H, 0, "smooth")
    assert sm.n_components == 1
    sw = resolve(H, 0, "switch")
    assert sw.writhe == H.writhe - 2
    assert sw.linking_number(0, 1) == 0
    T = braid_closure(parse_braid("s1 s1 s1"))
    assert resolve(T, 0, "smooth").n_components == 2
    with pytest.raises(UnknownCrossing):
        resolve(H, 5, "switch")


def test_split_examples():
    H = parse_pd(HOPF)
    assert split(H) == [H]
    both = disjoint_union(H, parse_pd("O(1)"))
    assert len(split(both)) == 2
    assert len(split(braid_closure(BraidWord(3)))) == 3


def test_canonical_key_examples():
    H = parse_pd(HOPF)
    rot = H.relabel({1: 2, 2: 1, 3: 4, 4: 3})
    assert canonical_key(rot) == canonical_key(H)
    T = braid_closure(parse_braid("s1 s1 s1"))
    assert canonical_key(H) != canonical_key(T)
    assert canonical_key(H) != canonical_key(resolve(H, 0, "switch"))


def test_simplify_examples():
    kink = parse_pd("X(1,1,2,2)")
    assert simplify(kink).n_crossings == 0 and simplify(kink).n_components == 1
    T = braid_closure(parse_braid("s1 s1 s1"))
    assert simplify(T) == T
    # a positive and a negative kink on the same edge
    two = r1_add(r1_add(kink, 1, 0), 1, 1)
    assert sorted(x.sign for x in two.crossings) == [-1, 1, 1]
    assert simplify(two).n_crossings == 0


def test_corpus_round_trip(corpus):
    for name, D in corpus.items():
        again = parse_pd(D.to_pd())
        assert again == D, name
        assert analyze(again) == analyze(D)


def _random_relabel(D, rng):
    labs = D.edges()
    new = list(range(100, 100 + len(labs)))
    rng.shuffle(new)
    return D.relabel(dict(zip(labs, new)))


def test_relabel_invariance(corpus):
    rng = random.Random(3)
    for name, D in corpus.items():
        R = _random_relabel(D, rng)
        assert R.writhe == D.writhe
        assert sorted(map(sorted, R.linking_matrix)) == sorted(map(sorted, D.linking_matrix))
        assert canonical_key(R) == canonical_key(D), name


def test_switch_covariance(corpus):
    for name, D in corpus.items():
        for i in range(D.n_crossings):
            if not D.is_mixed(i):
                continue
            a, b = D.crossing_components(i)
            S = resolve(D, i, "switch")
            assert S.writhe == D.writhe - 2 * D.crossings[i].sign
            assert S.linking_number(a, b) == D.linking_number(a, b) - D.crossings[i].sign


def test_split_rejoin_same_jones(corpus):
    H, T = corpus["L2a1{1}"], corpus["3_1"]
    U = disjoint_union(H, T)
    parts = split(U)
    assert len(parts) == 2
    assert jones(disjoint_union(*parts)) == jones(U)


words = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from([-1, 1])), max_size=7).map(
        lambda ls: BraidWord(n, ls)
    )
)


@settings(max_examples=80, deadline=None)
@given(words)
def test_closure_writhe_is_exponent_sum(w):
    D = braid_closure(w)
    assert D.writhe == w.exponent_sum
    assert parse_pd(D.to_pd()) == D if D.crossings else True
    assert canonical_key(renumber(D)) == canonical_key(D)
