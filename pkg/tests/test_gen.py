from dblcat.core import FinCategory, validate_category, validate_double_category
from dblcat.gen import (
    all_posets,
    antichain,
    chain,
    corpus,
    diamond,
    gen_commuting_squares,
    gen_poset_category,
    gen_product,
    gen_quintet,
    gen_trivial,
    idempotent_2category,
    locally_discrete,
    point_2category,
    walking_arrow,
)
from dblcat.gg import check_cor_4_5, check_prop_4_4, gamma, is_globularily_generated

import oracles


def test_poset_counts():
    assert [len(all_posets(n)) for n in (1, 2, 3, 4)] == [1, 2, 5, 16]
    for n in (1, 2, 3, 4):
        for p in all_posets(n):
            assert validate_category(gen_poset_category(p)).ok


def _rename_category(K, names):
    r = lambda t: names.get(t, t)
    return FinCategory(tuple(sorted(map(r, K.objects))), tuple(sorted(map(r, K.morphisms))),
                       {r(k): r(v) for k, v in K.src.items()}, {r(k): r(v) for k, v in K.tgt.items()},
                       {r(k): r(v) for k, v in K.id.items()},
                       {(r(a), r(b)): r(c) for (a, b), c in K.comp.items()})


def test_poset_categories():
    names = {"0": "x", "1": "y", "id_0": "id_x", "id_1": "id_y", "0<1": "a"}
    assert _rename_category(gen_poset_category(chain(2)), names) == \
        _rename_category(walking_arrow(), {})
    D = gen_poset_category(antichain(3))
    assert len(D.morphisms) == 3
    K = gen_poset_category(diamond())
    assert (len(K.objects), len(K.morphisms)) == (4, 9)


def test_trivial_examples():
    assert len(gen_trivial(idempotent_2category()).squares) == 2
    T = gen_trivial(locally_discrete(walking_arrow()))
    assert sorted(T.squares) == sorted(T.vid.values()) and len(T.squares) == 3


def test_sq_examples():
    assert len(gen_commuting_squares(walking_arrow()).squares) == 6
    D = gen_commuting_squares(gen_poset_category(antichain(3)))
    assert is_globularily_generated(D)


def test_quintet_examples():
    for n in (1, 2, 3):
        for p in all_posets(n):
            K = gen_poset_category(p)
            Q, S = gen_quintet(locally_discrete(K)), gen_commuting_squares(K)
            # quintet tokens append the (unique) 2-cell to the boundary
            strip = {q: q.rsplit("|", 1)[0] for q in Q.squares}
            assert sorted(strip.values()) == sorted(S.squares)
            assert {(strip[a], strip[b]): strip[c] for (a, b), c in Q.vcomp.items()} == dict(S.vcomp)
            assert {(strip[a], strip[b]): strip[c] for (a, b), c in Q.hcomp_sq.items()} == dict(S.hcomp_sq)
            assert {k: strip[v] for k, v in Q.hid_vmor.items()} == dict(S.hid_vmor)
    Q = gen_quintet(idempotent_2category())
    assert len(Q.squares) == 2 and all(Q.is_globular(q) for q in Q.squares)


def test_products(sq2):
    P = gen_product(sq2, sq2)
    assert len(P.squares) == 36
    assert validate_double_category(P).ok
    unit = gen_product(sq2, gen_trivial(point_2category()))
    assert len(unit.squares) == len(sq2.squares)
    assert len(unit.objects) == len(sq2.objects)
    Q = gen_quintet(idempotent_2category())
    assert len(gamma(gen_product(sq2, Q)).squares) == len(gamma(sq2).squares) * len(Q.squares)


def test_gamma_of_product_is_smaller_than_product_of_gammas(sq2):
    # Every generator of the product pairs two globular squares or two horizontal
    # identities, and both kinds keep "globular or vsrc = vtgt"; the pairs of the
    # arrow's horizontal identity with the arrow's vertical identity break it.
    P = gen_product(sq2, sq2)
    members = oracles.naive_gamma_members(P)
    assert set(gamma(P).squares) == members
    pairs = {f"[{p};{q}]" for p in gamma(sq2).squares for q in gamma(sq2).squares}
    assert members < pairs
    assert sorted(pairs - members) == [
        "[0<1|id_0|id_1|0<1;id_0|0<1|0<1|id_1]",
        "[id_0|0<1|0<1|id_1;0<1|id_0|id_1|0<1]",
    ]


def test_corpus_valid_and_deterministic(full_corpus):
    again = corpus()
    assert [n for n, _ in again] == [n for n, _ in full_corpus]
    assert all(a == b for (_, a), (_, b) in zip(again, full_corpus))
    for name, C in full_corpus:
        assert validate_double_category(C).ok, name


def test_corpus_prop44_cor45(full_corpus):
    for name, C in full_corpus:
        if name.startswith("quintet/"):
            assert check_prop_4_4(C).ok and check_cor_4_5(C).ok, name


def test_corpus_bounds(full_corpus):
    assert len(full_corpus) == 130
    assert max(len(C.squares) for _, C in full_corpus) == 169
