import pytest
from hypothesis import given, settings, strategies as st

from dblcat.core import validate_double_category
from dblcat.gen import all_posets, gen_commuting_squares, gen_poset_category, gen_trivial, idempotent_2category
from dblcat.gg import (
    NotLengthOne,
    check_cor_4_5,
    check_prop_4_4,
    evaluate,
    gamma,
    is_globularily_generated,
    layer_depth,
    length_one_decomposition,
    to_prefix,
    transversal_category,
    vertical_filtration,
    vertical_length,
)
from dblcat.core import validate_category

import oracles

ARROW = "id_0|0<1|0<1|id_1"
CORNER = "0<1|0<1|id_1|id_1"
POSETS = [p for n in (1, 2, 3, 4) for p in all_posets(n)]


def test_sq2_filtration(sq2):
    a = vertical_filtration(sq2)
    assert a.V(1) == {sq2.vid["id_0"], sq2.vid["id_1"], sq2.vid["0<1"], sq2.hid_vmor["0<1"]}
    assert a.stable_at == 1
    assert len(gamma(sq2).squares) == 4
    assert not is_globularily_generated(sq2)
    assert is_globularily_generated(gamma(sq2))


def test_trivial_filtration():
    T = gen_trivial(idempotent_2category())
    a = vertical_filtration(T)
    assert a.V(1) == set(T.squares) and a.stable_at == 1


def test_vertical_lengths(sq2):
    assert vertical_length(sq2, ARROW) == 1
    assert vertical_length(sq2, sq2.vid["0<1"]) == 1
    assert vertical_length(sq2, CORNER) is None


def test_decomposition_examples(sq2):
    g = sq2.vid["0<1"]
    assert length_one_decomposition(sq2, g) == [g]
    assert length_one_decomposition(sq2, ARROW) == [sq2.vid["id_1"], ARROW, sq2.vid["id_0"]]
    with pytest.raises(NotLengthOne):
        length_one_decomposition(sq2, CORNER)


def test_transversal_sq2(sq2):
    T = transversal_category(sq2)
    assert set(T.objects) == {"id_0", "id_1", "0<1"}
    assert len(T.morphisms) == 6
    assert validate_category(T).ok


def test_prop44_cor45_sq2(sq2):
    assert check_prop_4_4(sq2).ok and check_cor_4_5(sq2).ok


def test_levels_match_naive_oracle(full_corpus):
    for name, C in full_corpus:
        a = vertical_filtration(C, check=False)
        naive = oracles.naive_levels(C)
        assert [(H, V) for H, V in a.levels] == naive, name
        assert a.members == oracles.naive_gamma_members(C), name


def test_witnesses_replay_with_layer_depth(full_corpus):
    for name, C in full_corpus[::3]:
        a = vertical_filtration(C, check=False)
        for q, t in a.witnesses().items():
            assert evaluate(C, t) == q, (name, q, to_prefix(t))
            assert layer_depth(t) == a.vlength[q], (name, q)


def test_witnesses_deterministic(sq2):
    a1, a2 = vertical_filtration(sq2), vertical_filtration(sq2)
    assert {q: to_prefix(t) for q, t in a1.witnesses().items()} == \
        {q: to_prefix(t) for q, t in a2.witnesses().items()}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(POSETS))
def test_gamma_count_formula(p):
    C = gen_commuting_squares(gen_poset_category(p))
    n_ob, n_mor = oracles.poset_counts(p)
    assert len(oracles.naive_gamma_members(C)) == 2 * n_mor - n_ob
    assert len(gamma(C).squares) == 2 * n_mor - n_ob


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(POSETS))
def test_gamma_idempotent_and_valid(p):
    C = gen_commuting_squares(gen_poset_category(p))
    G = gamma(C)
    assert validate_double_category(G).ok
    assert gamma(G) == G


def test_transversal_of_gamma_is_union_of_H(full_corpus):
    for name, C in full_corpus[::4]:
        a = vertical_filtration(C, check=False)
        union = set().union(*(H for H, _ in a.levels))
        # past stabilization H_{N+1} is the hcomp closure of V_N, which is again V_N
        assert set(transversal_category(a.gamma).morphisms) == set(a.members)
        assert union <= a.members
        assert a.H(a.stable_at + 1) == a.members


def test_stable_at_bounded(full_corpus):
    for name, C in full_corpus:
        assert vertical_filtration(C, check=False).stable_at <= len(C.squares)
