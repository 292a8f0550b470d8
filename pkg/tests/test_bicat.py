from dataclasses import replace

import pytest

from dblcat.bicat import (
    decorated_horizontalization,
    discretely_decorated,
    equal_decorated,
    horizontalization,
    is_internalization,
    trivial_double,
    validate_2category,
)
from dblcat.core import InvalidInput
from dblcat.gen import (
    corpus_thin_2categories,
    corpus_two_categories,
    gen_poset_category,
    idempotent_2category,
    locally_discrete,
    walking_arrow,
)
from dblcat.gg import gamma, is_globularily_generated


def _all_two_categories():
    return corpus_two_categories() + corpus_thin_2categories()


def test_corpus_two_categories_valid():
    for name, B in _all_two_categories():
        assert validate_2category(B).ok, name


def test_h_of_trivial_is_identity():
    for name, B in _all_two_categories():
        assert horizontalization(trivial_double(B)) == B, name


def test_h_of_sq2_is_locally_discrete(sq2):
    H = horizontalization(sq2)
    assert set(H.cells2) == {sq2.vid["id_0"], sq2.vid["id_1"], sq2.vid["0<1"]}
    assert all(H.src1[c] == H.tgt1[c] for c in H.cells2)


def test_decorated_horizontalization_of_sq2(sq2):
    b = decorated_horizontalization(sq2)
    assert b.decoration == gen_poset_category_chain2()
    assert b.underlying == horizontalization(sq2)
    assert not equal_decorated(b, discretely_decorated(b.underlying))


def gen_poset_category_chain2():
    from dblcat.gen import chain
    return gen_poset_category(chain(2))


def test_hstar_trivial_is_discretely_decorated():
    for name, B in _all_two_categories():
        T = trivial_double(B)
        assert decorated_horizontalization(T) == discretely_decorated(B), name
        assert is_internalization(T, discretely_decorated(B))


def test_internalization_examples(sq2):
    b = decorated_horizontalization(sq2)
    assert is_internalization(sq2, b)
    assert not is_internalization(trivial_double(horizontalization(sq2)), b)


def test_idempotent_trivial_double():
    T = trivial_double(idempotent_2category())
    assert len(T.squares) == 2
    assert all(T.is_globular(q) for q in T.squares)
    assert is_globularily_generated(T)


def test_trivial_is_globularily_generated():
    for name, B in _all_two_categories():
        T = trivial_double(B)
        assert is_globularily_generated(T), name
        assert gamma(T) == T


def test_trivial_double_rejects_invalid():
    B = idempotent_2category()
    v2 = dict(B.vcomp2)
    key = sorted(v2)[0]
    v2[key] = "e" if v2[key] != "e" else "1"
    bad = replace(B, vcomp2=v2)
    assert not validate_2category(bad).ok
    with pytest.raises(InvalidInput):
        trivial_double(bad)


def test_2cell_between_nonparallel_1cells_reported():
    K = walking_arrow()
    B = locally_discrete(K)
    # declare a 2-cell from id_x to a (different targets)
    bad = replace(B, cells2=B.cells2 + ("bogus",),
                  src1={**B.src1, "bogus": "id_x"}, tgt1={**B.tgt1, "bogus": "a"})
    assert "2cell-parallel" in validate_2category(bad).axioms()


def test_hstar_gamma_equals_hstar(full_corpus):
    for name, C in full_corpus:
        assert decorated_horizontalization(gamma(C, check=False), check=False) == \
            decorated_horizontalization(C, check=False), name
