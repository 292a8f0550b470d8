from dataclasses import replace
from itertools import product

import pytest

from dblcat.bicat import decorated_horizontalization
from dblcat.core import InvalidInput
from dblcat.functors import (
    DoubleNaturalTransformation,
    LevelOutOfRange,
    check_epsilon_naturality,
    check_filtration_preservation,
    compose,
    compose_functors,
    epsilon,
    gamma_functor,
    identity_functor,
    identity_transformation,
    inclusion,
    is_gg_transformation,
    level_inclusion,
    restrict_horizontal_functor,
    restrict_vertical_functor,
    transversal_functor,
    universal_lift,
    validate_double_functor,
    validate_functor,
    validate_transformation,
    vertical_compose_transformations,
    horizontal_compose_transformations,
)
from dblcat.gen import (
    all_posets,
    chain,
    gen_commuting_squares,
    gen_poset_category,
    gen_sq_functor,
    gen_trivial,
    idempotent_2category,
    monotone_maps,
)
from dblcat.gg import gamma, vertical_filtration

POSETS3 = [p for n in (1, 2, 3) for p in all_posets(n)]


def _sq(p):
    return gen_commuting_squares(gen_poset_category(p))


def _functors(posets=POSETS3, limit=None):
    cache = {id(p): _sq(p) for p in posets}
    out = []
    for p, q in product(posets, repeat=2):
        for u in monotone_maps(p, q):
            out.append(gen_sq_functor(p, q, u, cache[id(p)], cache[id(q)]))
    return out[:limit] if limit else out


@pytest.fixture(scope="module")
def functors():
    return _functors()


def test_identity_valid(sq2):
    assert validate_double_functor(identity_functor(sq2)).ok


def test_sq_functors_valid(functors):
    assert len(functors) == 476
    for F in functors:
        assert validate_double_functor(F).ok


def test_s_commutation_mutant(sq2):
    F = identity_functor(sq2)
    q = "id_0|0<1|0<1|id_1"
    bad = replace(F, f_sq={**F.f_sq, q: sq2.vid["0<1"]})
    assert "s-commutation" in validate_double_functor(bad).axioms()


def test_gamma_of_identity(sq2):
    g = gamma_functor(identity_functor(sq2))
    assert g.source == gamma(sq2) and g.same_maps(identity_functor(gamma(sq2)))


def test_gamma_sends_hid_to_hid():
    p, q = chain(2), chain(3)
    for u in monotone_maps(p, q):
        F = gen_sq_functor(p, q, u)
        g = gamma_functor(F)
        for f, sq in F.source.hid_vmor.items():
            assert g.f_sq[sq] == F.target.hid_vmor[F.f_vmor[f]]


def test_gamma_preserves_composition(functors):
    count = 0
    for F in functors[::7]:
        for G in functors[::5]:
            if G.source is not F.target:
                continue
            lhs = gamma_functor(compose(G, F))
            rhs = compose(gamma_functor(G), gamma_functor(F))
            assert lhs.same_maps(rhs)
            count += 1
    assert count > 0


def test_hstar_of_gamma_functor(functors):
    for F in functors[::11]:
        g = gamma_functor(F)
        assert g.f_hmor == F.f_hmor
        assert all(g.f_sq[q] == F.f_sq[q] for q in g.source.squares)
        assert decorated_horizontalization(g.source) == decorated_horizontalization(F.source)


def test_filtration_and_epsilon_all(functors):
    for F in functors:
        assert check_filtration_preservation(F).ok
        assert check_epsilon_naturality(F).ok


def test_trivial_functor_level_one():
    T = gen_trivial(idempotent_2category())
    rep = check_filtration_preservation(identity_functor(T))
    assert rep.ok


def test_corrupted_gamma_functor_named(sq2):
    F = identity_functor(sq2)
    g = gamma_functor(F)
    q = "id_0|0<1|0<1|id_1"
    bad = replace(g, f_sq={**g.f_sq, q: sq2.vid["0<1"]})
    assert "epsilon-naturality" in check_epsilon_naturality(F, bad).axioms()


def test_restrictions(sq2):
    p = chain(2)
    F = gen_sq_functor(p, chain(3), (0, 2))
    V1 = restrict_vertical_functor(gamma_functor(F), 1)
    assert len(V1.source.morphisms) == 4
    assert validate_functor(V1).ok
    I1 = restrict_vertical_functor(identity_functor(sq2), 1)
    assert I1.mor == {q: q for q in I1.source.morphisms}
    with pytest.raises(LevelOutOfRange):
        restrict_vertical_functor(identity_functor(sq2), 5)


def test_level_inclusions_commute(functors):
    for F in functors[::9]:
        G = gamma_functor(F)
        a = vertical_filtration(G.source)
        b = vertical_filtration(G.target)
        top = a.stable_at
        for kind, restrict in (("V", restrict_vertical_functor), ("H", restrict_horizontal_functor)):
            for n in range(1, top + 1):
                for m in range(1, n + 1):
                    lhs = compose_functors(restrict(G, n), level_inclusion(a, kind, m, n))
                    rhs = compose_functors(level_inclusion(b, kind, m, n), restrict(G, m))
                    assert lhs.mor == rhs.mor and lhs.obj == rhs.obj


def test_transversal_functor(sq2, functors):
    t = transversal_functor(identity_functor(sq2))
    assert t.mor == {q: q for q in sq2.squares}
    for F in functors[::13]:
        G = gamma_functor(F)
        T = transversal_functor(G)
        assert validate_functor(T).ok
        a, b = vertical_filtration(G.source), vertical_filtration(G.target)
        for n in range(1, a.stable_at + 1):
            assert {T.mor[q] for q in a.H(n)} <= b.H(n)


def test_universal_lift(sq2):
    G = gamma(sq2)
    lift = universal_lift(G, inclusion(G, sq2))
    assert lift.same_maps(identity_functor(G))
    assert universal_lift(G, epsilon(sq2)).same_maps(identity_functor(G))
    with pytest.raises(InvalidInput):
        universal_lift(sq2, identity_functor(sq2))


def test_universal_lift_from_trivial():
    T = gen_trivial(idempotent_2category())
    F = identity_functor(T)
    assert universal_lift(T, F).same_maps(F)


# --- transformations ----------------------------------------------------------


def _transformation(p, q, u, v, C, D):
    """The transformation Sq(u) => Sq(v) for pointwise u <= v."""
    F, G = gen_sq_functor(p, q, u, C, D), gen_sq_functor(p, q, v, C, D)
    arr = lambda i, j: f"{i}<{j}" if i != j else f"id_{i}"
    eta0 = {str(i): arr(u[i], v[i]) for i in range(p.size)}
    eta1 = {}
    for a in C.hmors:
        i, j = C.hsrc[a], C.htgt[a]
        eta1[a] = "|".join((F.f_hmor[a], eta0[i], eta0[j], G.f_hmor[a]))
    return DoubleNaturalTransformation(F, G, eta0, eta1)


def _transformations(p, q):
    C, D = _sq(p), _sq(q)
    maps = list(monotone_maps(p, q))
    return [_transformation(p, q, u, v, C, D) for u in maps for v in maps
            if all(q.leq(x, y) for x, y in zip(u, v))]


def test_transformations_valid_and_gg_closed():
    p, q = chain(2), chain(3)
    etas = _transformations(p, q)
    assert etas
    for eta in etas:
        assert validate_transformation(eta).ok
    for a in etas:
        for b in etas:
            if b.src_f.same_maps(a.tgt_f):
                c = vertical_compose_transformations(b, a)
                assert validate_transformation(c).ok
                if is_gg_transformation(a) and is_gg_transformation(b):
                    assert is_gg_transformation(c)


def test_horizontal_composition_gg_closed():
    a_s = _transformations(chain(2), chain(2))
    for a in a_s:
        for b in a_s:
            c = horizontal_compose_transformations(b, a)
            assert validate_transformation(c).ok
            if is_gg_transformation(a) and is_gg_transformation(b):
                assert is_gg_transformation(c)


def test_identity_transformation_is_gg(functors):
    for F in functors[::17]:
        assert is_gg_transformation(identity_transformation(F))


def test_non_gamma_component_not_gg():
    p = chain(2)
    eta = _transformation(p, p, (0, 0), (0, 1), _sq(p), _sq(p))
    assert validate_transformation(eta).ok
    # the component on 0<1 is the corner square id_0|id_0|0<1|0<1, which is outside gamma
    members = vertical_filtration(eta.tgt_f.target).members
    assert is_gg_transformation(eta) == all(q in members for q in eta.eta1.values())
    assert not all(q in members for q in eta.eta1.values())


def test_transformations_into_trivial_are_gg():
    T = gen_trivial(idempotent_2category())
    assert is_gg_transformation(identity_transformation(identity_functor(T)))
