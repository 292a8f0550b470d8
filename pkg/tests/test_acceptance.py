"""The ten acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are echoed as they happen and
repeated in the terminal summary.  Run directly with ``pytest tests/test_acceptance.py -s``.
"""
import time
from itertools import product

import pytest

from dblcat import io
from dblcat.bicat import decorated_horizontalization, horizontalization, trivial_double, validate_2category
from dblcat.core import composite, is_globular, is_horizontal_endomorphism, validate_double_category
from dblcat.findim import (
    algebra_morphisms,
    algebras_up_to_dim2,
    check_tensor_closure,
    field2,
    hid_morphism,
    identity,
    identity_morphism,
    is_2_subcyclic,
    F2Bimodule,
)
from dblcat.functors import (
    ImageEscape,
    check_epsilon_naturality,
    check_filtration_preservation,
    compose,
    epsilon,
    universal_lift,
    validate_double_functor,
)
from dblcat.gen import (
    all_posets,
    corpus_thin_2categories,
    corpus_two_categories,
    gen_commuting_squares,
    gen_poset_category,
    gen_sq_functor,
    monotone_maps,
)
from dblcat.gg import (
    check_cor_4_5,
    check_prop_4_4,
    gamma,
    length_one_decomposition,
    nonglobular_members,
    vertical_filtration,
)

import mutants
import oracles
from acceptance_log import record

MUTANTS_PER_CONSTRUCTION = 60


def _construction(name):
    return name.split("/")[0]


def test_criterion_01_validator(full_corpus):
    spent = 0.0
    start = time.perf_counter()
    bad = [name for name, C in full_corpus if not validate_double_category(C).ok]
    spent += time.perf_counter() - start
    counts, undetected = {}, []
    per_instance = {}
    for name, C in full_corpus:
        per_instance.setdefault(_construction(name), []).append(C)
    for kind, instances in per_instance.items():
        k = -(-MUTANTS_PER_CONSTRUCTION // len(instances))
        for i, C in enumerate(instances):
            for site in mutants.sample_mutations(C, k, seed=i):
                T = mutants.apply_mutation(C, *site)
                start = time.perf_counter()
                rep = validate_double_category(T)
                spent += time.perf_counter() - start
                counts[kind] = counts.get(kind, 0) + 1
                if rep.ok or not all(v.axiom for v in rep.violations):
                    undetected.append((kind, site))
    elapsed = spent
    ok = not bad and not undetected and min(counts.values()) >= 50 and elapsed < 10
    record(1, ok, f"{len(full_corpus)} instances valid, mutants {counts} all named, validator time {elapsed:.2f}s (< 10s)")
    assert not bad and not undetected
    assert min(counts.values()) >= 50
    assert elapsed < 10


def test_criterion_02_horizontalization_of_trivial():
    cats = corpus_two_categories() + corpus_thin_2categories()
    wrong = [name for name, B in cats
             if not validate_2category(B).ok or horizontalization(trivial_double(B)) != B]
    record(2, not wrong, f"H(trivial B) = B token-exactly for {len(cats)} 2-categories")
    assert not wrong


def test_criterion_03_hstar_and_idempotence(full_corpus):
    wrong = []
    for name, C in full_corpus:
        G = gamma(C)
        if io.dump(decorated_horizontalization(G)) != io.dump(decorated_horizontalization(C)):
            wrong.append(("hstar", name))
        if gamma(G) != G:
            wrong.append(("idempotent", name))
    record(3, not wrong, f"hstar(gamma C) byte-identical and gamma idempotent on {len(full_corpus)} instances")
    assert not wrong


def test_criterion_04_oracle_equivalence(full_corpus):
    wrong = []
    for name, C in full_corpus:
        a = vertical_filtration(C)
        if set().union(*(V for _, V in a.levels)) != oracles.naive_gamma_members(C):
            wrong.append(name)
        if [(H, V) for H, V in a.levels] != oracles.naive_levels(C):
            wrong.append(name)
        if a.stable_at > len(C.squares):
            wrong.append(name)
    record(4, not wrong, f"filtration = naive closure and stable_at <= |squares| on {len(full_corpus)} instances")
    assert not wrong


def test_criterion_05_prop44_cor45(full_corpus, sq2):
    wrong = [name for name, C in full_corpus if not (check_prop_4_4(C).ok and check_cor_4_5(C).ok)]
    ng = nonglobular_members(sq2)
    special = ng == [sq2.hid_vmor["0<1"]] and is_horizontal_endomorphism(sq2, ng[0])
    record(5, not wrong and special,
           f"both suites pass on {len(full_corpus)} instances; gamma(Sq(2)) non-globular = {ng}")
    assert not wrong and special


def test_criterion_06_counting():
    wrong, n = [], 0
    for size in (1, 2, 3, 4):
        for p in all_posets(size):
            C = gen_commuting_squares(gen_poset_category(p))
            n_ob, n_mor = oracles.poset_counts(p)
            want = 2 * n_mor - n_ob
            n += 1
            if len(gamma(C).squares) != want or len(oracles.naive_gamma_members(C)) != want:
                wrong.append(p)
    record(6, not wrong, f"|gamma Sq(K)| = 2|Mor K| - |Ob K| for all {n} posets of size <= 4")
    assert not wrong


def test_criterion_07_length_one_decompositions(full_corpus):
    wrong, n = [], 0
    for name, C in full_corpus:
        a = vertical_filtration(C)
        for q in a.V(1):
            n += 1
            seq = length_one_decomposition(C, q, a)
            shape = all(is_globular(C, t) if i % 2 == 0 else C.hid_vmor.get(C.vsrc[t]) == t
                        for i, t in enumerate(seq))
            if composite(C.vcomp, seq) != q or not shape or len(seq) % 2 != 1:
                wrong.append((name, q))
    record(7, not wrong, f"{n} V_1 squares decompose and replay exactly")
    assert not wrong


def test_criterion_08_functors():
    posets = [p for size in (1, 2, 3) for p in all_posets(size)]
    cache = {id(p): gen_commuting_squares(gen_poset_category(p)) for p in posets}
    wrong, n = [], 0
    for p, q in product(posets, repeat=2):
        for u in monotone_maps(p, q):
            F = gen_sq_functor(p, q, u, cache[id(p)], cache[id(q)])
            n += 1
            if not (validate_double_functor(F).ok and check_filtration_preservation(F).ok
                    and check_epsilon_naturality(F).ok):
                wrong.append((p, q, u))
    record(8, not wrong, f"containment, epsilon-naturality and triangles hold for {n} functors Sq(u)")
    assert not wrong


def test_criterion_09_universal_lift(full_corpus):
    wrong, n = [], 0
    posets = [p for size in (1, 2, 3) for p in all_posets(size)]
    cases = [(gamma(C), epsilon(C)) for _, C in full_corpus]
    for p, q in product(posets[:4], repeat=2):
        for u in monotone_maps(p, q):
            F = gen_sq_functor(p, q, u)
            G = gamma(F.source)
            cases.append((G, compose(F, epsilon(F.source))))
    for D, F in cases:
        n += 1
        try:
            lift = universal_lift(D, F)
        except ImageEscape:
            wrong.append(D)
            continue
        if not compose(epsilon(F.target), lift).same_maps(F):
            wrong.append(D)
    record(9, not wrong, f"{n} lifts exist and satisfy epsilon . lift = F")
    assert not wrong


def test_criterion_10a_subcyclic_examples():
    hids = [hid_morphism(A, C, f) for A in algebras_up_to_dim2() for C in algebras_up_to_dim2()
            for f in algebra_morphisms(A, C)]
    k = field2()
    plane = F2Bimodule(k, k, 2, (identity(2),), (identity(2),))
    ok = all(is_2_subcyclic(t) for t in hids) and not is_2_subcyclic(identity_morphism(plane))
    record("10a", ok, f"all {len(hids)} hid triples 2-subcyclic; identity on F2^2 is not")
    assert ok


@pytest.mark.xfail(strict=True, reason="nine two-sided counterexamples; see README, tensor closure")
def test_criterion_10b_tensor_closure():
    start = time.perf_counter()
    rep, stats = check_tensor_closure()
    elapsed = time.perf_counter() - start
    record("10b", rep.ok and elapsed < 30,
           f"{stats.pairs} pairs ({stats.representative_pairs} checked), "
           f"{len(rep.violations)} not closed, {elapsed:.1f}s (< 30s)")
    assert elapsed < 30
    assert rep.ok
