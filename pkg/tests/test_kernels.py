import pytest
from hypothesis import given, settings, strategies as st

from dblcat import _kernels
from dblcat._kernels import BACKENDS, build_csr, use_backend
from dblcat.core import validate_double_category
from dblcat.gg import vertical_filtration

import mutants

needs_native = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")


@pytest.fixture
def backend():
    prev = _kernels.BACKEND

    def switch(name):
        use_backend(name)

    yield switch
    use_backend(prev)


def test_python_backend_always_available():
    assert "python" in BACKENDS
    with pytest.raises(ValueError):
        use_backend("fortran")


def test_csr_lists_both_factors():
    indptr, partner, result = build_csr(3, [(0, 1, 2), (2, 2, 2)])
    assert indptr == [0, 1, 2, 3]
    assert partner == [1, 0, 2] and result == [2, 2, 2]


@needs_native
def test_backends_agree_on_corpus(backend, full_corpus):
    for name, C in full_corpus:
        out = {}
        for b in ("python", "cython"):
            backend(b)
            a = vertical_filtration(C, check=False)
            out[b] = (a.levels, dict(a.vlength), a.stable_at)
        assert out["python"] == out["cython"], name


@needs_native
def test_backends_agree_on_mutants(backend, full_corpus):
    for name, C in full_corpus[::6]:
        for site in mutants.sample_mutations(C, 5, seed=7):
            T = mutants.apply_mutation(C, *site)
            lines = {}
            for b in ("python", "cython"):
                backend(b)
                lines[b] = validate_double_category(T).lines()
            assert lines["python"] == lines["cython"], name
            assert lines["python"]


def _random_closure(draw):
    n = draw(st.integers(1, 12))
    triples = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, n - 1)),
                            max_size=40))
    seed = draw(st.lists(st.integers(-1, 0), min_size=n, max_size=n))
    return n, triples, seed


@needs_native
@settings(max_examples=200, deadline=None)
@given(st.data())
def test_close_rounds_agree(data):
    n, triples, seed = _random_closure(data.draw)
    csr = build_csr(n, triples)
    a = list(BACKENDS["python"].close_rounds(list(seed), *csr))
    b = list(BACKENDS["cython"].close_rounds(list(seed), *csr))
    assert a == b
    # members are closed under every listed product
    for x, y, z in triples:
        if a[x] >= 0 and a[y] >= 0:
            assert a[z] >= 0


@needs_native
@settings(max_examples=200, deadline=None)
@given(st.data())
def test_assoc_violations_agree(data):
    n = data.draw(st.integers(1, 6))
    k = data.draw(st.integers(1, 3))
    s = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    t = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    table = data.draw(st.lists(st.integers(-1, n - 1), min_size=n * n, max_size=n * n))
    a = BACKENDS["python"].assoc_violations(n, table, s, t, k)
    b = BACKENDS["cython"].assoc_violations(n, table, s, t, k)
    assert sorted(map(tuple, a)) == sorted(map(tuple, b))


@needs_native
@settings(max_examples=150, deadline=None)
@given(st.data())
def test_interchange_violations_agree(data):
    n = data.draw(st.integers(1, 5))
    k = data.draw(st.integers(1, 3))
    ints = lambda lo, hi, size: st.lists(st.integers(lo, hi), min_size=size, max_size=size)
    hs = data.draw(ints(-1, n - 1, n * n))
    vc = data.draw(ints(-1, n - 1, n * n))
    dom, cod, vsrc, vtgt = (data.draw(ints(0, k - 1, n)) for _ in range(4))
    a = BACKENDS["python"].interchange_violations(n, hs, vc, dom, cod, vsrc, vtgt, k)
    b = BACKENDS["cython"].interchange_violations(n, hs, vc, dom, cod, vsrc, vtgt, k)
    assert sorted(map(tuple, a)) == sorted(map(tuple, b))


def test_fallback_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['dblcat._kernels._native'] = None\n"
        "from dblcat import _kernels\n"
        "from dblcat.gen import chain, gen_commuting_squares, gen_poset_category\n"
        "from dblcat.gg import gamma\n"
        "C = gen_commuting_squares(gen_poset_category(chain(2)))\n"
        "print(_kernels.BACKEND, sorted(_kernels.BACKENDS), len(gamma(C).squares))\n"
    )
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip() == "python ['python'] 4"
