"""Hot kernels: compiled extension when built, pure Python otherwise.

``close_rounds`` drives the filtration closures; ``assoc_violations`` and
``interchange_violations`` are the cubic and quartic loops of the validator.
"""
from . import _pykernels

try:
    from . import _native as _ext
except ImportError:  # extension not built
    _ext = None

BACKENDS = {"python": _pykernels}
if _ext is not None:
    BACKENDS["cython"] = _ext

BACKEND = "cython" if _ext is not None else "python"


def use_backend(name):
    """Select the kernel backend by name; returns the previous backend name."""
    global BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    prev, BACKEND = BACKEND, name
    return prev


def close_rounds(rounds, indptr, partner, result):
    return list(BACKENDS[BACKEND].close_rounds(rounds, indptr, partner, result))


def assoc_violations(n, table, s, t, n_keys):
    return BACKENDS[BACKEND].assoc_violations(n, table, s, t, n_keys)


def interchange_violations(n, hs, vc, dom, cod, vsrc, vtgt, n_keys):
    return BACKENDS[BACKEND].interchange_violations(n, hs, vc, dom, cod, vsrc, vtgt, n_keys)


def dense(table, index, n):
    """Flatten a dict keyed by (second, first) token pairs into an n*n int list."""
    out = [-1] * (n * n)
    for (b, a), c in table.items():
        out[index[b] * n + index[a]] = index[c]
    return out


def build_csr(n, triples):
    """CSR adjacency for ``close_rounds`` from (x, y, z) triples meaning z = x op y."""
    counts = [0] * (n + 1)
    for x, y, _ in triples:
        counts[x + 1] += 1
        if y != x:
            counts[y + 1] += 1
    for i in range(n):
        counts[i + 1] += counts[i]
    fill = counts[:-1].copy()
    partner = [0] * counts[n]
    result = [0] * counts[n]
    for x, y, z in triples:
        j = fill[x]
        partner[j], result[j] = y, z
        fill[x] += 1
        if y != x:
            j = fill[y]
            partner[j], result[j] = x, z
            fill[y] += 1
    return counts, partner, result
