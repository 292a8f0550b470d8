"""Independent reference implementations used to freeze expected values.

Nothing here imports the closure kernels or the linear algebra of the package;
each oracle is the most direct reading of the definition.
"""


def naive_closure(seed, ops):
    """Least superset of ``seed`` closed under every table in ``ops`` (simultaneously)."""
    members = set(seed)
    while True:
        new = set()
        for table in ops:
            for (p, q), r in table.items():
                if p in members and q in members and r not in members:
                    new.add(r)
        if not new:
            return members
        members |= new


def seed_of(C):
    ids = C.c0.id
    glob = {q for q in C.squares
            if C.vsrc[q] == ids[C.hsrc[C.dom[q]]] and C.vtgt[q] == ids[C.htgt[C.dom[q]]]}
    return glob | set(C.hid_vmor.values())


def naive_gamma_members(C):
    return naive_closure(seed_of(C), [C.vcomp, C.hcomp_sq])


def naive_levels(C):
    """[(H_n, V_n)] by alternating fixpoints, until V stops growing."""
    H = seed_of(C)
    out = []
    while True:
        V = naive_closure(H, [C.vcomp])
        if out and V == out[-1][1]:
            return out
        out.append((frozenset(H), frozenset(V)))
        H = naive_closure(V, [C.hcomp_sq])


def poset_counts(p):
    """(|Ob K|, |Mor K|) of the poset category."""
    return p.size, len(p.relation)


# --- linear algebra over F2 by brute-force enumeration -----------------------


def span(vectors):
    """Every F2-linear combination of the given bitmask vectors, as an explicit set."""
    out = {0}
    for x in vectors:
        if x not in out:
            out |= {v ^ x for v in out}
    return frozenset(out)


def apply_cols(cols, v):
    out = 0
    for j, c in enumerate(cols):
        if v >> j & 1:
            out ^= c
    return out


def act(N, a, m, b):
    """a . m . b for algebra elements a, b given as bitmasks."""
    x = m
    y = 0
    for i in range(N.right.dim):
        if b >> i & 1:
            y ^= apply_cols(N.ract[i], x)
    z = 0
    for i in range(N.left.dim):
        if a >> i & 1:
            z ^= apply_cols(N.lact[i], y)
    return z


def brute_2_subcyclic(t):
    """Search every pair of generators, comparing explicit element sets."""
    N = t.target
    img = span(t.phi)
    A_elems = [apply_cols(t.f, a) for a in range(1 << t.source.left.dim)]
    B_elems = [apply_cols(t.g, b) for b in range(1 << t.source.right.dim)]
    C_elems = range(1 << N.left.dim)
    D_elems = range(1 << N.right.dim)
    Ls = [span(act(N, a, n, b) for a in A_elems for b in B_elems) for n in range(1 << N.dim)]
    Ks = [span(act(N, c, n, d) for c in C_elems for d in D_elems) for n in range(1 << N.dim)]
    return any(img <= L and any(L <= K for K in Ks) for L in Ls)


def tensor_dim(M, M2):
    """dim of M (x)_B M2 as dim(M (x) M2) - rank(relations), rank by elimination on sets."""
    d1, d2 = M.dim, M2.dim
    rels = []
    for i in range(d1):
        for j in range(d2):
            for k in range(M.right.dim):
                left = M.ract[k][i]
                right = M2.lact[k][j]
                v = 0
                for a in range(d1):
                    if left >> a & 1:
                        v ^= 1 << (a * d2 + j)
                for b in range(d2):
                    if right >> b & 1:
                        v ^= 1 << (i * d2 + b)
                rels.append(v)
    return d1 * d2 - (len(span(rels)).bit_length() - 1)
