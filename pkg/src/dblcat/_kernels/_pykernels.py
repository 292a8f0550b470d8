"""Pure-Python kernels (fallback when the compiled extension is absent)."""


def close_rounds(rounds, indptr, partner, result):
    """Close a set under a binary operation, recording the round of entry.

    ``rounds[i]`` is 0 for seed elements and -1 for non-members; it is updated
    in place.  For element ``e`` the pairs ``(partner[j], result[j])`` with
    ``indptr[e] <= j < indptr[e + 1]`` list every product having ``e`` as one
    factor.  An element enters at round k + 1 when it is a product of two
    members from rounds <= k, at least one of them from round k.
    """
    rounds = [int(r) for r in rounds]
    indptr = [int(i) for i in indptr]
    partner = [int(p) for p in partner]
    result = [int(r) for r in result]
    frontier = [i for i, r in enumerate(rounds) if r == 0]
    k = 0
    while frontier:
        nxt = []
        for e in frontier:
            for j in range(indptr[e], indptr[e + 1]):
                o = partner[j]
                ro = rounds[o]
                if 0 <= ro <= k:
                    r = result[j]
                    if rounds[r] == -1:
                        rounds[r] = k + 1
                        nxt.append(r)
        frontier = nxt
        k += 1
    return rounds


def _groups(n_keys, key):
    groups = [[] for _ in range(n_keys)]
    for i, k in enumerate(key):
        groups[k].append(i)
    return groups


def assoc_violations(n, table, s, t, n_keys):
    """Associativity failures of a partial operation on 0..n-1.

    ``table[g * n + f]`` is g.f or -1, defined for s[g] == t[f].  Returns
    (h, g, f, lhs, rhs) for each composable triple where (h.g).f differs from
    h.(g.f), with -1 for an undefined side.
    """
    by_s = _groups(n_keys, s)
    out = []
    for f in range(n):
        for g in by_s[t[f]]:
            gf = table[g * n + f]
            for h in by_s[t[g]]:
                hg = table[h * n + g]
                lhs = table[h * n + gf] if gf >= 0 else -1
                rhs = table[hg * n + f] if hg >= 0 else -1
                if lhs != rhs or lhs < 0:
                    out.append((h, g, f, lhs, rhs))
    return out


def interchange_violations(n, hs, vc, dom, cod, vsrc, vtgt, n_keys):
    """Interchange failures on 2 x 2 grids of squares.

    ``hs`` and ``vc`` are dense n x n tables (-1 when undefined).  For every
    horizontally composable bottom row (psi, phi) and top row (psi2, phi2) sitting
    on it, compares vc(hs(psi2, phi2), hs(psi, phi)) with hs(vc(psi2, psi), vc(phi2, phi)).
    Returns (psi2, phi2, psi, phi, lhs, rhs) tuples.
    """
    by_dom = _groups(n_keys, dom)
    out = []
    for psi in range(n):
        for phi in range(n):
            bottom = hs[psi * n + phi]
            if bottom < 0 or vsrc[psi] != vtgt[phi]:
                continue
            uppers_phi = by_dom[cod[phi]]
            for psi2 in by_dom[cod[psi]]:
                s = vsrc[psi2]
                a = vc[psi2 * n + psi]
                for phi2 in uppers_phi:
                    if vtgt[phi2] != s:
                        continue
                    top = hs[psi2 * n + phi2]
                    lhs = vc[top * n + bottom] if top >= 0 else -1
                    b = vc[phi2 * n + phi]
                    rhs = hs[a * n + b] if a >= 0 and b >= 0 else -1
                    if lhs != rhs or lhs < 0:
                        out.append((psi2, phi2, psi, phi, lhs, rhs))
    return out
