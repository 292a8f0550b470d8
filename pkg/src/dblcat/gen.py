"""Deterministic builders for finite double categories and functors.

Generated tokens spell out their construction: a commuting square is
``top|left|right|bottom``, a quintet additionally carries its 2-cell, and a
product cell is ``[x;y]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .bicat import Fin2Category, trivial_double, validate_2category
from .core import (
    FinCategory,
    FinDoubleCategory,
    InvalidInput,
    validate_category,
    validate_double_category,
)


@dataclass(frozen=True)
class PosetSpec:
    size: int
    relation: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        rel = set(self.relation) | {(i, i) for i in range(self.size)}
        object.__setattr__(self, "relation", frozenset(rel))

    def validate(self):
        n, rel = self.size, self.relation
        if n < 1:
            raise InvalidInput("poset size must be positive")
        for i, j in rel:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidInput(f"pair {(i, j)} out of range")
            if i != j and (j, i) in rel:
                raise InvalidInput(f"antisymmetry fails at {(i, j)}")
        for i, j in rel:
            for k in range(n):
                if (j, k) in rel and (i, k) not in rel:
                    raise InvalidInput(f"transitivity fails at {(i, j, k)}")

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.relation


def chain(n: int) -> PosetSpec:
    return PosetSpec(n, frozenset((i, j) for i in range(n) for j in range(i, n)))


def antichain(n: int) -> PosetSpec:
    return PosetSpec(n, frozenset())


def diamond() -> PosetSpec:
    return PosetSpec(4, frozenset({(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)}))


def poset_from_name(name: str) -> PosetSpec:
    """``chainN``, ``antichainN``, ``diamond`` or ``N:i<j;k<l`` (transitively closed)."""
    if name == "diamond":
        return diamond()
    for prefix, fn in (("antichain", antichain), ("chain", chain)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return fn(int(name[len(prefix):]))
    if ":" in name:
        size, _, rest = name.partition(":")
        pairs = set()
        for item in filter(None, rest.split(";")):
            i, _, j = item.partition("<")
            pairs.add((int(i), int(j)))
        n = int(size)
        closed = set(pairs) | {(i, i) for i in range(n)}
        changed = True
        while changed:
            changed = False
            for (i, j), (k, l) in product(list(closed), repeat=2):
                if j == k and (i, l) not in closed:
                    closed.add((i, l))
                    changed = True
        return PosetSpec(n, frozenset(closed))
    raise InvalidInput(f"unknown poset {name!r}")


def _canonical(n: int, rel) -> Tuple:
    return min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in permutations(range(n)))


def all_posets(n: int) -> List[PosetSpec]:
    """Every poset on n points up to isomorphism, naturally labelled, in a fixed order."""
    strict = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen, out = set(), []
    for bits in product((0, 1), repeat=len(strict)):
        rel = {p for p, b in zip(strict, bits) if b}
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        key = _canonical(n, rel)
        if key in seen:
            continue
        seen.add(key)
        out.append(PosetSpec(n, frozenset(rel)))
    return out


def _mor(i: int, j: int) -> str:
    return f"id_{i}" if i == j else f"{i}<{j}"


def gen_poset_category(p: PosetSpec) -> FinCategory:
    p.validate()
    obs = [str(i) for i in range(p.size)]
    pairs = sorted(p.relation)
    mors = {_mor(i, j): (i, j) for i, j in pairs}
    comp = {}
    for (i, j), (k, l) in product(pairs, repeat=2):
        if j == k:
            comp[(_mor(k, l), _mor(i, j))] = _mor(i, l)
    return FinCategory(
        obs, mors, {m: str(i) for m, (i, _) in mors.items()},
        {m: str(j) for m, (_, j) in mors.items()},
        {str(i): _mor(i, i) for i in range(p.size)}, comp)


def walking_arrow() -> FinCategory:
    """The category 2 = {x -a-> y}."""
    return FinCategory(
        ["x", "y"], ["id_x", "id_y", "a"],
        {"id_x": "x", "id_y": "y", "a": "x"}, {"id_x": "x", "id_y": "y", "a": "y"},
        {"x": "id_x", "y": "id_y"},
        {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y",
         ("a", "id_x"): "a", ("id_y", "a"): "a"})


def _sq(*parts) -> str:
    return "|".join(parts)


def gen_commuting_squares(K: FinCategory) -> FinDoubleCategory:
    """Sq(K): squares are boundary quadruples (top, left, right, bottom) that commute."""
    rep = validate_category(K)
    if not rep.ok:
        raise InvalidInput("category fails validation", rep)
    src, tgt, comp = K.src, K.tgt, K.comp
    by_src: Dict[str, List[str]] = {}
    for m in K.morphisms:
        by_src.setdefault(src[m], []).append(m)
    bnd = {}
    for a in K.morphisms:
        for f in by_src[src[a]]:
            for g in by_src[tgt[a]]:
                ga = comp[(g, a)]
                for b in by_src[tgt[f]]:
                    if tgt[b] == tgt[g] and comp[(b, f)] == ga:
                        bnd[_sq(a, f, g, b)] = (a, f, g, b)
    return _assemble_squares(K, bnd, lambda p, q: None)


def _assemble_squares(K: FinCategory, bnd, cell_of) -> FinDoubleCategory:
    """Build the double category on boundary-indexed squares.

    ``bnd`` maps square token -> (top, left, right, bottom); squares are
    determined by boundary plus an optional cell handled by ``cell_of``.
    """
    comp, ident = K.comp, K.id
    index = {b: q for q, b in bnd.items()}
    by_dom: Dict[str, List[str]] = {}
    by_left: Dict[str, List[str]] = {}
    for q, (a, f, g, b) in bnd.items():
        by_dom.setdefault(a, []).append(q)
        by_left.setdefault(f, []).append(q)
    vcomp, hcomp = {}, {}
    for phi, (a, f, g, b) in bnd.items():
        for psi in by_dom.get(b, ()):
            _, f2, g2, c = bnd[psi]
            vcomp[(psi, phi)] = index[(a, comp[(f2, f)], comp[(g2, g)], c)]
        for psi in by_left.get(g, ()):
            a2, _, h, b2 = bnd[psi]
            hcomp[(psi, phi)] = index[(comp[(a2, a)], f, h, comp[(b2, b)])]
    return FinDoubleCategory(
        c0=K, hmors=K.morphisms, hsrc=K.src, htgt=K.tgt,
        squares=bnd,
        dom={q: v[0] for q, v in bnd.items()}, cod={q: v[3] for q, v in bnd.items()},
        vsrc={q: v[1] for q, v in bnd.items()}, vtgt={q: v[2] for q, v in bnd.items()},
        vid={a: index[(a, ident[K.src[a]], ident[K.tgt[a]], a)] for a in K.morphisms},
        vcomp=vcomp,
        hid_obj=dict(ident),
        hid_vmor={f: index[(ident[K.src[f]], f, f, ident[K.tgt[f]])] for f in K.morphisms},
        hcomp_h=dict(comp), hcomp_sq=hcomp,
    )


def gen_quintet(K: Fin2Category) -> FinDoubleCategory:
    """Quintets of a strict 2-category: squares (top, left, right, bottom, cell).

    The cell runs from right.top to bottom.left.
    """
    rep = validate_2category(K)
    if not rep.ok:
        raise InvalidInput("2-category fails validation", rep)
    h1, h2, v2, id2 = K.hcomp1, K.hcomp2, K.vcomp2, K.id2
    base = K.underlying_category()
    cells_between: Dict[Tuple[str, str], List[str]] = {}
    for c in K.cells2:
        cells_between.setdefault((K.src1[c], K.tgt1[c]), []).append(c)
    by_src: Dict[str, List[str]] = {}
    for m in K.cells1:
        by_src.setdefault(K.src0[m], []).append(m)

    bnd = {}
    for a in K.cells1:
        for f in by_src[K.src0[a]]:
            for g in by_src[K.tgt0[a]]:
                ga = h1[(g, a)]
                for b in by_src[K.tgt0[f]]:
                    if K.tgt0[b] != K.tgt0[g]:
                        continue
                    for c in cells_between.get((ga, h1[(b, f)]), ()):
                        bnd[_sq(a, f, g, b, c)] = (a, f, g, b, c)
    index = {v: q for q, v in bnd.items()}
    by_dom: Dict[str, List[str]] = {}
    by_left: Dict[str, List[str]] = {}
    for q, (a, f, g, b, _) in bnd.items():
        by_dom.setdefault(a, []).append(q)
        by_left.setdefault(f, []).append(q)

    vcomp, hcomp = {}, {}
    for phi, (a, f, g, b, al) in bnd.items():
        for psi in by_dom.get(b, ()):
            _, f2, g2, c, be = bnd[psi]
            cell = v2[(h2[(be, id2[f])], h2[(id2[g2], al)])]
            vcomp[(psi, phi)] = index[(a, h1[(f2, f)], h1[(g2, g)], c, cell)]
        for psi in by_left.get(g, ()):
            a2, _, h, b2, be = bnd[psi]
            cell = v2[(h2[(id2[b2], al)], h2[(be, id2[a])])]
            hcomp[(psi, phi)] = index[(h1[(a2, a)], f, h, h1[(b2, b)], cell)]
    i1 = K.id1
    return FinDoubleCategory(
        c0=base, hmors=K.cells1, hsrc=K.src0, htgt=K.tgt0,
        squares=bnd,
        dom={q: v[0] for q, v in bnd.items()}, cod={q: v[3] for q, v in bnd.items()},
        vsrc={q: v[1] for q, v in bnd.items()}, vtgt={q: v[2] for q, v in bnd.items()},
        vid={a: index[(a, i1[K.src0[a]], i1[K.tgt0[a]], a, id2[a])] for a in K.cells1},
        vcomp=vcomp,
        hid_obj=dict(i1),
        hid_vmor={f: index[(i1[K.src0[f]], f, f, i1[K.tgt0[f]], id2[f])] for f in K.cells1},
        hcomp_h=dict(h1), hcomp_sq=hcomp,
    )


def gen_trivial(B: Fin2Category) -> FinDoubleCategory:
    return trivial_double(B)


def _pair(x: str, y: str) -> str:
    return f"[{x};{y}]"


def _pmap(m1, m2):
    return {_pair(k1, k2): _pair(m1[k1], m2[k2]) for k1 in m1 for k2 in m2}


def _ptable(t1, t2):
    return {(_pair(a1, a2), _pair(b1, b2)): _pair(v1, v2)
            for (a1, b1), v1 in t1.items() for (a2, b2), v2 in t2.items()}


def product_category(K: FinCategory, L: FinCategory) -> FinCategory:
    return FinCategory(
        [_pair(x, y) for x in K.objects for y in L.objects],
        [_pair(x, y) for x in K.morphisms for y in L.morphisms],
        _pmap(K.src, L.src), _pmap(K.tgt, L.tgt), _pmap(K.id, L.id),
        _ptable(K.comp, L.comp))


def gen_product(C: FinDoubleCategory, D: FinDoubleCategory) -> FinDoubleCategory:
    for X in (C, D):
        rep = validate_double_category(X)
        if not rep.ok:
            raise InvalidInput("double category fails validation", rep)
    return FinDoubleCategory(
        c0=product_category(C.c0, D.c0),
        hmors=[_pair(a, b) for a in C.hmors for b in D.hmors],
        hsrc=_pmap(C.hsrc, D.hsrc), htgt=_pmap(C.htgt, D.htgt),
        squares=[_pair(p, q) for p in C.squares for q in D.squares],
        dom=_pmap(C.dom, D.dom), cod=_pmap(C.cod, D.cod),
        vsrc=_pmap(C.vsrc, D.vsrc), vtgt=_pmap(C.vtgt, D.vtgt),
        vid=_pmap(C.vid, D.vid), vcomp=_ptable(C.vcomp, D.vcomp),
        hid_obj=_pmap(C.hid_obj, D.hid_obj), hid_vmor=_pmap(C.hid_vmor, D.hid_vmor),
        hcomp_h=_ptable(C.hcomp_h, D.hcomp_h), hcomp_sq=_ptable(C.hcomp_sq, D.hcomp_sq),
    )


# --------------------------------------------------------------------------
# 2-categories for the corpus


def locally_discrete(K: FinCategory) -> Fin2Category:
    """K as a 2-category whose only 2-cells are identities (named after their 1-cell)."""
    return Fin2Category(
        cells0=K.objects, cells1=K.morphisms, src0=K.src, tgt0=K.tgt,
        cells2=K.morphisms, src1={m: m for m in K.morphisms}, tgt1={m: m for m in K.morphisms},
        id1=K.id, id2={m: m for m in K.morphisms},
        vcomp2={(m, m): m for m in K.morphisms},
        hcomp1=K.comp, hcomp2=K.comp,
    )


def point_2category() -> Fin2Category:
    return locally_discrete(FinCategory(["*"], ["1"], {"1": "*"}, {"1": "*"}, {"*": "1"},
                                        {("1", "1"): "1"}))


def monoids(n: int, commutative: bool = False) -> List[List[List[int]]]:
    """Multiplication tables of all monoids on {0..n-1} (0 the unit), up to isomorphism."""
    rest = list(range(1, n))
    seen, out = set(), []
    for vals in product(range(n), repeat=len(rest) ** 2):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[0][i] = t[i][0] = i
        for (i, j), v in zip(product(rest, rest), vals):
            t[i][j] = v
        if commutative and any(t[i][j] != t[j][i] for i in rest for j in rest):
            continue
        if any(t[t[i][j]][k] != t[i][t[j][k]] for i in rest for j in rest for k in rest):
            continue
        key = min(
            tuple(p[t[pinv[i]][pinv[j]]] for i in range(n) for j in range(n))
            for p in ([0] + list(q) for q in permutations(rest))
            for pinv in [sorted(range(n), key=lambda x, p=p: p[x])])
        if key in seen:
            continue
        seen.add(key)
        out.append(t)
    return out


def monoid_2category(table: Sequence[Sequence[int]], names: Sequence[str] = None) -> Fin2Category:
    """One 0-cell, one 1-cell; the 2-cells form the given commutative monoid."""
    n = len(table)
    names = list(names or (["u"] + [f"e{i}" for i in range(1, n)]))
    mult = {(names[i], names[j]): names[table[i][j]] for i in range(n) for j in range(n)}
    return Fin2Category(
        cells0=["*"], cells1=["1"], src0={"1": "*"}, tgt0={"1": "*"},
        cells2=names, src1={c: "1" for c in names}, tgt1={c: "1" for c in names},
        id1={"*": "1"}, id2={"1": names[0]},
        vcomp2=mult, hcomp1={("1", "1"): "1"}, hcomp2=mult,
    )


def idempotent_2category() -> Fin2Category:
    """One 0-cell, one 1-cell, 2-cells the idempotent monoid {1, e}."""
    return monoid_2category([[0, 1], [1, 1]], ["1", "e"])


def compatible_orders(table: Sequence[Sequence[int]]) -> List[FrozenSet[Tuple[int, int]]]:
    """Partial orders on a monoid compatible with multiplication on both sides."""
    n = len(table)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in product((0, 1), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b} | {(i, i) for i in range(n)}
        if any((j, i) in rel for i, j in rel if i != j):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2):
            continue
        if any((table[c][i], table[c][j]) not in rel or (table[i][c], table[j][c]) not in rel
               for i, j in rel for c in range(n)):
            continue
        out.append(frozenset(rel))
    return out


def ordered_monoid_2category(table: Sequence[Sequence[int]], order) -> Fin2Category:
    """Thin 2-category: one 0-cell, 1-cells the monoid, a 2-cell m=>n iff m <= n."""
    n = len(table)
    order = set(order) | {(i, i) for i in range(n)}
    names = ["1"] + [f"m{i}" for i in range(1, n)]
    cells2 = {f"{names[i]}=>{names[j]}": (i, j) for i, j in sorted(order)}
    h1 = {(names[i], names[j]): names[table[i][j]] for i in range(n) for j in range(n)}
    v2, h2 = {}, {}
    for b, (i, j) in cells2.items():
        for a, (k, l) in cells2.items():
            if k == j:  # a: j => l after b: i => j
                v2[(a, b)] = f"{names[i]}=>{names[l]}"
            h2[(b, a)] = f"{names[table[i][k]]}=>{names[table[j][l]]}"
    return Fin2Category(
        cells0=["*"], cells1=names, src0={m: "*" for m in names}, tgt0={m: "*" for m in names},
        cells2=cells2, src1={c: names[i] for c, (i, _) in cells2.items()},
        tgt1={c: names[j] for c, (_, j) in cells2.items()},
        id1={"*": "1"}, id2={names[i]: f"{names[i]}=>{names[i]}" for i in range(n)},
        vcomp2=v2, hcomp1=h1, hcomp2=h2,
    )


def monotone_maps(p: PosetSpec, q: PosetSpec) -> Iterator[Tuple[int, ...]]:
    for u in product(range(q.size), repeat=p.size):
        if all(q.leq(u[i], u[j]) for i, j in p.relation):
            yield u


def gen_sq_functor(p: PosetSpec, q: PosetSpec, u: Sequence[int], C=None, D=None):
    """Sq(u): Sq(P) -> Sq(Q) induced by a monotone map u."""
    from .functors import DoubleFunctor

    C = C or gen_commuting_squares(gen_poset_category(p))
    D = D or gen_commuting_squares(gen_poset_category(q))
    mor = {_mor(i, j): _mor(u[i], u[j]) for i, j in p.relation}
    sq = {s: _sq(mor[C.dom[s]], mor[C.vsrc[s]], mor[C.vtgt[s]], mor[C.cod[s]]) for s in C.squares}
    return DoubleFunctor(C, D, {str(i): str(u[i]) for i in range(p.size)}, mor, dict(mor), sq)


# --------------------------------------------------------------------------
# corpus


def corpus_two_categories() -> List[Tuple[str, Fin2Category]]:
    """Small 2-categories (at most three 2-cells) for trivial double categories."""
    out = [("point", point_2category()), ("idempotent", idempotent_2category())]
    for n in (2, 3):
        for i, t in enumerate(monoids(n, commutative=True)):
            out.append((f"cmon{n}.{i}", monoid_2category(t)))
    for n in (1, 2):
        for i, p in enumerate(all_posets(n)):
            out.append((f"ldposet{n}.{i}", locally_discrete(gen_poset_category(p))))
    for i, p in enumerate(all_posets(3)):
        B = locally_discrete(gen_poset_category(p))
        if len(B.cells2) <= 6:
            out.append((f"ldposet3.{i}", B))
    for n in (1, 2):
        for i, t in enumerate(monoids(n)):
            for j, o in enumerate(compatible_orders(t)):
                B = ordered_monoid_2category(t, o)
                if len(B.cells2) <= 3:
                    out.append((f"omon{n}.{i}.{j}", B))
    return out


def corpus_thin_2categories() -> List[Tuple[str, Fin2Category]]:
    """Ordered monoids of size <= 3 with every compatible order."""
    out = []
    for n in (1, 2, 3):
        for i, t in enumerate(monoids(n)):
            for j, o in enumerate(compatible_orders(t)):
                out.append((f"omon{n}.{i}.{j}", ordered_monoid_2category(t, o)))
    return out


def corpus(include_products: bool = True) -> List[Tuple[str, FinDoubleCategory]]:
    """The generated corpus of double categories, in a fixed order."""
    out: List[Tuple[str, FinDoubleCategory]] = []
    for name, B in corpus_two_categories():
        out.append((f"trivial/{name}", gen_trivial(B)))
    for n in (1, 2, 3, 4):
        for i, p in enumerate(all_posets(n)):
            K = gen_poset_category(p)
            out.append((f"sq/poset{n}.{i}", gen_commuting_squares(K)))
    for n in (1, 2, 3, 4):
        for i, p in enumerate(all_posets(n)):
            out.append((f"quintet/poset{n}.{i}", gen_quintet(locally_discrete(gen_poset_category(p)))))
    for name, B in corpus_thin_2categories():
        out.append((f"quintet/{name}", gen_quintet(B)))
    if include_products:
        small = [
            ("sq2", gen_commuting_squares(gen_poset_category(chain(2)))),
            ("disc2", gen_commuting_squares(gen_poset_category(antichain(2)))),
            ("idem", gen_trivial(idempotent_2category())),
            ("qomon", gen_quintet(ordered_monoid_2category([[0, 1], [1, 1]], {(0, 1)}))),
        ]
        for i, (n1, c1) in enumerate(small):
            for n2, c2 in small[i:]:
                out.append((f"product/{n1}x{n2}", gen_product(c1, c2)))
    return out
