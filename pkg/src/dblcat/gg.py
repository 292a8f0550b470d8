"""The globularily generated piece of a double category and its vertical filtration.

Level 1 starts from the globular squares together with the horizontal
identities of vertical morphisms.  ``V_n`` is the closure of ``H_n`` under
vertical composition and ``H_{n+1}`` the closure of ``V_n`` under horizontal
composition.  The increasing union is the square set of gamma(C).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from . import _kernels
from .core import (
    DblcatError,
    FinCategory,
    FinDoubleCategory,
    InvalidInput,
    Token,
    UnknownIdentifier,
    ValidationReport,
    composite,
    validate_double_category,
)


class NotLengthOne(DblcatError):
    pass


@dataclass(frozen=True)
class Leaf:
    square: Token


@dataclass(frozen=True)
class Node:
    op: str  # "v" (vcomp) or "h" (hcomp_sq)
    children: Tuple["WitnessTree", ...]


WitnessTree = Union[Leaf, Node]


def evaluate(C: FinDoubleCategory, tree: WitnessTree) -> Optional[Token]:
    """Replay a witness tree in C; children fold right to left."""
    if isinstance(tree, Leaf):
        return tree.square
    vals = [evaluate(C, t) for t in tree.children]
    if any(v is None for v in vals):
        return None
    return composite(C.vcomp if tree.op == "v" else C.hcomp_sq, vals)


def to_prefix(tree: WitnessTree) -> str:
    if isinstance(tree, Leaf):
        return tree.square
    return f"{tree.op}({','.join(to_prefix(t) for t in tree.children)})"


def layer_depth(tree: WitnessTree) -> int:
    """Number of alternating horizontal layers, counting the leaf layer as 1."""
    if isinstance(tree, Leaf):
        return 1
    d = max(layer_depth(t) for t in tree.children)
    return d + 1 if tree.op == "h" else d


def _node(op: str, left: WitnessTree, right: WitnessTree) -> Node:
    kids = []
    for t in (left, right):
        if isinstance(t, Node) and t.op == op:
            kids.extend(t.children)
        else:
            kids.append(t)
    return Node(op, tuple(kids))


class _Tables:
    """Integer-indexed composition tables of one double category, built once."""

    def __init__(self, C: FinDoubleCategory):
        self.tokens = C.squares
        self.index = {q: i for i, q in enumerate(self.tokens)}
        ix = self.index
        self.vtriples = [(ix[p], ix[q], ix[r]) for (p, q), r in C.vcomp.items()]
        self.htriples = [(ix[p], ix[q], ix[r]) for (p, q), r in C.hcomp_sq.items()]
        n = len(self.tokens)
        self.vcsr = _kernels.build_csr(n, self.vtriples)
        self.hcsr = _kernels.build_csr(n, self.htriples)
        # products indexed by result, for witness extraction
        self.vby = {}
        for p, q, r in self.vtriples:
            self.vby.setdefault(r, []).append((p, q))
        self.hby = {}
        for p, q, r in self.htriples:
            self.hby.setdefault(r, []).append((p, q))

    def close(self, members, csr):
        rounds = [-1] * len(self.tokens)
        for i in members:
            rounds[i] = 0
        return _kernels.close_rounds(rounds, *csr)


@dataclass
class GammaAnalysis:
    source: FinDoubleCategory
    levels: List[Tuple[FrozenSet[Token], FrozenSet[Token]]]
    stable_at: int
    vlength: Dict[Token, int]
    gamma: FinDoubleCategory
    _tables: _Tables = field(repr=False, default=None)
    _hrounds: List[List[int]] = field(repr=False, default_factory=list)
    _vrounds: List[List[int]] = field(repr=False, default_factory=list)
    _memo: Dict = field(repr=False, default_factory=dict)

    def H(self, n: int) -> FrozenSet[Token]:
        # past stabilization H_n = V_N
        if n > self.stable_at:
            return self.levels[-1][1]
        return self.levels[n - 1][0]

    def V(self, n: int) -> FrozenSet[Token]:
        return self.levels[min(n, self.stable_at) - 1][1]

    @property
    def members(self) -> FrozenSet[Token]:
        return self.levels[-1][1]

    def witness(self, q: Token) -> WitnessTree:
        if q not in self.vlength:
            raise KeyError(q)
        i = self._tables.index[q]
        return self._tok_tree(self._wit_v(self.vlength[q], i))

    def witnesses(self) -> Dict[Token, WitnessTree]:
        return {q: self.witness(q) for q in sorted(self.vlength)}

    # Witness extraction.  Within one closure every non-seed element has a
    # product of two strictly earlier members; the least such pair by token
    # order is chosen.
    def _least_pair(self, pairs, rounds, k):
        toks = self._tables.tokens
        best = None
        for p, q in pairs:
            if 0 <= rounds[p] < k and 0 <= rounds[q] < k:
                key = (toks[p], toks[q])
                if best is None or key < best[0]:
                    best = (key, p, q)
        return best[1], best[2]

    def _wit_v(self, n, i):
        key = ("v", n, i)
        if key in self._memo:
            return self._memo[key]
        rv = self._vrounds[n - 1]
        if self.vlength[self._tables.tokens[i]] < n:
            out = self._wit_v(self.vlength[self._tables.tokens[i]], i)
        elif rv[i] == 0:
            out = self._wit_h(n, i)
        else:
            p, q = self._least_pair(self._tables.vby[i], rv, rv[i])
            out = ("v", self._wit_v(n, p), self._wit_v(n, q))
        self._memo[key] = out
        return out

    def _wit_h(self, n, i):
        key = ("h", n, i)
        if key in self._memo:
            return self._memo[key]
        if n == 1:
            out = i
        else:
            rh = self._hrounds[n - 1]
            if rh[i] == 0:
                out = self._wit_v(n - 1, i)
            else:
                p, q = self._least_pair(self._tables.hby[i], rh, rh[i])
                out = ("h", self._wit_h(n, p), self._wit_h(n, q))
        self._memo[key] = out
        return out

    def _tok_tree(self, raw) -> WitnessTree:
        if isinstance(raw, int):
            return Leaf(self._tables.tokens[raw])
        op, a, b = raw
        return _node(op, self._tok_tree(a), self._tok_tree(b))


def level_one_seed(C: FinDoubleCategory) -> FrozenSet[Token]:
    return frozenset(C.globular_squares()) | frozenset(C.hid_vmor.values())


def vertical_filtration(C: FinDoubleCategory, check: bool = True) -> GammaAnalysis:
    if check:
        rep = validate_double_category(C)
        if not rep.ok:
            raise InvalidInput("double category fails validation", rep)
    T = _Tables(C)
    toks, ix = T.tokens, T.index
    h1 = sorted(ix[q] for q in level_one_seed(C))
    hrounds = [[-1] * len(toks)]
    for i in h1:
        hrounds[0][i] = 0
    vr = T.close(h1, T.vcsr)
    vrounds = [vr]
    while True:
        v_now = [i for i, r in enumerate(vrounds[-1]) if r >= 0]
        hr = T.close(v_now, T.hcsr)
        h_next = [i for i, r in enumerate(hr) if r >= 0]
        vr = T.close(h_next, T.vcsr)
        if all((a >= 0) == (b >= 0) for a, b in zip(vr, vrounds[-1])):
            break
        hrounds.append(hr)
        vrounds.append(vr)

    levels = []
    vlength: Dict[Token, int] = {}
    for n, (hr, vr) in enumerate(zip(hrounds, vrounds), start=1):
        H = frozenset(toks[i] for i, r in enumerate(hr) if r >= 0)
        V = frozenset(toks[i] for i, r in enumerate(vr) if r >= 0)
        levels.append((H, V))
        for q in V:
            vlength.setdefault(q, n)
    gamma = C.restrict(levels[-1][1])
    return GammaAnalysis(C, levels, len(levels), vlength, gamma, T, hrounds, vrounds)


def gamma(C: FinDoubleCategory, check: bool = True) -> FinDoubleCategory:
    return vertical_filtration(C, check=check).gamma


def is_globularily_generated(C: FinDoubleCategory, check: bool = True) -> bool:
    return len(vertical_filtration(C, check=check).members) == len(C.squares)


def vertical_length(C: FinDoubleCategory, q: Token, analysis: Optional[GammaAnalysis] = None) -> Optional[int]:
    if q not in C.dom:
        raise UnknownIdentifier(q)
    a = analysis or vertical_filtration(C)
    return a.vlength.get(q)


def _is_hid(C: FinDoubleCategory, q: Token) -> bool:
    return C.hid_vmor.get(C.vsrc[q]) == q


def length_one_decomposition(C: FinDoubleCategory, q: Token,
                             analysis: Optional[GammaAnalysis] = None) -> List[Token]:
    """Write a vertical-length-1 square as Psi_k, Phi_k, ..., Phi_1, Psi_0 (top first).

    Each Phi_i is a horizontal identity of a vertical morphism and each Psi_i is
    globular; folding the list with vcomp right to left gives back ``q``.
    """
    a = analysis or vertical_filtration(C)
    if q not in C.dom:
        raise UnknownIdentifier(q)
    if a.vlength.get(q) != 1:
        raise NotLengthOne(f"{q} has vertical length {a.vlength.get(q)}")
    tree = a.witness(q)
    leaves = [tree.square] if isinstance(tree, Leaf) else [t.square for t in tree.children]
    out: List[Token] = []
    for t in leaves:  # top to bottom
        if C.is_globular(t):
            if out and C.is_globular(out[-1]):
                out[-1] = C.vcomp[(out[-1], t)]
            else:
                out.append(t)
        else:
            if not out or not C.is_globular(out[-1]):
                out.append(C.vid[C.cod[t]])
            out.append(t)
    if not C.is_globular(out[-1]):
        out.append(C.vid[C.dom[out[-1]]])
    return out


def transversal_category(C: FinDoubleCategory) -> FinCategory:
    """Vertical morphisms as objects, squares as morphisms, hcomp_sq as composition."""
    return FinCategory(C.vmors, C.squares, C.vsrc, C.vtgt, C.hid_vmor, C.hcomp_sq)


def check_prop_4_4(C: FinDoubleCategory, analysis: Optional[GammaAnalysis] = None) -> ValidationReport:
    """Every square of gamma(C) is globular or a horizontal endomorphism."""
    a = analysis or vertical_filtration(C)
    rep = ValidationReport()
    for q in sorted(a.members):
        if not C.is_globular(q) and not C.is_horizontal_endomorphism(q):
            rep.add("prop-4.4", (q,), "globular or vsrc=vtgt", (C.vsrc[q], C.vtgt[q]))
    return rep


def check_cor_4_5(C: FinDoubleCategory, analysis: Optional[GammaAnalysis] = None) -> ValidationReport:
    """Inside gamma(C) a horizontal composite is globular iff both factors are."""
    a = analysis or vertical_filtration(C)
    m = a.members
    rep = ValidationReport()
    for (p, q), r in sorted(C.hcomp_sq.items()):
        if p in m and q in m:
            both = C.is_globular(p) and C.is_globular(q)
            if C.is_globular(r) != both:
                rep.add("cor-4.5", (p, q), both, C.is_globular(r))
    return rep


def nonglobular_members(C: FinDoubleCategory, analysis: Optional[GammaAnalysis] = None) -> List[Token]:
    a = analysis or vertical_filtration(C)
    return sorted(q for q in a.members if not C.is_globular(q))
