"""Finite strict double categories presented by token tables, and the axiom validator.

Every cell is an identifier token; equality of cells is equality of tokens.
Composition tables are dicts keyed by ``(second, first)`` pairs, i.e.
``comp[(g, f)]`` is ``g . f``.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, List, Mapping, Optional, Tuple

from . import _kernels

Token = str

_TOKEN_RE = re.compile(r"^[^\s:,]+$")


class DblcatError(Exception):
    pass


class MalformedPresentation(DblcatError):
    """A table references an undeclared token, or a composable entry is missing."""


class UnknownIdentifier(DblcatError, KeyError):
    pass


class InvalidInput(DblcatError):
    """An operation was handed a presentation that fails validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _sorted(tokens: Iterable[Token]) -> Tuple[Token, ...]:
    return tuple(sorted(set(tokens)))


@dataclass(frozen=True)
class Violation:
    axiom: str
    ids: Tuple[Token, ...]
    expected: object
    found: object

    def line(self) -> str:
        return "\t".join(
            [self.axiom, ",".join(self.ids), _fmt(self.expected), _fmt(self.found)])


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (tuple, list)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom, ids, expected, found):
        self.violations.append(Violation(axiom, tuple(ids), expected, found))

    def extend(self, other: "ValidationReport"):
        self.violations.extend(other.violations)

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}

    def sorted(self) -> "ValidationReport":
        uniq = sorted(set(self.violations), key=lambda v: (v.axiom, v.ids, str(v.expected), str(v.found)))
        return ValidationReport(uniq)

    def lines(self) -> List[str]:
        return [v.line() for v in self.sorted().violations]

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=True)
class FinCategory:
    objects: Tuple[Token, ...]
    morphisms: Tuple[Token, ...]
    src: Mapping[Token, Token]
    tgt: Mapping[Token, Token]
    id: Mapping[Token, Token]
    comp: Mapping[Tuple[Token, Token], Token]

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "objects", _sorted(self.objects))
        object.__setattr__(self, "morphisms", _sorted(self.morphisms))
        for name in ("src", "tgt", "id", "comp"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    def hom(self, x: Token, y: Token) -> List[Token]:
        return [m for m in self.morphisms if self.src[m] == x and self.tgt[m] == y]

    def composable_pairs(self):
        """All (g, f) with src(g) = tgt(f), in token order."""
        by_src = defaultdict(list)
        for m in self.morphisms:
            by_src[self.src[m]].append(m)
        for f in self.morphisms:
            for g in by_src[self.tgt[f]]:
                yield g, f


@dataclass(frozen=True, eq=True)
class FinDoubleCategory:
    """A strict double category.

    ``c0`` is the category of objects and vertical morphisms.  Squares run from
    horizontal morphism ``dom[q]`` (top) to ``cod[q]`` (bottom); their left and
    right vertical sides are ``vsrc[q]`` and ``vtgt[q]``.
    """

    c0: FinCategory
    hmors: Tuple[Token, ...]
    hsrc: Mapping[Token, Token]
    htgt: Mapping[Token, Token]
    squares: Tuple[Token, ...]
    dom: Mapping[Token, Token]
    cod: Mapping[Token, Token]
    vsrc: Mapping[Token, Token]
    vtgt: Mapping[Token, Token]
    vid: Mapping[Token, Token]
    vcomp: Mapping[Tuple[Token, Token], Token]
    hid_obj: Mapping[Token, Token]
    hid_vmor: Mapping[Token, Token]
    hcomp_h: Mapping[Tuple[Token, Token], Token]
    hcomp_sq: Mapping[Tuple[Token, Token], Token]

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "hmors", _sorted(self.hmors))
        object.__setattr__(self, "squares", _sorted(self.squares))
        for name in ("hsrc", "htgt", "dom", "cod", "vsrc", "vtgt", "vid", "vcomp",
                     "hid_obj", "hid_vmor", "hcomp_h", "hcomp_sq"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    @property
    def objects(self) -> Tuple[Token, ...]:
        return self.c0.objects

    @property
    def vmors(self) -> Tuple[Token, ...]:
        return self.c0.morphisms

    @property
    def c1(self) -> FinCategory:
        """The category of morphisms: horizontal morphisms and squares under vcomp."""
        return FinCategory(self.hmors, self.squares, self.dom, self.cod, self.vid, self.vcomp)

    def boundary(self, q: Token) -> Tuple[Token, Token, Token, Token]:
        if q not in self.dom:
            raise UnknownIdentifier(q)
        return self.dom[q], self.cod[q], self.vsrc[q], self.vtgt[q]

    def is_globular(self, q: Token) -> bool:
        d, _, s, t = self.boundary(q)
        ids = self.c0.id
        return s == ids[self.hsrc[d]] and t == ids[self.htgt[d]]

    def is_horizontal_endomorphism(self, q: Token) -> bool:
        _, _, s, t = self.boundary(q)
        return s == t

    def globular_squares(self) -> Tuple[Token, ...]:
        return tuple(q for q in self.squares if self.is_globular(q))

    def restrict(self, squares: Iterable[Token]) -> "FinDoubleCategory":
        """The complete sub-double category on the given squares (assumed closed)."""
        keep = set(squares)
        return FinDoubleCategory(
            c0=self.c0, hmors=self.hmors, hsrc=self.hsrc, htgt=self.htgt,
            squares=keep,
            dom={q: self.dom[q] for q in keep}, cod={q: self.cod[q] for q in keep},
            vsrc={q: self.vsrc[q] for q in keep}, vtgt={q: self.vtgt[q] for q in keep},
            vid=self.vid,
            vcomp={k: v for k, v in self.vcomp.items() if k[0] in keep and k[1] in keep},
            hid_obj=self.hid_obj, hid_vmor=self.hid_vmor, hcomp_h=self.hcomp_h,
            hcomp_sq={k: v for k, v in self.hcomp_sq.items() if k[0] in keep and k[1] in keep},
        )


def boundary(C: FinDoubleCategory, q: Token):
    return C.boundary(q)


def is_globular(C: FinDoubleCategory, q: Token) -> bool:
    return C.is_globular(q)


def is_horizontal_endomorphism(C: FinDoubleCategory, q: Token) -> bool:
    return C.is_horizontal_endomorphism(q)


# --------------------------------------------------------------------------
# structural (encoding) checks


def _check_tokens(sort: str, tokens: Iterable[Token]):
    for t in tokens:
        if not isinstance(t, str) or not _TOKEN_RE.match(t):
            raise MalformedPresentation(f"bad {sort} token {t!r}")


def _check_map(name: str, m: Mapping, keys, values: set):
    keys = set(keys)
    if set(m) != keys:
        missing = sorted(keys - set(m))
        extra = sorted(set(m) - keys, key=str)
        raise MalformedPresentation(f"{name}: missing {missing[:5]} extra {extra[:5]}")
    for k, v in m.items():
        if v not in values:
            raise MalformedPresentation(f"{name}[{k}] = {v!r} is undeclared")


def _check_partial(name: str, table: Mapping, left: set, right: set, values: set,
                   composable) -> List[Tuple[Token, Token]]:
    """Raise on undeclared tokens or a missing composable entry.

    Returns entries defined on non-composable pairs; callers report those as
    violations.
    """
    for (b, a), v in table.items():
        if b not in left or a not in right or v not in values:
            raise MalformedPresentation(f"{name}[{b},{a}] = {v!r} references an undeclared token")
    for pair in composable:
        if pair not in table:
            raise MalformedPresentation(f"{name}: composable pair {pair} has no entry")
    return table


def _category_structure(K: FinCategory, name: str):
    _check_tokens(f"{name} object", K.objects)
    _check_tokens(f"{name} morphism", K.morphisms)
    obs, mors = set(K.objects), set(K.morphisms)
    _check_map(f"{name}.src", K.src, mors, obs)
    _check_map(f"{name}.tgt", K.tgt, mors, obs)
    _check_map(f"{name}.id", K.id, obs, mors)
    _check_partial(f"{name}.comp", K.comp, mors, mors, mors, K.composable_pairs())


_CAT_NAMES = {
    "": ("id-boundary", "comp-boundary", "comp-domain", "unit-law", "associativity"),
    "C0": ("C0-id", "C0-boundary", "C0-domain", "C0-unit", "C0-assoc"),
    "C1": ("C1-id", "C1-boundary", "C1-domain", "C1-unit", "C1-assoc"),
}


def _category_violations(K: FinCategory, prefix: str, rep: ValidationReport):
    n_id, n_bd, n_dom, n_unit, n_assoc = _CAT_NAMES[prefix]
    src, tgt, ident, comp = K.src, K.tgt, K.id, K.comp
    for x in K.objects:
        i = ident[x]
        if src[i] != x or tgt[i] != x:
            rep.add(n_id, (x, i), (x, x), (src[i], tgt[i]))
    for (g, f), h in sorted(comp.items()):
        if src[g] != tgt[f]:
            rep.add(n_dom, (g, f), None, h)
            continue
        if src[h] != src[f] or tgt[h] != tgt[g]:
            rep.add(n_bd, (g, f), (src[f], tgt[g]), (src[h], tgt[h]))
    for f in K.morphisms:
        left = comp.get((ident[tgt[f]], f))
        if left != f:
            rep.add(n_unit, (ident[tgt[f]], f), f, left)
        right = comp.get((f, ident[src[f]]))
        if right != f:
            rep.add(n_unit, (f, ident[src[f]]), f, right)
    _assoc(K.morphisms, K.objects, src, tgt, comp, n_assoc, rep)


def _assoc(cells, keys, s, t, table, name, rep):
    """Report (h.g).f != h.(g.f) over composable triples, via the kernel."""
    cells = list(cells)
    ix = {c: i for i, c in enumerate(cells)}
    kx = {k: i for i, k in enumerate(keys)}
    n = len(cells)
    found = _kernels.assoc_violations(
        n, _kernels.dense(table, ix, n), [kx[s[c]] for c in cells], [kx[t[c]] for c in cells], len(keys))
    tok = lambda i: cells[i] if i >= 0 else None
    for h, g, f, lhs, rhs in found:
        rep.add(name, (cells[h], cells[g], cells[f]), tok(lhs), tok(rhs))


def validate_category(K: FinCategory) -> ValidationReport:
    _category_structure(K, "category")
    rep = ValidationReport()
    _category_violations(K, "", rep)
    return rep.sorted()


def _double_structure(C: FinDoubleCategory):
    _category_structure(C.c0, "C0")
    _check_tokens("horizontal morphism", C.hmors)
    _check_tokens("square", C.squares)
    obs, vm, hm, sq = set(C.objects), set(C.vmors), set(C.hmors), set(C.squares)
    _check_map("hsrc", C.hsrc, hm, obs)
    _check_map("htgt", C.htgt, hm, obs)
    for name in ("dom", "cod"):
        _check_map(name, getattr(C, name), sq, hm)
    for name in ("vsrc", "vtgt"):
        _check_map(name, getattr(C, name), sq, vm)
    _check_map("vid", C.vid, hm, sq)
    _check_map("hid_obj", C.hid_obj, obs, hm)
    _check_map("hid_vmor", C.hid_vmor, vm, sq)
    _check_partial("vcomp", C.vcomp, sq, sq, sq, C.c1.composable_pairs())
    _check_partial("hcomp_h", C.hcomp_h, hm, hm, hm, _h_composable(C))
    _check_partial("hcomp_sq", C.hcomp_sq, sq, sq, sq, _sq_h_composable(C))


def _h_composable(C: FinDoubleCategory):
    by_src = defaultdict(list)
    for b in C.hmors:
        by_src[C.hsrc[b]].append(b)
    for a in C.hmors:
        for b in by_src[C.htgt[a]]:
            yield b, a


def _sq_h_composable(C: FinDoubleCategory):
    by_vsrc = defaultdict(list)
    for q in C.squares:
        by_vsrc[C.vsrc[q]].append(q)
    for p in C.squares:
        for q in by_vsrc[C.vtgt[p]]:
            yield q, p


def validate_double_category(C: FinDoubleCategory) -> ValidationReport:
    """Check every strict double category axiom; raise MalformedPresentation on encoding errors."""
    _double_structure(C)
    rep = ValidationReport()
    _category_violations(C.c0, "C0", rep)
    _category_violations(C.c1, "C1", rep)

    c0 = C.c0
    ident, vcomp0 = c0.id, c0.comp
    hsrc, htgt = C.hsrc, C.htgt
    dom, cod, vsrc, vtgt = C.dom, C.cod, C.vsrc, C.vtgt
    vcomp, hh, hs = C.vcomp, C.hcomp_h, C.hcomp_sq

    # s and t: boundaries of squares and functoriality
    for q in C.squares:
        d, c, s, t = dom[q], cod[q], vsrc[q], vtgt[q]
        if (c0.src[s], c0.tgt[s]) != (hsrc[d], hsrc[c]):
            rep.add("s-boundary", (q,), (hsrc[d], hsrc[c]), (c0.src[s], c0.tgt[s]))
        if (c0.src[t], c0.tgt[t]) != (htgt[d], htgt[c]):
            rep.add("t-boundary", (q,), (htgt[d], htgt[c]), (c0.src[t], c0.tgt[t]))
    for a in C.hmors:
        q = C.vid[a]
        if vsrc[q] != ident[hsrc[a]]:
            rep.add("s-functoriality", (a, q), ident[hsrc[a]], vsrc[q])
        if vtgt[q] != ident[htgt[a]]:
            rep.add("t-functoriality", (a, q), ident[htgt[a]], vtgt[q])
    for (p, q), r in sorted(vcomp.items()):
        if dom[p] != cod[q]:
            continue
        exp = vcomp0.get((vsrc[p], vsrc[q]))
        if vsrc[r] != exp:
            rep.add("s-functoriality", (p, q), exp, vsrc[r])
        exp = vcomp0.get((vtgt[p], vtgt[q]))
        if vtgt[r] != exp:
            rep.add("t-functoriality", (p, q), exp, vtgt[r])

    # i: horizontal identities
    for x in C.objects:
        h = C.hid_obj[x]
        if hsrc[h] != x or htgt[h] != x:
            rep.add("i-boundary", (x, h), (x, x), (hsrc[h], htgt[h]))
        if C.hid_vmor[ident[x]] != C.vid[h]:
            rep.add("i-functoriality", (ident[x],), C.vid[h], C.hid_vmor[ident[x]])
    for f in C.vmors:
        q = C.hid_vmor[f]
        exp = (C.hid_obj[c0.src[f]], C.hid_obj[c0.tgt[f]], f, f)
        got = (dom[q], cod[q], vsrc[q], vtgt[q])
        if got != exp:
            rep.add("i-boundary", (f, q), exp, got)
    for (g, f), gf in sorted(vcomp0.items()):
        if c0.src[g] != c0.tgt[f]:
            continue
        exp = vcomp.get((C.hid_vmor[g], C.hid_vmor[f]))
        if C.hid_vmor[gf] != exp:
            rep.add("i-functoriality", (g, f), exp, C.hid_vmor[gf])

    # horizontal composition of horizontal morphisms
    for (b, a), ba in sorted(hh.items()):
        if hsrc[b] != htgt[a]:
            rep.add("hcomp-domain", (b, a), None, ba)
            continue
        if hsrc[ba] != hsrc[a] or htgt[ba] != htgt[b]:
            rep.add("hcomp-boundary", (b, a), (hsrc[a], htgt[b]), (hsrc[ba], htgt[ba]))
        exp = C.vid.get(ba)
        got = hs.get((C.vid[b], C.vid[a]))
        if got != exp:
            rep.add("hcomp-functoriality", (b, a), exp, got)
    for a in C.hmors:
        got = hh.get((a, C.hid_obj[hsrc[a]]))
        if got != a:
            rep.add("h-unit", (a, C.hid_obj[hsrc[a]]), a, got)
        got = hh.get((C.hid_obj[htgt[a]], a))
        if got != a:
            rep.add("h-unit", (C.hid_obj[htgt[a]], a), a, got)

    # horizontal composition of squares
    for (p, q), r in sorted(hs.items()):
        if vsrc[p] != vtgt[q]:
            rep.add("hsq-domain", (p, q), None, r)
            continue
        exp = (hh.get((dom[p], dom[q])), hh.get((cod[p], cod[q])), vsrc[q], vtgt[p])
        got = (dom[r], cod[r], vsrc[r], vtgt[r])
        if got != exp:
            rep.add("hcomp-boundary", (p, q), exp, got)
    for q in C.squares:
        e = C.hid_vmor[vsrc[q]]
        got = hs.get((q, e))
        if got != q:
            rep.add("hsq-unit", (q, e), q, got)
        e = C.hid_vmor[vtgt[q]]
        got = hs.get((e, q))
        if got != q:
            rep.add("hsq-unit", (e, q), q, got)

    _h_assoc(C, rep)
    _interchange(C, rep)
    return rep.sorted()


def _h_assoc(C: FinDoubleCategory, rep: ValidationReport):
    _assoc(C.hmors, C.objects, C.hsrc, C.htgt, C.hcomp_h, "h-assoc", rep)
    _assoc(C.squares, C.vmors, C.vsrc, C.vtgt, C.hcomp_sq, "hsq-assoc", rep)


def _interchange(C: FinDoubleCategory, rep: ValidationReport):
    sq = list(C.squares)
    ix = {q: i for i, q in enumerate(sq)}
    hx = {a: i for i, a in enumerate(C.hmors)}
    vx = {f: i for i, f in enumerate(C.vmors)}
    n = len(sq)
    found = _kernels.interchange_violations(
        n, _kernels.dense(C.hcomp_sq, ix, n), _kernels.dense(C.vcomp, ix, n),
        [hx[C.dom[q]] for q in sq], [hx[C.cod[q]] for q in sq],
        [vx[C.vsrc[q]] for q in sq], [vx[C.vtgt[q]] for q in sq], len(hx))
    tok = lambda i: sq[i] if i >= 0 else None
    for psi2, phi2, psi, phi, lhs, rhs in found:
        rep.add("interchange", (sq[psi2], sq[phi2], sq[psi], sq[phi]), tok(lhs), tok(rhs))


def discrete_category(objects: Iterable[Token], id_prefix: str = "id_") -> FinCategory:
    obs = _sorted(objects)
    ids = {x: id_prefix + x for x in obs}
    return FinCategory(obs, ids.values(), {m: x for x, m in ids.items()},
                       {m: x for x, m in ids.items()}, ids,
                       {(m, m): m for m in ids.values()})


def composite(table: Mapping, chain: List[Token]) -> Optional[Token]:
    """Fold a composable chain right to left: chain = [g_k, ..., g_1]."""
    acc = chain[-1]
    for g in reversed(chain[:-1]):
        acc = table.get((g, acc))
        if acc is None:
            return None
    return acc
