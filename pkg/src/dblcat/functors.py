"""Strict double functors, double natural transformations, and their gamma restrictions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import (
    DblcatError,
    FinCategory,
    FinDoubleCategory,
    InvalidInput,
    MalformedPresentation,
    Token,
    ValidationReport,
    validate_category,
)
from .gg import GammaAnalysis, vertical_filtration


class ImageEscape(DblcatError):
    """A restricted functor sends a square outside the target's gamma piece."""


class LevelOutOfRange(DblcatError):
    pass


@dataclass(frozen=True, eq=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    obj: Mapping[Token, Token]
    mor: Mapping[Token, Token]

    __hash__ = None  # type: ignore[assignment]


def validate_functor(F: FinFunctor) -> ValidationReport:
    S, T = F.source, F.target
    if set(F.obj) != set(S.objects) or set(F.mor) != set(S.morphisms):
        raise MalformedPresentation("functor maps are not total")
    if not set(F.obj.values()) <= set(T.objects) or not set(F.mor.values()) <= set(T.morphisms):
        raise MalformedPresentation("functor image references undeclared tokens")
    rep = ValidationReport()
    for m in S.morphisms:
        got = (T.src[F.mor[m]], T.tgt[F.mor[m]])
        exp = (F.obj[S.src[m]], F.obj[S.tgt[m]])
        if got != exp:
            rep.add("functor-boundary", (m,), exp, got)
    for x in S.objects:
        if F.mor[S.id[x]] != T.id[F.obj[x]]:
            rep.add("functor-identity", (x,), T.id[F.obj[x]], F.mor[S.id[x]])
    for (g, f), h in sorted(S.comp.items()):
        exp = T.comp.get((F.mor[g], F.mor[f]))
        if F.mor[h] != exp:
            rep.add("functor-composition", (g, f), exp, F.mor[h])
    return rep.sorted()


@dataclass(frozen=True, eq=True)
class DoubleFunctor:
    source: FinDoubleCategory
    target: FinDoubleCategory
    f_obj: Mapping[Token, Token]
    f_vmor: Mapping[Token, Token]
    f_hmor: Mapping[Token, Token]
    f_sq: Mapping[Token, Token]

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        for name in ("f_obj", "f_vmor", "f_hmor", "f_sq"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    def same_maps(self, other: "DoubleFunctor") -> bool:
        return (self.f_obj, self.f_vmor, self.f_hmor, self.f_sq) == (
            other.f_obj, other.f_vmor, other.f_hmor, other.f_sq)


def _structure(F: DoubleFunctor):
    C, D = F.source, F.target
    for name, m, keys, vals in (
        ("f_obj", F.f_obj, C.objects, D.objects),
        ("f_vmor", F.f_vmor, C.vmors, D.vmors),
        ("f_hmor", F.f_hmor, C.hmors, D.hmors),
        ("f_sq", F.f_sq, C.squares, D.squares),
    ):
        if set(m) != set(keys):
            raise MalformedPresentation(f"{name} is not total on the source")
        bad = sorted(v for v in m.values() if v not in set(vals))
        if bad:
            raise MalformedPresentation(f"{name} sends to undeclared {bad[:3]}")


def validate_double_functor(F: DoubleFunctor) -> ValidationReport:
    _structure(F)
    C, D = F.source, F.target
    fo, fv, fh, fs = F.f_obj, F.f_vmor, F.f_hmor, F.f_sq
    rep = ValidationReport()
    c0, d0 = C.c0, D.c0
    for f in C.vmors:
        if (d0.src[fv[f]], d0.tgt[fv[f]]) != (fo[c0.src[f]], fo[c0.tgt[f]]):
            rep.add("F0-boundary", (f,), (fo[c0.src[f]], fo[c0.tgt[f]]), (d0.src[fv[f]], d0.tgt[fv[f]]))
    for x in C.objects:
        if fv[c0.id[x]] != d0.id[fo[x]]:
            rep.add("F0-identity", (x,), d0.id[fo[x]], fv[c0.id[x]])
        if fh[C.hid_obj[x]] != D.hid_obj[fo[x]]:
            rep.add("i-commutation", (x,), D.hid_obj[fo[x]], fh[C.hid_obj[x]])
    for (g, f), h in sorted(c0.comp.items()):
        exp = d0.comp.get((fv[g], fv[f]))
        if fv[h] != exp:
            rep.add("F0-composition", (g, f), exp, fv[h])
    for a in C.hmors:
        exp = (fo[C.hsrc[a]], fo[C.htgt[a]])
        if (D.hsrc[fh[a]], D.htgt[fh[a]]) != exp:
            rep.add("h-boundary", (a,), exp, (D.hsrc[fh[a]], D.htgt[fh[a]]))
        if fs[C.vid[a]] != D.vid[fh[a]]:
            rep.add("F1-identity", (a,), D.vid[fh[a]], fs[C.vid[a]])
    for q in C.squares:
        q2 = fs[q]
        if (D.dom[q2], D.cod[q2]) != (fh[C.dom[q]], fh[C.cod[q]]):
            rep.add("F1-boundary", (q,), (fh[C.dom[q]], fh[C.cod[q]]), (D.dom[q2], D.cod[q2]))
        if D.vsrc[q2] != fv[C.vsrc[q]]:
            rep.add("s-commutation", (q,), fv[C.vsrc[q]], D.vsrc[q2])
        if D.vtgt[q2] != fv[C.vtgt[q]]:
            rep.add("t-commutation", (q,), fv[C.vtgt[q]], D.vtgt[q2])
    for f in C.vmors:
        if fs[C.hid_vmor[f]] != D.hid_vmor[fv[f]]:
            rep.add("i-commutation", (f,), D.hid_vmor[fv[f]], fs[C.hid_vmor[f]])
    for (p, q), r in sorted(C.vcomp.items()):
        exp = D.vcomp.get((fs[p], fs[q]))
        if fs[r] != exp:
            rep.add("F1-composition", (p, q), exp, fs[r])
    for (b, a), ba in sorted(C.hcomp_h.items()):
        exp = D.hcomp_h.get((fh[b], fh[a]))
        if fh[ba] != exp:
            rep.add("hcomp-preservation", (b, a), exp, fh[ba])
    for (p, q), r in sorted(C.hcomp_sq.items()):
        exp = D.hcomp_sq.get((fs[p], fs[q]))
        if fs[r] != exp:
            rep.add("hcomp-preservation", (p, q), exp, fs[r])
    return rep.sorted()


def _require(F: DoubleFunctor):
    rep = validate_double_functor(F)
    if not rep.ok:
        raise InvalidInput("double functor fails validation", rep)


def identity_functor(C: FinDoubleCategory) -> DoubleFunctor:
    return DoubleFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.vmors},
                         {a: a for a in C.hmors}, {q: q for q in C.squares})


def compose(G: DoubleFunctor, F: DoubleFunctor) -> DoubleFunctor:
    """G after F."""
    return DoubleFunctor(
        F.source, G.target,
        {k: G.f_obj[v] for k, v in F.f_obj.items()},
        {k: G.f_vmor[v] for k, v in F.f_vmor.items()},
        {k: G.f_hmor[v] for k, v in F.f_hmor.items()},
        {k: G.f_sq[v] for k, v in F.f_sq.items()})


def inclusion(sub: FinDoubleCategory, C: FinDoubleCategory) -> DoubleFunctor:
    """Inclusion of a complete sub-double category (epsilon when sub = gamma(C))."""
    return DoubleFunctor(sub, C, {x: x for x in sub.objects}, {f: f for f in sub.vmors},
                         {a: a for a in sub.hmors}, {q: q for q in sub.squares})


def epsilon(C: FinDoubleCategory, analysis: Optional[GammaAnalysis] = None) -> DoubleFunctor:
    a = analysis or vertical_filtration(C)
    return inclusion(a.gamma, C)


def _corestrict(F: DoubleFunctor, D: FinDoubleCategory, source=None) -> DoubleFunctor:
    source = source or F.source
    f_sq = {q: F.f_sq[q] for q in source.squares}
    escaped = sorted(q for q, v in f_sq.items() if v not in set(D.squares))
    if escaped:
        raise ImageEscape(f"images of {escaped[:5]} lie outside the gamma piece")
    return DoubleFunctor(source, D, F.f_obj, F.f_vmor, F.f_hmor, f_sq)


def gamma_functor(F: DoubleFunctor, check: bool = True) -> DoubleFunctor:
    """Restriction of F to gamma(source) -> gamma(target)."""
    if check:
        _require(F)
    gs = vertical_filtration(F.source, check=False).gamma
    gt = vertical_filtration(F.target, check=False).gamma
    return _corestrict(F, gt, source=gs)


def _is_gg(a: GammaAnalysis) -> bool:
    return len(a.members) == len(a.source.squares)


def check_filtration_preservation(F: DoubleFunctor) -> ValidationReport:
    """Levelwise containment f_sq(V_n) in V_n and f_sq(H_n) in H_n.

    Applied to the gamma restriction when source or target is not globularily
    generated.
    """
    _require(F)
    a, b = vertical_filtration(F.source, check=False), vertical_filtration(F.target, check=False)
    if not (_is_gg(a) and _is_gg(b)):
        F = gamma_functor(F, check=False)
        a, b = vertical_filtration(F.source, check=False), vertical_filtration(F.target, check=False)
    rep = ValidationReport()
    top = max(a.stable_at, b.stable_at) + 1
    for n in range(1, top + 1):
        for kind, src_set, tgt_set in (("V", a.V(n), b.V(n)), ("H", a.H(n), b.H(n))):
            for q in sorted(src_set):
                if F.f_sq[q] not in tgt_set:
                    rep.add(f"lemma-5.1-{kind}{n}", (q,), f"image in {kind}_{n}", F.f_sq[q])
    return rep


def level_category(analysis: GammaAnalysis, kind: str, n: int) -> FinCategory:
    """V_n (horizontal morphisms and V_n squares under vcomp) or H_n (vertical morphisms, hcomp_sq)."""
    C = analysis.source
    sq = analysis.V(n) if kind == "V" else analysis.H(n)
    if kind == "V":
        return FinCategory(C.hmors, sq, {q: C.dom[q] for q in sq}, {q: C.cod[q] for q in sq},
                           C.vid, {k: v for k, v in C.vcomp.items() if k[0] in sq and k[1] in sq})
    return FinCategory(C.vmors, sq, {q: C.vsrc[q] for q in sq}, {q: C.vtgt[q] for q in sq},
                       C.hid_vmor, {k: v for k, v in C.hcomp_sq.items() if k[0] in sq and k[1] in sq})


def _restrict_level(F: DoubleFunctor, n: int, kind: str) -> FinFunctor:
    rep = check_filtration_preservation(F)
    if not rep.ok:
        raise InvalidInput("functor does not preserve the filtration", rep)
    a, b = vertical_filtration(F.source, check=False), vertical_filtration(F.target, check=False)
    if n < 1 or n > a.stable_at:
        raise LevelOutOfRange(f"level {n} outside 1..{a.stable_at}")
    S, T = level_category(a, kind, n), level_category(b, kind, n)
    objmap = F.f_hmor if kind == "V" else F.f_vmor
    return FinFunctor(S, T, dict(objmap), {q: F.f_sq[q] for q in S.morphisms})


def restrict_vertical_functor(F: DoubleFunctor, n: int) -> FinFunctor:
    return _restrict_level(F, n, "V")


def restrict_horizontal_functor(F: DoubleFunctor, n: int) -> FinFunctor:
    return _restrict_level(F, n, "H")


def level_inclusion(analysis: GammaAnalysis, kind: str, m: int, n: int) -> FinFunctor:
    """The inclusion of the m-th level category in the n-th (m <= n)."""
    S, T = level_category(analysis, kind, m), level_category(analysis, kind, n)
    return FinFunctor(S, T, {x: x for x in S.objects}, {q: q for q in S.morphisms})


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    return FinFunctor(F.source, G.target, {k: G.obj[v] for k, v in F.obj.items()},
                      {k: G.mor[v] for k, v in F.mor.items()})


def transversal_functor(F: DoubleFunctor) -> FinFunctor:
    from .gg import transversal_category

    _require(F)
    return FinFunctor(transversal_category(F.source), transversal_category(F.target),
                      dict(F.f_vmor), dict(F.f_sq))


def check_epsilon_naturality(F: DoubleFunctor, gF: Optional[DoubleFunctor] = None) -> ValidationReport:
    """epsilon_D . gamma(F) = F . epsilon_C, plus both counit-unit triangle identities.

    ``gF`` defaults to gamma_functor(F); passing a table lets callers check a
    given restriction.
    """
    _require(F)
    C, D = F.source, F.target
    ac, ad = vertical_filtration(C, check=False), vertical_filtration(D, check=False)
    gF = gF or gamma_functor(F, check=False)
    rep = ValidationReport()
    lhs = compose(epsilon(D, ad), gF)
    rhs = compose(F, epsilon(C, ac))
    for name in ("f_obj", "f_vmor", "f_hmor", "f_sq"):
        l, r = getattr(lhs, name), getattr(rhs, name)
        for k in sorted(set(l) | set(r)):
            if l.get(k) != r.get(k):
                rep.add("epsilon-naturality", (name, k), r.get(k), l.get(k))
    for X, a in ((C, ac), (D, ad)):
        G = a.gamma
        # gamma(epsilon_X) is the identity of gamma(X)
        ge = gamma_functor(epsilon(X, a), check=False)
        if not (ge.source == G and ge.target == G and ge.same_maps(identity_functor(G))):
            rep.add("triangle-gamma", ("gamma(epsilon)",), "identity", "non-identity")
        # epsilon of a globularily generated category is the identity
        eg = epsilon(G)
        if not (eg.target == G and eg.same_maps(identity_functor(G))):
            rep.add("triangle-inclusion", ("epsilon(gamma)",), "identity", "non-identity")
    return rep


def universal_lift(D: FinDoubleCategory, F: DoubleFunctor) -> DoubleFunctor:
    """The unique factorization of F: D -> C through gamma(C), D globularily generated."""
    ad = vertical_filtration(D)
    if not _is_gg(ad):
        raise InvalidInput("source is not globularily generated")
    _require(F)
    ac = vertical_filtration(F.target, check=False)
    lift = _corestrict(F, ac.gamma)
    back = compose(epsilon(F.target, ac), lift)
    if not back.same_maps(F):
        raise ImageEscape("epsilon after the lift differs from F")
    return lift


# --------------------------------------------------------------------------
# double natural transformations


@dataclass(frozen=True, eq=True)
class DoubleNaturalTransformation:
    src_f: DoubleFunctor
    tgt_f: DoubleFunctor
    eta0: Mapping[Token, Token]
    eta1: Mapping[Token, Token]

    __hash__ = None  # type: ignore[assignment]


def validate_transformation(eta: DoubleNaturalTransformation) -> ValidationReport:
    F, G = eta.src_f, eta.tgt_f
    if F.source != G.source or F.target != G.target:
        raise MalformedPresentation("functors are not parallel")
    C, D = F.source, F.target
    if set(eta.eta0) != set(C.objects) or set(eta.eta1) != set(C.hmors):
        raise MalformedPresentation("components are not total")
    if not set(eta.eta0.values()) <= set(D.vmors) or not set(eta.eta1.values()) <= set(D.squares):
        raise MalformedPresentation("components reference undeclared tokens")
    e0, e1 = eta.eta0, eta.eta1
    d0 = D.c0
    rep = ValidationReport()
    for x in C.objects:
        if (d0.src[e0[x]], d0.tgt[e0[x]]) != (F.f_obj[x], G.f_obj[x]):
            rep.add("eta0-boundary", (x,), (F.f_obj[x], G.f_obj[x]), (d0.src[e0[x]], d0.tgt[e0[x]]))
        if e1[C.hid_obj[x]] != D.hid_vmor[e0[x]]:
            rep.add("eta-i", (x,), D.hid_vmor[e0[x]], e1[C.hid_obj[x]])
    for f in C.vmors:
        x, y = C.c0.src[f], C.c0.tgt[f]
        lhs = d0.comp.get((G.f_vmor[f], e0[x]))
        rhs = d0.comp.get((e0[y], F.f_vmor[f]))
        if lhs != rhs or lhs is None:
            rep.add("eta0-naturality", (f,), rhs, lhs)
    for a in C.hmors:
        q = e1[a]
        exp = (F.f_hmor[a], G.f_hmor[a], e0[C.hsrc[a]], e0[C.htgt[a]])
        got = (D.dom[q], D.cod[q], D.vsrc[q], D.vtgt[q])
        if got != exp:
            rep.add("eta1-boundary", (a,), exp, got)
    for q in C.squares:
        lhs = D.vcomp.get((G.f_sq[q], e1[C.dom[q]]))
        rhs = D.vcomp.get((e1[C.cod[q]], F.f_sq[q]))
        if lhs != rhs or lhs is None:
            rep.add("eta1-naturality", (q,), rhs, lhs)
    for (b, a), ba in sorted(C.hcomp_h.items()):
        exp = D.hcomp_sq.get((e1[b], e1[a]))
        if e1[ba] != exp:
            rep.add("eta-hcomp", (b, a), exp, e1[ba])
    return rep.sorted()


def identity_transformation(F: DoubleFunctor) -> DoubleNaturalTransformation:
    D = F.target
    return DoubleNaturalTransformation(
        F, F, {x: D.c0.id[F.f_obj[x]] for x in F.source.objects},
        {a: D.vid[F.f_hmor[a]] for a in F.source.hmors})


def vertical_compose_transformations(beta: DoubleNaturalTransformation,
                                     alpha: DoubleNaturalTransformation) -> DoubleNaturalTransformation:
    """beta after alpha, for alpha: F => G and beta: G => H."""
    D = alpha.src_f.target
    return DoubleNaturalTransformation(
        alpha.src_f, beta.tgt_f,
        {x: D.c0.comp[(beta.eta0[x], alpha.eta0[x])] for x in alpha.eta0},
        {a: D.vcomp[(beta.eta1[a], alpha.eta1[a])] for a in alpha.eta1})


def horizontal_compose_transformations(beta: DoubleNaturalTransformation,
                                       alpha: DoubleNaturalTransformation) -> DoubleNaturalTransformation:
    """beta * alpha for alpha: F => G (C -> D) and beta: F' => G' (D -> E)."""
    E = beta.src_f.target
    F2, G = beta.src_f, alpha.tgt_f
    return DoubleNaturalTransformation(
        compose(beta.src_f, alpha.src_f), compose(beta.tgt_f, alpha.tgt_f),
        {x: E.c0.comp[(beta.eta0[G.f_obj[x]], F2.f_vmor[alpha.eta0[x]])] for x in alpha.eta0},
        {a: E.vcomp[(beta.eta1[G.f_hmor[a]], F2.f_sq[alpha.eta1[a]])] for a in alpha.eta1})


def is_gg_transformation(eta: DoubleNaturalTransformation) -> bool:
    rep = validate_transformation(eta)
    if not rep.ok:
        raise InvalidInput("transformation fails validation", rep)
    members = vertical_filtration(eta.src_f.target, check=False).members
    return all(q in members for q in eta.eta1.values())


def validate_category_functor_pair(F: FinFunctor) -> ValidationReport:
    rep = validate_category(F.source)
    rep.extend(validate_category(F.target))
    rep.extend(validate_functor(F))
    return rep
