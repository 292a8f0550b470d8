"""Strict 2-categories, decorated bicategories and the horizontalization constructions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Tuple

from .core import (
    FinCategory,
    FinDoubleCategory,
    InvalidInput,
    MalformedPresentation,
    Token,
    ValidationReport,
    _sorted,
    discrete_category,
    validate_category,
    validate_double_category,
)


@dataclass(frozen=True, eq=True)
class Fin2Category:
    cells0: Tuple[Token, ...]
    cells1: Tuple[Token, ...]
    src0: Mapping[Token, Token]
    tgt0: Mapping[Token, Token]
    cells2: Tuple[Token, ...]
    src1: Mapping[Token, Token]
    tgt1: Mapping[Token, Token]
    id1: Mapping[Token, Token]
    id2: Mapping[Token, Token]
    vcomp2: Mapping[Tuple[Token, Token], Token]
    hcomp1: Mapping[Tuple[Token, Token], Token]
    hcomp2: Mapping[Tuple[Token, Token], Token]

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        for name in ("cells0", "cells1", "cells2"):
            object.__setattr__(self, name, _sorted(getattr(self, name)))
        for name in ("src0", "tgt0", "src1", "tgt1", "id1", "id2", "vcomp2", "hcomp1", "hcomp2"):
            object.__setattr__(self, name, dict(getattr(self, name)))

    def underlying_category(self) -> FinCategory:
        """0-cells and 1-cells under hcomp1."""
        return FinCategory(self.cells0, self.cells1, self.src0, self.tgt0, self.id1, self.hcomp1)


@dataclass(frozen=True, eq=True)
class DecoratedBicategory:
    decoration: FinCategory
    underlying: Fin2Category

    __hash__ = None  # type: ignore[assignment]


def _vertical_id(x: Token) -> Token:
    return "id_" + x


def _trivial_unchecked(B: Fin2Category) -> FinDoubleCategory:
    c0 = discrete_category(B.cells0)
    vs = {a: _vertical_id(B.src0[B.src1[a]]) for a in B.cells2}
    vt = {a: _vertical_id(B.tgt0[B.src1[a]]) for a in B.cells2}
    return FinDoubleCategory(
        c0=c0, hmors=B.cells1, hsrc=B.src0, htgt=B.tgt0,
        squares=B.cells2, dom=B.src1, cod=B.tgt1, vsrc=vs, vtgt=vt,
        vid=B.id2, vcomp=B.vcomp2,
        hid_obj=B.id1,
        hid_vmor={_vertical_id(x): B.id2[B.id1[x]] for x in B.cells0},
        hcomp_h=B.hcomp1, hcomp_sq=B.hcomp2,
    )


def validate_2category(B: Fin2Category) -> ValidationReport:
    """Validate a strict 2-category.

    The strict 2-category axioms are exactly the double category axioms of the
    trivial double category on B, so the check is delegated there.
    """
    for name, m, keys in (("src0", B.src0, B.cells1), ("tgt0", B.tgt0, B.cells1),
                          ("src1", B.src1, B.cells2), ("tgt1", B.tgt1, B.cells2)):
        if set(m) != set(keys):
            raise MalformedPresentation(f"{name} is not total")
    for name, m, vals in (("src0", B.src0, B.cells0), ("tgt0", B.tgt0, B.cells0),
                          ("src1", B.src1, B.cells1), ("tgt1", B.tgt1, B.cells1)):
        if not set(m.values()) <= set(vals):
            raise MalformedPresentation(f"{name} references an undeclared cell")
    rep = ValidationReport()
    for a in B.cells2:
        s, t = B.src1[a], B.tgt1[a]
        if (B.src0[s], B.tgt0[s]) != (B.src0[t], B.tgt0[t]):
            rep.add("2cell-parallel", (a,), (B.src0[s], B.tgt0[s]), (B.src0[t], B.tgt0[t]))
    if not rep.ok:
        return rep.sorted()
    return validate_double_category(_trivial_unchecked(B))


def _require_valid(C: FinDoubleCategory):
    rep = validate_double_category(C)
    if not rep.ok:
        raise InvalidInput("double category fails validation", rep)


def trivial_double(B: Fin2Category) -> FinDoubleCategory:
    rep = validate_2category(B)
    if not rep.ok:
        raise InvalidInput("2-category fails validation", rep)
    return _trivial_unchecked(B)


def horizontalization(C: FinDoubleCategory, check: bool = True) -> Fin2Category:
    """Objects, horizontal morphisms and globular squares of C."""
    if check:
        _require_valid(C)
    glob = set(C.globular_squares())
    return Fin2Category(
        cells0=C.objects, cells1=C.hmors, src0=C.hsrc, tgt0=C.htgt,
        cells2=glob,
        src1={q: C.dom[q] for q in glob}, tgt1={q: C.cod[q] for q in glob},
        id1=C.hid_obj, id2=C.vid,
        vcomp2={k: v for k, v in C.vcomp.items() if k[0] in glob and k[1] in glob},
        hcomp1=C.hcomp_h,
        hcomp2={k: v for k, v in C.hcomp_sq.items() if k[0] in glob and k[1] in glob},
    )


def decorated_horizontalization(C: FinDoubleCategory, check: bool = True) -> DecoratedBicategory:
    return DecoratedBicategory(C.c0, horizontalization(C, check=check))


def discretely_decorated(B: Fin2Category) -> DecoratedBicategory:
    return DecoratedBicategory(discrete_category(B.cells0), B)


def equal_decorated(b1: DecoratedBicategory, b2: DecoratedBicategory) -> bool:
    return b1 == b2


def validate_decorated(b: DecoratedBicategory) -> ValidationReport:
    rep = validate_category(b.decoration)
    rep.extend(validate_2category(b.underlying))
    if set(b.decoration.objects) != set(b.underlying.cells0):
        rep.add("decoration-objects", (), b.underlying.cells0, b.decoration.objects)
    return rep.sorted()


def is_internalization(C: FinDoubleCategory, b: DecoratedBicategory) -> bool:
    _require_valid(C)
    rep = validate_decorated(b)
    if not rep.ok:
        raise InvalidInput("decorated bicategory fails validation", rep)
    return equal_decorated(decorated_horizontalization(C, check=False), b)
