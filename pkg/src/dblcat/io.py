"""The dblcat/1 JSON interchange format.

A document is ``{"format": "dblcat/1", "kind": ..., "body": ...}``.  Canonical
serialization sorts object keys and token arrays, writes composition tables as
sorted ``[second, first, result]`` triples, and ends with a newline, so equal
structures give byte-identical files.
"""
from __future__ import annotations

import json
from typing import Any, Dict, List, Tuple

from .bicat import DecoratedBicategory, Fin2Category
from .core import FinCategory, FinDoubleCategory, MalformedPresentation
from .findim import EquivariantMorphism, F2Algebra, F2Bimodule
from .functors import DoubleFunctor, DoubleNaturalTransformation

FORMAT = "dblcat/1"
KINDS = ("double_category", "two_category", "decorated", "functor", "transformation",
         "findim", "gamma_report")


# --------------------------------------------------------------------------
# encoding


def _triples(table) -> List[List[str]]:
    return sorted([b, a, c] for (b, a), c in table.items())


def _map(m) -> Dict[str, str]:
    return dict(sorted(m.items()))


def category_body(K: FinCategory) -> Dict[str, Any]:
    return {"objects": sorted(K.objects), "morphisms": sorted(K.morphisms),
            "src": _map(K.src), "tgt": _map(K.tgt), "id": _map(K.id), "comp": _triples(K.comp)}


def double_body(C: FinDoubleCategory) -> Dict[str, Any]:
    c0 = C.c0
    return {
        "objects": sorted(C.objects),
        "vertical": {"morphisms": sorted(c0.morphisms), "src": _map(c0.src), "tgt": _map(c0.tgt),
                     "id": _map(c0.id), "comp": _triples(c0.comp)},
        "horizontal": {"morphisms": sorted(C.hmors), "src": _map(C.hsrc), "tgt": _map(C.htgt),
                       "id": _map(C.hid_obj), "comp": _triples(C.hcomp_h)},
        "squares": {
            "cells": sorted(C.squares),
            "boundary": {q: [C.dom[q], C.cod[q], C.vsrc[q], C.vtgt[q]] for q in sorted(C.squares)},
            "vid": _map(C.vid), "vcomp": _triples(C.vcomp),
            "hid": _map(C.hid_vmor), "hcomp": _triples(C.hcomp_sq),
        },
    }


def two_category_body(B: Fin2Category) -> Dict[str, Any]:
    return {"cells0": sorted(B.cells0), "cells1": sorted(B.cells1), "cells2": sorted(B.cells2),
            "src0": _map(B.src0), "tgt0": _map(B.tgt0), "src1": _map(B.src1), "tgt1": _map(B.tgt1),
            "id1": _map(B.id1), "id2": _map(B.id2), "vcomp2": _triples(B.vcomp2),
            "hcomp1": _triples(B.hcomp1), "hcomp2": _triples(B.hcomp2)}


def decorated_body(b: DecoratedBicategory) -> Dict[str, Any]:
    return {"decoration": category_body(b.decoration), "underlying": two_category_body(b.underlying)}


def functor_body(F: DoubleFunctor) -> Dict[str, Any]:
    return {"source": double_body(F.source), "target": double_body(F.target),
            "f_obj": _map(F.f_obj), "f_vmor": _map(F.f_vmor), "f_hmor": _map(F.f_hmor),
            "f_sq": _map(F.f_sq)}


def transformation_body(eta: DoubleNaturalTransformation) -> Dict[str, Any]:
    return {"src_f": functor_body(eta.src_f), "tgt_f": functor_body(eta.tgt_f),
            "eta0": _map(eta.eta0), "eta1": _map(eta.eta1)}


def _bits(v: int, d: int) -> List[int]:
    return [v >> i & 1 for i in range(d)]


def _rows(cols, d: int) -> List[List[int]]:
    """Column images as a d x len(cols) 0/1 matrix, row-major."""
    return [[c >> i & 1 for c in cols] for i in range(d)]


def algebra_body(A: F2Algebra) -> Dict[str, Any]:
    return {"dim": A.dim, "mul": [[_bits(x, A.dim) for x in row] for row in A.mul],
            "unit": _bits(A.unit, A.dim), "name": A.name}


def bimodule_body(M: F2Bimodule) -> Dict[str, Any]:
    return {"left": algebra_body(M.left), "right": algebra_body(M.right), "dim": M.dim,
            "lact": [[_bits(x, M.dim) for x in row] for row in M.lact],
            "ract": [[_bits(x, M.dim) for x in row] for row in M.ract]}


def morphism_body(t: EquivariantMorphism) -> Dict[str, Any]:
    return {"source": bimodule_body(t.source), "target": bimodule_body(t.target),
            "f": _rows(t.f, t.target.left.dim), "phi": _rows(t.phi, t.target.dim),
            "g": _rows(t.g, t.target.right.dim)}


def findim_body(algebras=None, bimodules=None, morphisms=None) -> Dict[str, Any]:
    return {"algebras": {k: algebra_body(v) for k, v in sorted((algebras or {}).items())},
            "bimodules": {k: bimodule_body(v) for k, v in sorted((bimodules or {}).items())},
            "morphisms": {k: morphism_body(v) for k, v in sorted((morphisms or {}).items())}}


def gamma_report_body(analysis, include_source: bool = True, lengths: bool = False,
                      witnesses: bool = False) -> Dict[str, Any]:
    from .gg import to_prefix

    C = analysis.source
    body: Dict[str, Any] = {
        "gamma": double_body(analysis.gamma),
        "levels": [{"n": n, "H": sorted(H), "V": sorted(V)}
                   for n, (H, V) in enumerate(analysis.levels, start=1)],
        "stable_at": analysis.stable_at,
        "globularily_generated": len(analysis.members) == len(C.squares),
    }
    if include_source:
        body["source"] = double_body(C)
    if lengths:
        body["vlength"] = dict(sorted(analysis.vlength.items()))
    if witnesses:
        body["witnesses"] = {q: to_prefix(t) for q, t in analysis.witnesses().items()}
    return body


def dumps(kind: str, body: Dict[str, Any]) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    doc = {"format": FORMAT, "kind": kind, "body": body}
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def dump(obj) -> str:
    """Serialize a library object to a canonical document."""
    if isinstance(obj, FinDoubleCategory):
        return dumps("double_category", double_body(obj))
    if isinstance(obj, Fin2Category):
        return dumps("two_category", two_category_body(obj))
    if isinstance(obj, DecoratedBicategory):
        return dumps("decorated", decorated_body(obj))
    if isinstance(obj, DoubleFunctor):
        return dumps("functor", functor_body(obj))
    if isinstance(obj, DoubleNaturalTransformation):
        return dumps("transformation", transformation_body(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --------------------------------------------------------------------------
# decoding


def _pairs(triples) -> Dict[Tuple[str, str], str]:
    out = {}
    for t in triples:
        if not isinstance(t, list) or len(t) != 3 or not all(isinstance(x, str) for x in t):
            raise MalformedPresentation(f"bad composition entry {t!r}")
        key = (t[0], t[1])
        if key in out and out[key] != t[2]:
            raise MalformedPresentation(f"conflicting entries for {key}")
        out[key] = t[2]
    return out


def _strs(xs) -> List[str]:
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise MalformedPresentation(f"expected a list of tokens, got {xs!r}")
    if len(set(xs)) != len(xs):
        raise MalformedPresentation("duplicate tokens")
    return xs


def _smap(m) -> Dict[str, str]:
    if not isinstance(m, dict) or not all(isinstance(v, str) for v in m.values()):
        raise MalformedPresentation(f"expected a token map, got {m!r}")
    return m


def parse_category(b) -> FinCategory:
    return FinCategory(_strs(b["objects"]), _strs(b["morphisms"]), _smap(b["src"]), _smap(b["tgt"]),
                       _smap(b["id"]), _pairs(b["comp"]))


def parse_double(b) -> FinDoubleCategory:
    v, h, s = b["vertical"], b["horizontal"], b["squares"]
    c0 = FinCategory(_strs(b["objects"]), _strs(v["morphisms"]), _smap(v["src"]), _smap(v["tgt"]),
                     _smap(v["id"]), _pairs(v["comp"]))
    cells = _strs(s["cells"])
    bnd = s["boundary"]
    if not isinstance(bnd, dict):
        raise MalformedPresentation("boundary must be an object")
    for q, x in bnd.items():
        if not isinstance(x, list) or len(x) != 4 or not all(isinstance(y, str) for y in x):
            raise MalformedPresentation(f"bad boundary for {q!r}")
    return FinDoubleCategory(
        c0=c0, hmors=_strs(h["morphisms"]), hsrc=_smap(h["src"]), htgt=_smap(h["tgt"]),
        squares=cells,
        dom={q: x[0] for q, x in bnd.items()}, cod={q: x[1] for q, x in bnd.items()},
        vsrc={q: x[2] for q, x in bnd.items()}, vtgt={q: x[3] for q, x in bnd.items()},
        vid=_smap(s["vid"]), vcomp=_pairs(s["vcomp"]), hid_obj=_smap(h["id"]),
        hid_vmor=_smap(s["hid"]), hcomp_h=_pairs(h["comp"]), hcomp_sq=_pairs(s["hcomp"]))


def parse_two_category(b) -> Fin2Category:
    return Fin2Category(
        cells0=_strs(b["cells0"]), cells1=_strs(b["cells1"]), src0=_smap(b["src0"]), tgt0=_smap(b["tgt0"]),
        cells2=_strs(b["cells2"]), src1=_smap(b["src1"]), tgt1=_smap(b["tgt1"]),
        id1=_smap(b["id1"]), id2=_smap(b["id2"]), vcomp2=_pairs(b["vcomp2"]),
        hcomp1=_pairs(b["hcomp1"]), hcomp2=_pairs(b["hcomp2"]))


def parse_decorated(b) -> DecoratedBicategory:
    return DecoratedBicategory(parse_category(b["decoration"]), parse_two_category(b["underlying"]))


def parse_functor(b) -> DoubleFunctor:
    return DoubleFunctor(parse_double(b["source"]), parse_double(b["target"]), _smap(b["f_obj"]),
                         _smap(b["f_vmor"]), _smap(b["f_hmor"]), _smap(b["f_sq"]))


def parse_transformation(b) -> DoubleNaturalTransformation:
    return DoubleNaturalTransformation(parse_functor(b["src_f"]), parse_functor(b["tgt_f"]),
                                       _smap(b["eta0"]), _smap(b["eta1"]))


def _vec(bits, d: int) -> int:
    if not isinstance(bits, list) or len(bits) != d or any(x not in (0, 1) for x in bits):
        raise MalformedPresentation(f"expected {d} bits, got {bits!r}")
    return sum(x << i for i, x in enumerate(bits))


def _cols(rows, d: int, n: int) -> Tuple[int, ...]:
    if not isinstance(rows, list) or len(rows) != d:
        raise MalformedPresentation(f"expected {d} rows")
    for r in rows:
        if not isinstance(r, list) or len(r) != n or any(x not in (0, 1) for x in r):
            raise MalformedPresentation(f"bad matrix row {r!r}")
    return tuple(sum(rows[i][j] << i for i in range(d)) for j in range(n))


def _int(x) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise MalformedPresentation(f"expected a non-negative integer, got {x!r}")
    return x


def parse_algebra(b) -> F2Algebra:
    d = _int(b["dim"])
    mul = [[_vec(x, d) for x in row] for row in b["mul"]]
    if len(mul) != d or any(len(r) != d for r in mul):
        raise MalformedPresentation("mul table has the wrong shape")
    return F2Algebra(d, mul, _vec(b["unit"], d), b.get("name", ""))


def parse_bimodule(b) -> F2Bimodule:
    A, B, d = parse_algebra(b["left"]), parse_algebra(b["right"]), _int(b["dim"])
    lact = [[_vec(x, d) for x in row] for row in b["lact"]]
    ract = [[_vec(x, d) for x in row] for row in b["ract"]]
    if len(lact) != A.dim or len(ract) != B.dim or any(len(r) != d for r in lact + ract):
        raise MalformedPresentation("action table has the wrong shape")
    return F2Bimodule(A, B, d, lact, ract)


def parse_morphism(b) -> EquivariantMorphism:
    M, N = parse_bimodule(b["source"]), parse_bimodule(b["target"])
    return EquivariantMorphism(M, N, _cols(b["f"], N.left.dim, M.left.dim),
                               _cols(b["phi"], N.dim, M.dim), _cols(b["g"], N.right.dim, M.right.dim))


def parse_findim(b):
    return ({k: parse_algebra(v) for k, v in b.get("algebras", {}).items()},
            {k: parse_bimodule(v) for k, v in b.get("bimodules", {}).items()},
            {k: parse_morphism(v) for k, v in b.get("morphisms", {}).items()})


def parse_gamma_report(b):
    out = {"gamma": parse_double(b["gamma"]), "stable_at": _int(b["stable_at"]),
           "globularily_generated": bool(b["globularily_generated"]),
           "levels": [(frozenset(_strs(l["H"])), frozenset(_strs(l["V"]))) for l in b["levels"]]}
    if "source" in b:
        out["source"] = parse_double(b["source"])
    return out


_PARSERS = {
    "double_category": parse_double, "two_category": parse_two_category,
    "decorated": parse_decorated, "functor": parse_functor,
    "transformation": parse_transformation, "findim": parse_findim,
    "gamma_report": parse_gamma_report,
}


def loads(text: str):
    """Parse a document; returns (kind, object).  Raises MalformedPresentation."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedPresentation(f"not JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise MalformedPresentation("missing dblcat/1 format tag")
    kind = doc.get("kind")
    if kind not in _PARSERS:
        raise MalformedPresentation(f"unknown kind {kind!r}")
    body = doc.get("body")
    if not isinstance(body, dict):
        raise MalformedPresentation("body must be an object")
    try:
        return kind, _PARSERS[kind](body)
    except MalformedPresentation:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        raise MalformedPresentation(f"{kind} body does not match its schema: {exc!r}") from None


def load_path(path: str):
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedPresentation(f"not UTF-8: {exc}") from None
    return loads(text)


def write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
