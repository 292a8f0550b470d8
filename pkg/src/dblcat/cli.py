"""``dblcat`` command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 when the input is
malformed or unreadable.  Reports are tab-separated, one record per line.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import io
from .bicat import (
    decorated_horizontalization,
    trivial_double,
    validate_2category,
    validate_decorated,
)
from .core import DblcatError, FinDoubleCategory, MalformedPresentation, ValidationReport, composite, validate_double_category
from .findim import is_equivariant
from .functors import (
    DoubleFunctor,
    ImageEscape,
    check_epsilon_naturality,
    check_filtration_preservation,
    epsilon,
    identity_functor,
    universal_lift,
    validate_double_functor,
    validate_transformation,
)
from .gen import gen_commuting_squares, gen_poset_category, gen_product, gen_quintet, poset_from_name
from .gg import (
    check_cor_4_5,
    check_prop_4_4,
    length_one_decomposition,
    nonglobular_members,
    vertical_filtration,
)

OK, FAILED, MALFORMED = 0, 1, 2
SUITES = ("axioms", "prop44", "cor45", "lemma46", "lemma51", "prop36")


class _Usage(Exception):
    pass


def _out(text: str):
    sys.stdout.write(text)


def _print_report(rep: ValidationReport):
    for line in rep.lines():
        _out(line + "\n")


def _emit(text: str, path: Optional[str]):
    if path:
        io.write_text(path, text)
    else:
        _out(text)


def _validate_any(kind, obj) -> ValidationReport:
    if kind == "double_category":
        return validate_double_category(obj)
    if kind == "two_category":
        return validate_2category(obj)
    if kind == "decorated":
        return validate_decorated(obj)
    if kind == "functor":
        rep = validate_double_category(obj.source)
        rep.extend(validate_double_category(obj.target))
        if rep.ok:
            rep.extend(validate_double_functor(obj))
        return rep.sorted()
    if kind == "transformation":
        rep = ValidationReport()
        for F in (obj.src_f, obj.tgt_f):
            rep.extend(_validate_any("functor", F))
        if rep.ok:
            rep.extend(validate_transformation(obj))
        return rep.sorted()
    if kind == "findim":
        algebras, bimodules, morphisms = obj
        rep = ValidationReport()
        for k, A in sorted(algebras.items()):
            if not A.is_valid():
                rep.add("algebra-axioms", (k,), "associative unital", "fails")
        for k, M in sorted(bimodules.items()):
            if not (M.left.is_valid() and M.right.is_valid() and M.is_valid()):
                rep.add("bimodule-axioms", (k,), "bimodule", "fails")
        for k, t in sorted(morphisms.items()):
            if not is_equivariant(t):
                rep.add("equivariance", (k,), "equivariant", "fails")
        return rep
    if kind == "gamma_report":
        rep = validate_double_category(obj["gamma"])
        if "source" in obj:
            rep.extend(validate_double_category(obj["source"]))
        return rep.sorted()
    raise MalformedPresentation(f"unsupported kind {kind}")


def _double_from(kind, obj) -> FinDoubleCategory:
    """The double category a command should act on."""
    if kind == "double_category":
        C = obj
    elif kind == "two_category":
        return trivial_double(obj)
    elif kind == "gamma_report":
        C = obj["gamma"]
    else:
        raise _Usage(f"expected a double category document, got {kind}")
    rep = validate_double_category(C)
    if not rep.ok:
        _print_report(rep)
        raise _Usage("input fails validation")
    return C


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    kind, obj = io.load_path(args.path)
    rep = _validate_any(kind, obj)
    _print_report(rep)
    return OK if rep.ok else FAILED


def cmd_gamma(args) -> int:
    kind, obj = io.load_path(args.path)
    C = _double_from(kind, obj)
    a = vertical_filtration(C, check=False)
    gg = len(a.members) == len(C.squares)
    _out(f"gg={'true' if gg else 'false'} squares={len(C.squares)} gamma={len(a.members)} "
         f"stable_at={a.stable_at}\n")
    if args.out:
        body = io.gamma_report_body(a, lengths=args.lengths, witnesses=args.witnesses)
        io.write_text(args.out, io.dumps("gamma_report", body))
    else:
        if args.lengths:
            for q, n in sorted(a.vlength.items()):
                _out(f"vlength\t{q}\t{n}\n")
        if args.witnesses:
            from .gg import to_prefix
            for q, t in a.witnesses().items():
                _out(f"witness\t{q}\t{to_prefix(t)}\n")
    return OK


def _suite_double(name: str, C: FinDoubleCategory, a) -> ValidationReport:
    """Run one suite on a validated double category, printing its summary line."""
    if name == "axioms":
        rep = validate_double_category(C)
        detail = f"squares={len(C.squares)}"
    elif name == "prop44":
        rep = check_prop_4_4(C, a)
        ng = nonglobular_members(C, a)
        detail = f"nonglobular={len(ng)}" + ("\t" + ",".join(ng) if ng else "")
    elif name == "cor45":
        rep = check_cor_4_5(C, a)
        detail = f"gamma={len(a.members)}"
    elif name == "lemma46":
        rep = ValidationReport()
        v1 = sorted(a.V(1))
        for q in v1:
            seq = length_one_decomposition(C, q, a)
            if composite(C.vcomp, seq) != q:
                rep.add("lemma-4.6-replay", (q,), q, composite(C.vcomp, seq))
            for i, t in enumerate(seq):
                want_glob = i % 2 == 0
                ok = C.is_globular(t) if want_glob else C.hid_vmor.get(C.vsrc[t]) == t
                if not ok:
                    rep.add("lemma-4.6-shape", (q, t), "globular" if want_glob else "horizontal identity", t)
        detail = f"v1={len(v1)}"
    elif name == "lemma51":
        rep = ValidationReport()
        for F in (identity_functor(C), epsilon(C, a)):
            rep.extend(check_filtration_preservation(F))
        detail = "functors=identity,epsilon"
    elif name == "prop36":
        rep = ValidationReport()
        for F in (identity_functor(C), epsilon(C, a)):
            rep.extend(check_epsilon_naturality(F))
        detail = "functors=identity,epsilon"
    else:
        raise _Usage(f"unknown suite {name}")
    _out(f"{name}\t{'pass' if rep.ok else 'fail'}\t{detail}\n")
    return rep


def _suite_functor(name: str, F: DoubleFunctor) -> ValidationReport:
    if name == "axioms":
        rep = validate_double_functor(F)
    elif name == "lemma51":
        rep = check_filtration_preservation(F)
    elif name == "prop36":
        rep = check_epsilon_naturality(F)
    else:
        rep = ValidationReport()
        for side, C in (("source", F.source), ("target", F.target)):
            _out(f"# {side}\n")
            rep.extend(_suite_double(name, C, vertical_filtration(C, check=False)))
        return rep
    _out(f"{name}\t{'pass' if rep.ok else 'fail'}\tfunctor\n")
    return rep


def cmd_check(args) -> int:
    kind, obj = io.load_path(args.path)
    suites = SUITES if args.suite == "all" else (args.suite,)
    failed = ValidationReport()
    if kind == "functor":
        rep = _validate_any(kind, obj)
        if not rep.ok:
            _print_report(rep)
            return MALFORMED
        for s in suites:
            failed.extend(_suite_functor(s, obj))
    else:
        C = _double_from(kind, obj)
        a = vertical_filtration(C, check=False)
        for s in suites:
            failed.extend(_suite_double(s, C, a))
    _print_report(failed)
    return OK if failed.ok else FAILED


def cmd_gen(args) -> int:
    if args.kind == "sq":
        if not args.poset:
            raise _Usage("gen sq needs --poset")
        try:
            p = poset_from_name(args.poset)
        except (ValueError, DblcatError) as exc:
            raise _Usage(str(exc)) from None
        doc = io.dump(gen_commuting_squares(gen_poset_category(p)))
    elif args.kind in ("trivial", "quintet"):
        if not args.two_cat:
            raise _Usage(f"gen {args.kind} needs --two-cat")
        kind, B = io.load_path(args.two_cat)
        if kind != "two_category":
            raise _Usage("--two-cat must name a two_category document")
        doc = io.dump(trivial_double(B) if args.kind == "trivial" else gen_quintet(B))
    elif args.kind == "product":
        if len(args.operands) != 2:
            raise _Usage("gen product needs two operand files")
        C, D = (_double_from(*io.load_path(p)) for p in args.operands)
        doc = io.dump(gen_product(C, D))
    else:
        raise _Usage(f"unknown generator {args.kind}")
    _emit(doc, args.out)
    return OK


def cmd_hstar(args) -> int:
    kind, obj = io.load_path(args.path)
    C = _double_from(kind, obj)
    _emit(io.dump(decorated_horizontalization(C, check=False)), args.out)
    return OK


def cmd_functor_check(args) -> int:
    kind, F = io.load_path(args.path)
    if kind != "functor":
        raise _Usage("expected a functor document")
    rep = _validate_any(kind, F)
    if not rep.ok:
        _print_report(rep)
        return MALFORMED
    every = not (args.lemma51 or args.prop36 or args.universal)
    failed = ValidationReport()
    if args.lemma51 or every:
        r = check_filtration_preservation(F)
        _out(f"lemma51\t{'pass' if r.ok else 'fail'}\n")
        failed.extend(r)
    if args.prop36 or every:
        r = check_epsilon_naturality(F)
        _out(f"prop36\t{'pass' if r.ok else 'fail'}\n")
        failed.extend(r)
    if args.universal or every:
        a = vertical_filtration(F.source, check=False)
        if len(a.members) != len(F.source.squares):
            _out("universal\tskip\tsource not globularily generated\n")
        else:
            try:
                lift = universal_lift(F.source, F)
                _out(f"universal\tpass\tsquares={len(lift.f_sq)}\n")
            except ImageEscape as exc:
                failed.add("cor-3.7", (), "image in gamma", str(exc))
                _out("universal\tfail\n")
    _print_report(failed)
    return OK if failed.ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dblcat", description="Finite strict double categories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check every axiom")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("gamma", help="compute the globularily generated piece")
    s.add_argument("path")
    s.add_argument("--lengths", action="store_true")
    s.add_argument("--witnesses", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("check", help="run property suites")
    s.add_argument("path")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("gen", help="generate a document")
    s.add_argument("kind", choices=("sq", "trivial", "quintet", "product"))
    s.add_argument("operands", nargs="*")
    s.add_argument("--poset")
    s.add_argument("--two-cat", dest="two_cat")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("hstar", help="decorated horizontalization")
    s.add_argument("path")
    s.add_argument("--out")
    s.set_defaults(func=cmd_hstar)

    s = sub.add_parser("functor-check", help="functor checks")
    s.add_argument("path")
    s.add_argument("--lemma51", action="store_true")
    s.add_argument("--prop36", action="store_true")
    s.add_argument("--universal", action="store_true")
    s.set_defaults(func=cmd_functor_check)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else MALFORMED
    try:
        return args.func(args)
    except (MalformedPresentation, _Usage) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return MALFORMED
    except DblcatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return MALFORMED
    except (OSError, RecursionError, MemoryError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
