"""Command-line entry point: ``ore-forge <command> ...``.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or parse
error, 3 an iteration or size bound was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import OreForgeError, ParseError, PresentationError, ResourceLimitError, VerificationError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


def _source(source: str):
    from .examples import get_example
    from .presentation import load

    if os.path.exists(source):
        return load(source)
    return get_example(source)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _parse_in(pres, text: str, top: int | None = None):
    el = pres.ring.parse(text)
    if top is not None and el.max_var() >= top:
        raise OreForgeError(f"{text!r} must only involve generators below {pres.names[top - 1]}")
    return el


def cmd_check(args) -> int:
    from .presentation import check_all

    pres = _source(args.source)
    rep = check_all(pres, args.bound, seed=args.seed)
    _emit(args, rep.to_dict(), str(rep))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_nf(args) -> int:
    pres = _source(args.source)
    el = pres.ring.parse(args.expr)
    _emit(args, {"input": args.expr, "normal_form": str(el)}, str(el))
    return EXIT_OK


def cmd_theta(args) -> int:
    from .cauchon import cauchon_theta

    pres = _source(args.source)
    j = args.j if args.j is not None else pres.N
    a = _parse_in(pres, args.expr, j)
    img = cauchon_theta(pres, j, a, args.bound)
    _emit(args, {"j": j, **img.to_dict()}, f"{img.value}\ns_min = {img.s_min}")
    return EXIT_OK


def cmd_delete(args) -> int:
    from .cauchon import delete_top_derivation, deletion_sequence

    pres = _source(args.source)
    steps = deletion_sequence(pres, args.bound) if args.all else [delete_top_derivation(pres, args.j or pres.N, args.bound)]
    lines = []
    for step in steps:
        tag = "trivial" if step.trivial else "deleted"
        lines.append(f"level {step.level}: {tag}")
        for i, img in sorted(step.images.items()):
            lines.append(f"  theta({pres.names[i - 1]}) = {img.value}")
        for c in step.checks.checks:
            lines.append(f"  [{'ok  ' if c.passed else 'FAIL'}] {c.name}")
    final = steps[-1].after
    lines.append("result:" if final.delta else "result: quantum affine space")
    lines.append(final.dumps())
    ok = all(s.checks.ok for s in steps)
    _emit(args, {"steps": [s.to_dict() for s in steps], "final": final.to_dict(), "ok": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_normal(args) -> int:
    from .normal import construct_normal, normal_failures, verify_normal

    pres = _source(args.source)
    if args.verify:
        x = pres.ring.parse(args.expr)
        cert = verify_normal(pres, x)
        if cert is None:
            fails = normal_failures(pres, x)
            text = f"{x} is not normal: " + "; ".join(f"{g}: {why}" for g, why in fails)
            _emit(args, {"element": str(x), "normal": False, "failures": fails}, text)
            return EXIT_FAIL
    else:
        a = _parse_in(pres, args.expr, pres.N)
        cert = construct_normal(pres, a, args.bound)
    lines = [f"x = {cert.element}"]
    lines += [f"  x*{pres.names[i - 1]} = ({p})*x" for i, p in sorted(cert.conjugation.items())]
    if cert.eigen_weight is not None:
        lines.append(f"weight {tuple(cert.eigen_weight)}")
    _emit(args, {"normal": True, **cert.to_dict()}, "\n".join(lines))
    return EXIT_OK


def cmd_innerd(args) -> int:
    from .normal import inner_d_from_monic, inner_d_from_normal, verify_inner

    pres = _source(args.source)
    top = pres.N
    payload = {}
    lines = []
    results = []
    if args.from_monic:
        a_text, c_text, n_text = args.from_monic
        try:
            n = int(n_text)
        except ValueError:
            raise ParseError(f"n must be an integer, got {n_text!r}") from None
        d_m = inner_d_from_monic(pres, _parse_in(pres, a_text, top), _parse_in(pres, c_text, top), n)
        results.append(("monic", d_m))
    if args.expr is not None:
        d_n = inner_d_from_normal(pres, _parse_in(pres, args.expr, top), args.bound)
        results.append(("normal", d_n))
    if not results:
        raise OreForgeError("give an element a or --from-monic A C N")
    ok = True
    for label, d in results:
        inner = verify_inner(pres, d)
        ok = ok and inner
        payload[label] = {**d.to_dict(), "verify_inner": inner}
        lines.append(f"d ({label}) = {d}   inner: {'yes' if inner else 'NO'}")
    if len(results) == 2:
        agree = results[0][1] == results[1][1]
        ok = ok and agree
        payload["agree"] = agree
        lines.append(f"routes agree: {'yes' if agree else 'NO'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_spectra(args) -> int:
    from .cauchon import deletion_sequence
    from .report import Report
    from .spectra import (FinitePoset, catenary_check, hprime_poset, natural_torus, normal_separation_check,
                          tauvel_check)

    if args.poset:
        with open(args.poset, encoding="utf-8") as fh:
            poset = FinitePoset.from_text(fh.read())
        res = catenary_check(poset)
        payload = {"catenary": res.ok}
        text = f"catenary: {'yes' if res.ok else 'no'}"
        if not res.ok:
            payload.update(pair=list(res.pair), chains=[res.short_chain, res.long_chain])
            text += (f"\n  between {res.pair[0]} and {res.pair[1]}: "
                     f"{' < '.join(map(str, res.short_chain))} vs {' < '.join(map(str, res.long_chain))}")
        _emit(args, payload, text)
        return EXIT_OK if res.ok else EXIT_FAIL
    if args.source is None:
        raise OreForgeError("spectra needs a presentation or --poset FILE")
    pres = _source(args.source)
    if pres.delta:
        pres = deletion_sequence(pres, args.bound)[-1].after
    pres = natural_torus(pres)
    which = [k for k in ("tauvel", "catenary", "normal_sep") if getattr(args, k)] or ["tauvel", "catenary", "normal_sep"]
    reports = []
    if "tauvel" in which:
        reports.append(tauvel_check(pres))
    if "catenary" in which:
        res = catenary_check(hprime_poset(pres))
        rep = Report(f"catenarity of the H-prime poset of {pres.name}")
        rep.add("all saturated chains have equal length", res.ok,
                "" if res.ok else f"{res.pair[0]} to {res.pair[1]}")
        reports.append(rep)
    if "normal_sep" in which:
        reports.append(normal_separation_check(pres))
    ok = all(r.ok for r in reports)
    _emit(args, {"ok": ok, "reports": [r.to_dict() for r in reports]}, "\n".join(str(r) for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_grade(args) -> int:
    from .grfilt import associated_graded, find_filtration_degrees, gk_growth_report

    pres = _source(args.source)
    deg = find_filtration_degrees(pres, args.max_total)
    gr = associated_graded(pres, deg.degrees)
    rep = gk_growth_report(pres, degrees=deg.degrees)
    payload = {"degrees": list(deg.degrees), "graded": gr.to_dict(), "gk_dimension": pres.N, "growth": rep.to_dict()}
    text = f"degrees {deg.degrees}\nGK dimension {pres.N}\n{rep}"
    _emit(args, payload, text)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_examples(args) -> int:
    from .examples import BUILTIN_NAMES, get_example

    rows = []
    for name in BUILTIN_NAMES:
        pres = get_example(name.replace("N", "4"))
        rows.append({"name": name, "generators": list(pres.names) if name != "qaffine-N" else "x1..xN"})
    _emit(args, {"examples": rows}, "\n".join(f"{r['name']}" for r in rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def flags(p, suppress):
        # subcommand copies must not overwrite values given before the subcommand
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
        p.add_argument("--bound", type=int, default=d(None), help="iteration bound (default 32 or $ORE_FORGE_BOUND)")
        p.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")

    common = argparse.ArgumentParser(add_help=False)
    flags(common, True)
    parser = argparse.ArgumentParser(prog="ore-forge", description="Exact computations in CGL extensions.")
    flags(parser, False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verify the CGL axioms and confluence")
    p.add_argument("source")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("nf", parents=[common], help="PBW normal form of an expression")
    p.add_argument("source")
    p.add_argument("expr")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("theta", parents=[common], help="Cauchon map at level j")
    p.add_argument("source")
    p.add_argument("-j", type=int, default=None)
    p.add_argument("expr")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("delete", parents=[common], help="delete derivations")
    p.add_argument("source")
    p.add_argument("-j", type=int, default=None, help="level (default: top)")
    p.add_argument("--all", action="store_true", help="run the full deletion sequence")
    p.set_defaults(func=cmd_delete)

    p = sub.add_parser("normal", parents=[common], help="build theta(a) X^s, or verify normality")
    p.add_argument("source")
    p.add_argument("expr")
    p.add_argument("--verify", action="store_true", help="verify that expr itself is normal")
    p.set_defaults(func=cmd_normal)

    p = sub.add_parser("innerd", parents=[common], help="element d with delta = inner derivation by d")
    p.add_argument("source")
    p.add_argument("expr", nargs="?")
    p.add_argument("--from-monic", nargs=3, metavar=("A", "C", "N"))
    p.set_defaults(func=cmd_innerd)

    p = sub.add_parser("spectra", parents=[common], help="H-prime checks on the quantum affine endpoint")
    p.add_argument("source", nargs="?")
    p.add_argument("--tauvel", action="store_true")
    p.add_argument("--catenary", action="store_true")
    p.add_argument("--normal-sep", dest="normal_sep", action="store_true")
    p.add_argument("--poset", help="check catenarity of a poset file ('a < b' per line)")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("grade", parents=[common], help="filtration degrees and GK dimension")
    p.add_argument("source")
    p.add_argument("--max-total", type=int, default=None)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("examples", parents=[common], help="list built-in presentations")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ParseError, PresentationError, OreForgeError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
