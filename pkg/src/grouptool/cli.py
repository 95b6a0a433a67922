"""Command-line front end: ``grouptool VERB FILE [options]``.

Exit codes: 0 success (inconclusive verdicts included), 1 computation
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from grouptool import __version__
from grouptool.certificates import (
    ball_certificate,
    ball_connectivity_evidence,
    axiom_mapping_torus,
    corpus_axiom,
    monic_alexander_certificate,
    same_group,
)
from grouptool.corpus import ENTRY_NAMES, corpus_entry, f2xf2, f2xf2_rules_certificate
from grouptool.errors import GroupToolError, RuleInapplicable
from grouptool.extensions import (
    assemble_total_presentation,
    extension_report,
    monodromy_on_homology,
    validate_extension,
)
from grouptool.fibration import CERTIFIERS, DEFAULT_MU_SCHEDULE, fiber
from grouptool.fileformats import (
    emit_report,
    format_group,
    parse_extension_file,
    parse_group_file,
)
from grouptool.linalg import parse_matrix, smith_normal_form
from grouptool.presentations import (
    Character,
    abelian_invariants,
    adjust_presentation,
    betti_number,
)


class UsageError(Exception):
    pass


def resolve_path(name: str) -> Path:
    """A path as given, else a file of that name shipped with the package."""
    p = Path(name)
    if p.exists():
        return p
    shipped = resources.files("grouptool") / "data" / name
    if shipped.is_file():
        return Path(str(shipped))
    raise UsageError(f"no such file: {name}")


def _read(name: str) -> tuple:
    path = resolve_path(name)
    return path.read_text(encoding="utf-8"), path.name


def load_group(name: str):
    """A presentation from a .grp file, or the total group of a .ext file."""
    text, src = _read(name)
    if src.endswith(".ext"):
        return assemble_total_presentation(parse_extension_file(text, src))
    return parse_group_file(text, src)


def load_extension(name: str, validate: bool = True):
    text, src = _read(name)
    return parse_extension_file(text, src, validate)


def parse_values(text: str, generators) -> list:
    """``a=1,b=-1/2`` or a bare comma list in generator order."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        if parts and all("=" in p for p in parts):
            table = {}
            for p in parts:
                k, v = (s.strip() for s in p.split("=", 1))
                if k not in generators:
                    raise UsageError(f"unknown generator {k!r} in character")
                table[k] = Fraction(v)
            return [table.get(g, Fraction(0)) for g in generators]
        if len(parts) != len(generators):
            raise UsageError(f"expected {len(generators)} values, got {len(parts)}")
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad character {text!r}") from None


def _provenance(**extra) -> dict:
    return {"tool": "grouptool", "version": __version__, **extra}


def _fraction_dict(gens, vals) -> dict:
    return {g: Fraction(v) for g, v in zip(gens, vals)}


# verbs -----------------------------------------------------------------------


def cmd_b1(args):
    P = load_group(args.file)
    result = {"b1": betti_number(P), "torsion": list(abelian_invariants(P)[1]),
              "generators": list(P.generators)}
    return result, [], _provenance(kind="computed")


def cmd_snf(args):
    text, _ = _read(args.file)
    M = parse_matrix(text)
    res = smith_normal_form(M)
    result = {"rank": res.rank, "invariants": res.invariants, "D": res.D.tolist(),
              "U": res.U.tolist(), "V": res.V.tolist()}
    return result, [], _provenance(kind="computed")


def cmd_validate(args):
    E = load_extension(args.file, validate=False)
    bad = validate_extension(E)
    return {"valid": not bad, "violations": bad}, [], _provenance(kind="computed"), bool(bad)


def cmd_adjust(args):
    P = load_group(args.file)
    A = adjust_presentation(P, force=args.force)
    result = {
        "m": A.m, "r": A.r,
        "presentation": {"generators": list(A.base.generators),
                         "relators": [str(r) for r in A.base.relators]},
        "toOriginal": {k: str(w) for k, w in zip(A.to_original.source, A.to_original.images)},
        "fromOriginal": {k: str(w) for k, w in zip(A.from_original.source,
                                                   A.from_original.images)},
    }
    return result, [], _provenance(kind="computed")


def cmd_assemble(args):
    E = load_extension(args.file)
    G = assemble_total_presentation(E)
    result = {"name": G.name, "generators": list(G.generators),
              "relators": [str(r) for r in G.relators]}
    if args.format == "grp":
        return format_group(G), None, None
    return result, [], _provenance(kind="computed")


def cmd_report(args):
    E = load_extension(args.file)
    rep = extension_report(E)
    H = monodromy_on_homology(E)
    result = dict(rep.as_dict())
    result["homologyBasis"] = list(H.basis)
    result["monodromyMatrices"] = {x: H.matrix(x).tolist() for x in H.generators}
    return result, [], _provenance(kind="computed")


def _split_list(text: str) -> list:
    return [p.strip() for p in text.split(",") if p.strip()]


def cmd_fiber(args):
    E = load_extension(args.file)
    try:
        mu = tuple(Fraction(p) for p in _split_list(args.mu)) if args.mu else DEFAULT_MU_SCHEDULE
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --mu {args.mu!r}") from None
    if any(m <= 0 for m in mu) or not mu:
        raise UsageError("--mu values must be positive")
    certifiers = _split_list(args.certify) if args.certify else None
    for c in certifiers or ():
        if c not in CERTIFIERS:
            raise UsageError(f"unknown certifier {c!r}; choose from {', '.join(CERTIFIERS)}")
    gamma = None
    if args.gamma:
        G = assemble_total_presentation(E)
        gamma = Character(G.generators, parse_values(args.gamma, G.generators))
    subset = None
    if args.alpha_subset:
        try:
            subset = [int(p) - 1 for p in _split_list(args.alpha_subset)]
        except ValueError:
            raise UsageError(f"bad --alpha-subset {args.alpha_subset!r}") from None
    kwargs = {"mu_schedule": mu, "radius": args.radius, "gamma": gamma, "alpha_subset": subset}
    if certifiers:
        kwargs["certifiers"] = certifiers
    res = fiber(E, **kwargs)
    certs = [c.as_dict() for c in res.certificates if c is not None]
    return res.as_dict(), certs, _provenance(kind=res.status)


def _rules_certificate(P, chi):
    try:
        return corpus_axiom(P, chi)
    except RuleInapplicable:
        pass
    F = f2xf2()
    if same_group(P, F):
        cert = f2xf2_rules_certificate(P, chi.values)
        if cert is not None:
            return cert
    for s in P.generators:
        try:
            return axiom_mapping_torus(P, s, chi=chi)
        except RuleInapplicable:
            continue
    return None


def cmd_certify(args):
    P = load_group(args.file)
    vals = parse_values(args.char, P.generators)
    if not any(vals):
        raise UsageError("the zero character is not a sphere point")
    chi = Character(P.generators, vals)
    if chi.violated_relators(P):
        raise GroupToolError(f"{chi} does not kill relator {chi.violated_relators(P)[0]}")
    if args.method == "monic":
        v = monic_alexander_certificate(P, chi)
        result = {"verdict": v.verdict}
        if v.reason:
            result["reason"] = v.reason
        certs = [v.certificate.as_dict()] if v.certificate else []
        kind = "certified" if v.certified else "inconclusive"
    elif args.method == "ball":
        r = max(1, args.radius // 2)
        ev = ball_connectivity_evidence(P, chi, r, args.radius)
        cert = ball_certificate(P, chi, ev)
        result = {"verdict": "connected" if ev.connected else "not-connected",
                  "evidence": ev.as_dict()}
        certs = [cert.as_dict()]
        kind = "evidence"
    else:
        cert = _rules_certificate(P, chi)
        if cert is None:
            result = {"verdict": "inconclusive", "reason": "no rule applies"}
            certs, kind = [], "inconclusive"
        else:
            result = {"verdict": cert.claim, "rule": cert.rule}
            certs, kind = [cert.as_dict()], "certified"
    result["character"] = _fraction_dict(P.generators, vals)
    return result, certs, _provenance(kind=kind)


def cmd_example(args):
    try:
        entry = corpus_entry(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    P = entry.presentation
    result = {
        "key": entry.key,
        "presentation": {"name": P.name, "generators": list(P.generators),
                         "relators": [str(r) for r in P.relators], "oracle": P.oracle},
        "facts": [{"tag": f.tag, "value": f.value, "provenance": f.provenance}
                  for f in entry.facts],
    }
    if entry.decompositions:
        result["decompositions"] = [dict(d) for d in entry.decompositions]
    failed = False
    if args.verify:
        checks = []
        for tag, expected, actual, ok in entry.verify():
            checks.append({"tag": tag, "expected": expected, "actual": actual, "ok": ok})
            failed |= not ok
        result["verification"] = checks
    return result, [], _provenance(kind="corpus", verified=bool(args.verify) and not failed), failed


# parser ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grouptool", description="Finitely presented groups, extensions and "
                "BNS certificates.")
    p.add_argument("--version", action="version", version=f"grouptool {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser, metavar="VERB")

    def verb(name, func, helptext, file_help=None):
        sp = sub.add_parser(name, help=helptext, description=helptext)
        if file_help:
            sp.add_argument("file", help=file_help)
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.set_defaults(func=func)
        return sp

    verb("b1", cmd_b1, "first Betti number and torsion of H1", "FILE.grp or FILE.ext")
    verb("snf", cmd_snf, "Smith normal form of an integer matrix",
         "matrix file: 'rows cols' then row-major integers")
    verb("validate", cmd_validate, "check the extension relations", "FILE.ext")
    sp = verb("adjust", cmd_adjust, "adjusted presentation of a group", "FILE.grp")
    sp.add_argument("--force", action="store_true",
                    help="rebuild even when the input is already adjusted")
    sp = verb("assemble", cmd_assemble, "total presentation of an extension", "FILE.ext")
    sp.add_argument("--format", choices=("report", "grp"), default="report",
                    help="'grp' prints a .grp file instead of a report")
    verb("report", cmd_report, "invariants of an extension", "FILE.ext")
    sp = verb("fiber", cmd_fiber, "construct and certify an algebraic fibration", "FILE.ext")
    sp.add_argument("--mu", help="comma-separated mu schedule, e.g. 1,1/2,1/4")
    sp.add_argument("--certify", help=f"comma-separated certifiers from {','.join(CERTIFIERS)}")
    sp.add_argument("--radius", type=int, default=4, help="outer ball radius (default 4)")
    sp.add_argument("--gamma", help="gamma as 'a1=1,...' or a list in generator order")
    sp.add_argument("--alpha-subset", help="1-based factor indices, e.g. 1,2")
    sp = verb("certify", cmd_certify, "certify or gather evidence for a character",
              "FILE.grp or FILE.ext")
    sp.add_argument("--char", required=True, help="character, e.g. 'a=1,b=0'")
    sp.add_argument("--method", choices=("ball", "monic", "rules"), default="rules")
    sp.add_argument("--radius", type=int, default=4, help="outer ball radius (default 4)")
    sp = verb("example", cmd_example, "show a built-in corpus entry")
    sp.add_argument("name", help=f"one of {', '.join(ENTRY_NAMES)} (surface:G takes a genus, "
                    "e.g. surface:2)")
    sp.add_argument("--verify", action="store_true", help="run the attached verifiers")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "radius", 1) is not None and getattr(args, "radius", 1) < 1:
        parser.error("--radius must be at least 1")
    failed = False
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"grouptool: error: {exc}", file=sys.stderr)
        return 2
    except (GroupToolError, ArithmeticError) as exc:
        print(f"grouptool: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if len(out) == 4:
        result, certs, prov, failed = out
    else:
        result, certs, prov = out
    if certs is None:
        sys.stdout.write(result)
        return 0
    source = getattr(args, "file", None) or getattr(args, "name", None)
    sys.stdout.write(emit_report(args.verb, source, result, certs, prov,
                                 "json" if args.json else "text"))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
