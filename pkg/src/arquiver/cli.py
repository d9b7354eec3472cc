"""Command-line surface.

Exit codes: 0 success or affirmative verdict; 1 negative verdict to a
boolean question; 2 input error; 3 resource limit.  Diagnostics go to
stderr, reports to stdout or --out.
"""

import argparse
import sys

from .algebra import build_basis, parse_presentation
from .cuts import certify_tilted, cut_analysis, enumerate_cuts, quotient_by_cut
from .errors import (
    ArquiverError,
    CapExceeded,
    InputSyntaxError,
    LimitExceeded,
    NotFiniteDimensional,
    PreconditionError,
)
from .formats import (
    algebra_summary,
    ar_quiver_report,
    emit_algebra_file,
    export_dot,
    is_algebra_file,
    parse_translation_quiver,
    render_report,
)
from .knitting import DEFAULT_MAX_DIM, DEFAULT_MAX_VERTICES, knit

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputSyntaxError(f"cannot read {path}: {exc}") from None


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_quiver(path, max_vertices, max_dim):
    """Either knit an algebra file or import a translation-quiver file."""
    text = _read(path)
    if is_algebra_file(text):
        alg = build_basis(parse_presentation(text))
        return alg, knit(alg, max_vertices=max_vertices, max_dim=max_dim)
    return None, parse_translation_quiver(text)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="arquiver",
        description="Auslander-Reiten quivers, cuts, and tilted-algebra certification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_algebra = sub.add_parser("algebra", help="algebra file operations")
    alg_sub = p_algebra.add_subparsers(dest="subcommand", required=True)
    p_check = alg_sub.add_parser("check", help="parse and build the quotient basis")
    p_check.add_argument("file")

    p_ar = sub.add_parser("ar", help="Auslander-Reiten quiver operations")
    ar_sub = p_ar.add_subparsers(dest="subcommand", required=True)
    p_build = ar_sub.add_parser("build", help="knit the AR quiver")
    p_build.add_argument("file")
    p_build.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p_build.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    p_build.add_argument("--out")
    p_dot = ar_sub.add_parser("dot", help="export the AR quiver as DOT")
    p_dot.add_argument("file")
    p_dot.add_argument("--out", required=True)
    p_dot.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p_dot.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)

    p_cut = sub.add_parser("cut", help="cut analysis")
    cut_sub = p_cut.add_subparsers(dest="subcommand", required=True)
    p_ccheck = cut_sub.add_parser("check", help="analyze one vertex subset")
    p_ccheck.add_argument("file")
    p_ccheck.add_argument("--modules", required=True, help="comma-separated vertex names")
    p_ccheck.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p_ccheck.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    p_cenum = cut_sub.add_parser("enumerate", help="enumerate all cuts")
    p_cenum.add_argument("file")
    p_cenum.add_argument("--cap", type=int, default=10**6)
    p_cenum.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p_cenum.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)

    p_tilted = sub.add_parser("tilted", help="tiltedness certification")
    tilted_sub = p_tilted.add_subparsers(dest="subcommand", required=True)
    p_cert = tilted_sub.add_parser("certify", help="decide tiltedness")
    p_cert.add_argument("file")
    p_cert.add_argument("--cap", type=int, default=10**6)
    p_cert.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p_cert.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)

    p_quot = sub.add_parser("quotient", help="tilted quotient by a cut")
    p_quot.add_argument("file")
    p_quot.add_argument("--modules", required=True)
    p_quot.add_argument("--emit-algebra", dest="emit_algebra")
    p_quot.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p_quot.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    return parser


def _run(args):
    if args.command == "algebra" and args.subcommand == "check":
        alg = build_basis(parse_presentation(_read(args.file)))
        _emit(render_report(algebra_summary(alg)), None)
        return EXIT_OK

    if args.command == "ar" and args.subcommand == "build":
        alg = build_basis(parse_presentation(_read(args.file)))
        try:
            arq = knit(alg, max_vertices=args.max_vertices, max_dim=args.max_dim)
        except LimitExceeded as exc:
            if exc.partial is not None:
                report = ar_quiver_report(exc.partial, alg)
                report["partial"] = True
                _emit(render_report(report), args.out)
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_LIMIT
        _emit(render_report(ar_quiver_report(arq, alg)), args.out)
        return EXIT_OK

    if args.command == "ar" and args.subcommand == "dot":
        _alg, arq = _load_quiver(args.file, args.max_vertices, args.max_dim)
        _emit(export_dot(arq), args.out)
        return EXIT_OK

    if args.command == "cut" and args.subcommand == "check":
        _alg, arq = _load_quiver(args.file, args.max_vertices, args.max_dim)
        names = [n.strip() for n in args.modules.split(",") if n.strip()]
        unknown = [n for n in names if n not in arq.vertices]
        if unknown:
            raise InputSyntaxError(f"unknown module names: {', '.join(unknown)}")
        analysis = cut_analysis(arq, names)
        _emit(render_report(analysis), None)
        return EXIT_OK if analysis["is_cut"] else EXIT_NEGATIVE

    if args.command == "cut" and args.subcommand == "enumerate":
        _alg, arq = _load_quiver(args.file, args.max_vertices, args.max_dim)
        cuts = enumerate_cuts(arq, cap=args.cap)
        report = {"count": len(cuts), "cuts": [sorted(c) for c in cuts]}
        _emit(render_report(report), None)
        return EXIT_OK

    if args.command == "tilted" and args.subcommand == "certify":
        alg = build_basis(parse_presentation(_read(args.file)))
        cert = certify_tilted(
            alg, max_vertices=args.max_vertices, max_dim=args.max_dim, cap=args.cap
        )
        _emit(render_report(cert.to_json()), None)
        if cert.verdict == "CERTIFIED_TILTED":
            return EXIT_OK
        if cert.verdict == "REFUTED_BY_ENUMERATION":
            return EXIT_NEGATIVE
        return EXIT_LIMIT

    if args.command == "quotient":
        alg = build_basis(parse_presentation(_read(args.file)))
        arq = knit(alg, max_vertices=args.max_vertices, max_dim=args.max_dim)
        names = [n.strip() for n in args.modules.split(",") if n.strip()]
        unknown = [n for n in names if n not in arq.vertices]
        if unknown:
            raise InputSyntaxError(f"unknown module names: {', '.join(unknown)}")
        result = quotient_by_cut(alg, arq, names)
        report = {
            "annihilator": {
                "dimension": result.annihilator_dim,
                "generators": result.annihilator_generators,
            },
            "quotient": algebra_summary(result.algebra),
            "lifted_cut": result.lifted_cut,
            "delta_is_cut": result.delta_is_cut,
            "delta_is_slice": result.delta_is_slice,
            "tau_preserved": result.tau_preserved,
            "projectives_remain_projective": result.projectives_remain_projective,
            "certificate": result.certificate.to_json(),
        }
        _emit(render_report(report), None)
        if args.emit_algebra:
            with open(args.emit_algebra, "w", encoding="utf-8") as fh:
                fh.write(emit_algebra_file(result.presentation))
        return EXIT_OK

    raise InputSyntaxError(f"unhandled command {args.command}")


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except InputSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotFiniteDimensional, LimitExceeded, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ArquiverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
