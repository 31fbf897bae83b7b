"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 precondition error,
3 failed verification. Diagnostics go to stderr; artifacts to ``--out`` or stdout.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from . import corpus
from .abelian import abelian_invariants, first_betti
from .criterion import certificate_to_json, semigroup_criterion
from .errors import DomainError, LeftOrderError, ParseError, PreconditionError, StructureError, UnsupportedInverse
from .germs import load_germs
from .obstruction import report_to_json as obstruction_to_json, stability_obstruction
from .realization import realize, report_to_json as realization_to_json
from .signs import select_signs, transcript_to_json
from .textio import dump_json
from .verify import verify_file
from .wordproblem import Budget

log = logging.getLogger("leftorder")

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_FAILED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _count(minimum):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {value}")
        return value

    return parse


POSITIVE, NONNEGATIVE = _count(1), _count(0)


def _emit(doc, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            dump_json(doc, fh)
        log.info("wrote %s", out)
    else:
        dump_json(doc, sys.stdout)


def _budget(args):
    kw = {}
    if getattr(args, "budget", None) is not None:
        kw["max_nodes"] = args.budget
    if getattr(args, "max_length", None) is not None:
        kw["max_length"] = args.max_length
    return Budget(**kw)


def cmd_betti(args):
    p = corpus.resolve(args.file)
    print(f"b1 = {first_betti(p)}")
    print("snf = " + " ".join(str(d) for d in abelian_invariants(p)))
    return EXIT_OK


def cmd_check_lo(args):
    p = corpus.resolve(args.file)
    subset = [p.word(t) for t in args.subset.split(",") if t.strip()]
    if not subset:
        raise PreconditionError("--subset is empty")
    result = semigroup_criterion(p, subset, args.max_len, _budget(args), threads=args.threads)
    log.info("verdict: %s", result.verdict)
    _emit(certificate_to_json(result), args.out)
    return EXIT_OK


def cmd_realize(args):
    p = corpus.resolve(args.file)
    report = realize(p, args.order, args.radius, args.iterates, args.maps, _budget(args))
    _emit(realization_to_json(report, p, args.order, args.iterates), args.out)
    for w in report.witnesses:
        log.error("%s", w)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_germ_order(args):
    germs = load_germs(args.germfile)
    tr = select_signs(germs, args.depth, args.max_len)
    _emit(transcript_to_json(tr), args.out)
    if not tr.passed:
        log.error("%s", tr.failure)
        return EXIT_FAILED
    return EXIT_OK


def cmd_obstruct(args):
    p = corpus.resolve(args.file)
    germs = load_germs(args.germfile)
    assignment = {g.name: g for g in germs}
    rep = stability_obstruction(p, assignment, args.depth)
    _emit(obstruction_to_json(rep, p, assignment, args.depth), args.out)
    log.info("verdict: %s", rep.verdict.value)
    return EXIT_OK


def cmd_corpus(args):
    for name, p, note in corpus.entries():
        print(f"{name:12s} {len(p.generators)} gens, {len(p.relators)} rels  {note}")
    if args.show:
        print(corpus.text(args.show), end="")
    return EXIT_OK


def cmd_verify(args):
    problems = verify_file(args.file)
    if problems:
        for msg in problems:
            print(f"FAILED: {msg}", file=sys.stderr)
        return EXIT_FAILED
    print("OK")
    return EXIT_OK


def build_parser():
    ap = _Parser(prog="leftorder", description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=POSITIVE, default=int(os.environ.get("LEFTORDER_THREADS", 1)))
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("betti", help="first Betti number and Smith diagonal")
    s.add_argument("file")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("check-lo", help="semigroup-criterion search for a non-LO certificate")
    s.add_argument("file")
    s.add_argument("--subset", required=True, help="comma-separated words, e.g. 'a, b a^-1'")
    s.add_argument("--max-len", type=POSITIVE, default=4)
    s.add_argument("--budget", type=POSITIVE, help="max expanded words per identity search")
    s.add_argument("--max-length", type=POSITIVE, help="max intermediate word length")
    s.add_argument("--out")
    s.set_defaults(func=cmd_check_lo)

    s = sub.add_parser("realize", help="dynamic realization report")
    s.add_argument("file")
    s.add_argument("--order", choices=["lex", "magnus"], default="lex")
    s.add_argument("--radius", type=NONNEGATIVE, default=3)
    s.add_argument("--iterates", type=POSITIVE, default=10)
    s.add_argument("--maps", choices=["ball", "generators"], default="ball")
    s.add_argument("--budget", type=POSITIVE)
    s.add_argument("--out")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("germ-order", help="sign selection transcript for a germ file")
    s.add_argument("germfile")
    s.add_argument("--depth", type=POSITIVE, default=4)
    s.add_argument("--max-len", type=POSITIVE, default=4)
    s.add_argument("--out")
    s.set_defaults(func=cmd_germ_order)

    s = sub.add_parser("obstruct", help="stability obstruction report")
    s.add_argument("file")
    s.add_argument("germfile")
    s.add_argument("--depth", type=POSITIVE, default=4)
    s.add_argument("--out")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("corpus", help="list bundled groups")
    s.add_argument("--show", metavar="NAME")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("verify", help="replay an emitted artifact")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)
    return ap


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (PreconditionError, UnsupportedInverse, DomainError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ParseError, StructureError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LeftOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
