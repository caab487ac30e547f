"""Command-line driver: ``dualitykit <command> ...``.

Exit status is 0 when everything passed, 1 when a check found a
counterexample, 2 for usage or parse errors and 3 for an internal
consistency alarm.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from .algebra import FiniteAlgebra, Kind, as_kind, check_kind
from .approx import ApproximationSpace, build_rough_set_algebra
from .duality import cm, cs, frame_report, roundtrip_algebra, roundtrip_frame
from .enumeration import (
    CEILING_ENV,
    enumerate_frames,
    enumerate_partitions,
    enumerate_posets,
    theorem_ids,
    verify_theorem,
)
from .errors import DomainError, DualityError, InternalConsistencyError
from .order import Frame
from .speclang import (
    KINDS,
    SpecLangError,
    algebra_decl,
    frame_decl,
    parse_document,
    parse_element,
    render_decl,
    render_report,
    space_decl,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ALARM = 0, 1, 2, 3
FAMILIES = ("partitions", "posets", "posets-unlabeled") + tuple(f"frames-{k}" for k in KINDS)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS,
                   help="report format (default text)")
    p.add_argument("--ceiling", type=int, default=argparse.SUPPRESS,
                   help=f"enumeration size ceiling, same as {CEILING_ENV}")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="dualitykit", description="Check finite discrete dualities and rough set constructions.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="run every check declaration in a file")
    p.add_argument("file")

    for name, what in (("cm", "complex algebra of a frame"), ("cs", "canonical frame of an algebra")):
        p = sub.add_parser(name, parents=[common], help=f"print the {what}")
        p.add_argument("--kind", choices=KINDS)
        p.add_argument("--name", required=True)
        p.add_argument("file")

    p = sub.add_parser("roundtrip", parents=[common], help="both roundtrips for a named structure")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--name", required=True)
    p.add_argument("file")

    p = sub.add_parser("approx", parents=[common], help="lower and upper approximation of a set")
    p.add_argument("--space", required=True)
    p.add_argument("--set", required=True, dest="subset")
    p.add_argument("file")

    p = sub.add_parser("enumerate", parents=[common], help="stream canonical forms of a family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="check a theorem on every small instance")
    p.add_argument("--theorem", required=True, help="one of: " + ", ".join(theorem_ids()))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--sample-n", type=int)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--time", action="store_true", help="append wall time (breaks byte-stability)")
    return parser


# -- helpers ----------------------------------------------------------------

def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise _Usage(f"{path}: no such file") from None
    except OSError as exc:
        raise _Usage(f"{path}: {exc.strerror}") from None
    try:
        return parse_document(text)
    except SpecLangError as exc:
        raise _Usage(f"{path}:{exc}") from None


def _named(doc, name: str, types):
    try:
        obj = doc.get(name)
    except KeyError:
        raise _Usage(f"no declaration named {name!r}") from None
    if not isinstance(obj, types):
        raise _Usage(f"{name!r} is a {type(obj).__name__}, expected " + " or ".join(t.__name__ for t in types))
    return obj


def _frame_kind(doc, name: str, kind):
    return as_kind(kind) if kind else as_kind(doc.decl(name).kind)


def _status(reports) -> int:
    if any(r.alarms for r in reports):
        return EXIT_ALARM
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


class _Out:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.chunks: list = []

    def report(self, r):
        self.chunks.append(render_report(r, self.fmt))

    def text(self, s: str):
        self.chunks.append(s)

    def flush(self):
        sys.stdout.write("".join(self.chunks))
        sys.stdout.flush()


# -- commands ---------------------------------------------------------------------

def _run_check(decl, doc, target: str):
    obj = doc.get(target)
    kind = decl.kind
    label = f"{decl.name}:{target}"
    if decl.command == "axioms":
        if isinstance(obj, Frame):
            return [frame_report(obj, _frame_kind(doc, target, kind), name=label)]
        return [check_kind(obj, kind, name=label)]
    if decl.command == "cm":
        k = _frame_kind(doc, target, kind)
        return [check_kind(cm(obj, k, check=False), k, name=label)]
    if decl.command == "cs":
        k = as_kind(kind) if kind else obj.kind
        return [frame_report(cs(obj, k, check=False), k, name=label)]
    if decl.command == "roundtrip-algebra":
        return [roundtrip_algebra(obj, kind, name=label)]
    if decl.command == "roundtrip-frame":
        return [roundtrip_frame(obj, _frame_kind(doc, target, kind), name=label)]
    return [check_kind(build_rough_set_algebra(obj, name=target), Kind.RDSA, name=label)]


def cmd_check(args, out: _Out) -> int:
    doc = _load(args.file)
    status = EXIT_PASS
    for decl in doc.checks:
        for target in decl.targets:
            try:
                reports = _run_check(decl, doc, target)
            except InternalConsistencyError as exc:
                _diag(f"{decl.name}:{target}: alarm: {exc}")
                if exc.report is not None:
                    out.report(exc.report)
                status = max(status, EXIT_ALARM)
                continue
            except DualityError as exc:
                _diag(f"{decl.name}:{target}: {type(exc).__name__}: {exc}")
                status = max(status, EXIT_FAIL)
                continue
            for r in reports:
                out.report(r)
            status = max(status, _status(reports))
    return status


def cmd_cm(args, out: _Out) -> int:
    doc = _load(args.file)
    f = _named(doc, args.name, (Frame,))
    a = cm(f, _frame_kind(doc, args.name, args.kind), name=f"cm_{args.name}")
    out.text(render_decl(algebra_decl(f"cm_{args.name}", a)))
    return EXIT_PASS


def cmd_cs(args, out: _Out) -> int:
    doc = _load(args.file)
    a = _named(doc, args.name, (FiniteAlgebra,))
    kind = as_kind(args.kind) if args.kind else a.kind
    out.text(render_decl(frame_decl(f"cs_{args.name}", cs(a, kind), kind)))
    return EXIT_PASS


def cmd_roundtrip(args, out: _Out) -> int:
    doc = _load(args.file)
    obj = _named(doc, args.name, (Frame, FiniteAlgebra))
    if isinstance(obj, Frame):
        kind = _frame_kind(doc, args.name, args.kind)
        reports = [roundtrip_frame(obj, kind, name=args.name),
                   roundtrip_algebra(cm(obj, kind), kind, name=f"cm_{args.name}")]
    else:
        kind = as_kind(args.kind) if args.kind else obj.kind
        reports = [roundtrip_algebra(obj, kind, name=args.name),
                   roundtrip_frame(cs(obj, kind), kind, name=f"cs_{args.name}")]
    for r in reports:
        out.report(r)
    return _status(reports)


def cmd_approx(args, out: _Out) -> int:
    doc = _load(args.file)
    s = _named(doc, args.space, (ApproximationSpace,))
    try:
        subset = parse_element(args.subset)
    except SpecLangError as exc:
        raise _Usage(f"--set: {exc}") from None
    if not isinstance(subset, frozenset):
        raise _Usage("--set must be a set literal such as {1,2}")
    out.text(s.approximations(subset).label() + "\n")
    return EXIT_PASS


def cmd_enumerate(args, out: _Out) -> int:
    fam = args.family
    if fam == "partitions":
        decls = (space_decl(f"p{i}", s) for i, s in enumerate(enumerate_partitions(args.n), 1))
    elif fam.startswith("posets"):
        posets = enumerate_posets(args.n, labeled=fam == "posets")
        decls = (frame_decl(f"p{i}", Frame.ordered(p), Kind.BDL) for i, p in enumerate(posets, 1))
    else:
        kind = as_kind(fam[len("frames-"):])
        decls = (frame_decl(f"f{i}", f, kind) for i, f in enumerate(enumerate_frames(kind, args.n), 1))
    for i, d in enumerate(decls):
        out.text(("\n" if i else "") + render_decl(d))
    return EXIT_PASS


def cmd_verify(args, out: _Out) -> int:
    summary = verify_theorem(args.theorem, args.max_n, args.sample_n, args.samples, args.seed, args.workers)
    if out.fmt == "text":
        out.text(summary.render(show_time=args.time))
    else:
        out.report(summary)
    if summary.counterexample:
        _diag(f"counterexample: {summary.counterexample}")
    return EXIT_PASS if summary.passed else EXIT_FAIL


COMMANDS = {
    "check": cmd_check,
    "cm": cmd_cm,
    "cs": cmd_cs,
    "roundtrip": cmd_roundtrip,
    "approx": cmd_approx,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def _diag(msg: str) -> None:
    print(f"dualitykit: {msg}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        _diag(f"error: {exc}")
        return EXIT_USAGE
    previous = os.environ.get(CEILING_ENV)
    if getattr(args, "ceiling", None) is not None:
        os.environ[CEILING_ENV] = str(args.ceiling)
    try:
        return _dispatch(args)
    finally:
        # the override is scoped to this call
        if previous is None:
            os.environ.pop(CEILING_ENV, None)
        else:
            os.environ[CEILING_ENV] = previous


def _dispatch(args) -> int:
    out = _Out(getattr(args, "format", "text"))
    try:
        status = COMMANDS[args.command](args, out)
    except _Usage as exc:
        _diag(f"error: {exc}")
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        out.flush()
        _diag(f"alarm: {exc}")
        return EXIT_ALARM
    except DomainError as exc:
        out.flush()
        _diag(f"error: {exc}")
        return EXIT_USAGE
    except DualityError as exc:
        out.flush()
        _diag(f"{type(exc).__name__}: {exc}")
        return EXIT_FAIL
    out.flush()
    return status

if __name__ == "__main__":
    sys.exit(main())
