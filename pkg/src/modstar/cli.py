"""Batch command-line front end.

Results go to stdout, logs and timing to stderr.  Exit codes:
0 success, 1 usage, 2 domain precondition, 3 I/O or checkpoint, 4 internal
consistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import chordpoly, density, group, quadratic, sequences
from .errors import CheckpointError, ConsistencyError, DomainError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO, EXIT_INTERNAL = 0, 1, 2, 3, 4
GROUP_ELEMENT_LIMIT = 10_000

log = logging.getLogger("modstar")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _cmd_group(args) -> str:
    s = group.classify(args.n)
    d = s.to_dict()
    if args.elements and s.order <= GROUP_ELEMENT_LIMIT:
        d["elements"] = group.group_representatives(args.n)
    d["schema_version"] = SCHEMA_VERSION
    if args.format == "json":
        return _dump(d)
    return "\n".join(f"{k}: {v}" for k, v in d.items() if k != "schema_version")


def _cmd_seq(args) -> str:
    if args.g == 2 and args.count is not None:
        absolute = sequences.schick_absolute(args.n, args.count)
        signed = sequences.schick_signed(args.n, args.count)
    else:
        seq = sequences.schick_sequence(args.n, args.g, args.start)
        count = args.count or seq.period
        absolute = sequences.generalized_sequence(args.n, args.g, count)
        signed = sequences.schick_signed(args.n, count) if args.g == 2 else [None] * count
    rows = [(k + args.start, s, a) for k, (s, a) in enumerate(zip(signed, absolute))]
    if args.format == "json":
        return _dump({"n": args.n, "g": args.g, "start_index": args.start,
                      "signed": [r[1] for r in rows], "absolute": [r[2] for r in rows],
                      "schema_version": SCHEMA_VERSION})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("index", "signed", "absolute"))
    for i, s, a in rows:
        w.writerow((i, "" if s is None else s, a))
    return buf.getvalue().rstrip("\n")


def _cmd_sqrt(args) -> str:
    b = group.canonical_repr(args.b, args.n)
    level = None if args.level == "auto" else int(args.level)
    x, used = quadratic.sqrt_star(b, level)
    verified = group.reduce_mod_star(x.rep * x.rep, args.n) == b.rep
    return _dump({"n": args.n, "b": b.rep, "x": x.rep, "level": used, "verified": verified,
                  "schema_version": SCHEMA_VERSION})


def _checkpoint_path(args, kind: str) -> Path | None:
    if args.checkpoint:
        return Path(args.checkpoint)
    root = os.environ.get("MODSTAR_CHECKPOINT_DIR")
    if root:
        return Path(root) / f"{kind}-b{args.base}-x{args.limit}-p{args.partitions}.csv"
    return None


def _cmd_density(args) -> str:
    s = density.artin_density_star(args.base, args.limit, args.partitions,
                                   _checkpoint_path(args, "prime"), args.resume)
    log.info("elapsed %.3fs, checkpoint=%s, resumed rows=%d", s.elapsed, s.checkpoint, s.resumed_rows)
    return _dump(s.to_dict())


def _cmd_sg_density(args) -> str:
    s = density.sg_density_star(args.base, args.limit, args.partitions,
                                _checkpoint_path(args, "sg"), args.resume, args.include_degenerate)
    log.info("elapsed %.3fs, checkpoint=%s, resumed rows=%d", s.elapsed, s.checkpoint, s.resumed_rows)
    return _dump(s.to_dict())


_POLY = {
    "S": chordpoly.s_poly,
    "P": chordpoly.p_poly,
    "psi": chordpoly.psi_poly,
    "phi": chordpoly.cyclotomic_poly,
}


def _cmd_poly(args) -> str:
    index = args.m if args.m is not None else args.n
    if index is None:
        raise UsageError("poly: one of --n or --m is required")
    p = _POLY[args.kind](index)
    if args.format == "json":
        return _dump(p.to_list())
    return p.format("x" if args.kind == "phi" else "s")


def _cmd_chords(args) -> str:
    if args.product:
        idx = [chordpoly.ChordIndex.reduced(j, args.n, args.numbering) for j in args.product]
        terms = chordpoly.chord_multi_product(idx)
        prod = 1.0
        for c in idx:
            prod *= c.value
        total = sum(t.value for t in terms)
        return _dump({"n": args.n, "numbering": args.numbering, "factors": [c.j for c in idx],
                      "terms": [t.j for t in terms], "product": prod, "sum": total,
                      "schema_version": SCHEMA_VERSION})
    chords = chordpoly.representative_chords(args.n, args.numbering)
    if args.format == "csv":
        return "j,value\n" + "\n".join(f"{c.j},{c.value!r}" for c in chords)
    return _dump({"n": args.n, "numbering": args.numbering,
                  "chords": [{"j": c.j, "value": c.value} for c in chords],
                  "gauss_sum": chordpoly.gauss_sum_check(args.n),
                  "schema_version": SCHEMA_VERSION})


def _cmd_diagram(args) -> str:
    path = chordpoly.emit_chord_diagram(args.n, args.output)
    return _dump({"n": args.n, "path": str(path), "chords": (args.n - 1) // 2,
                  "schema_version": SCHEMA_VERSION})


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="modstar", description="mod-star number theory toolkit")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress and timing to stderr")
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="log progress and timing to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    g = add("group", help="structure of G*_n")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--format", choices=("plain", "json"), default="json")
    g.add_argument("--no-elements", dest="elements", action="store_false",
                   help=f"omit the element list (always omitted above order {GROUP_ELEMENT_LIMIT})")
    g.set_defaults(func=_cmd_group)

    s = add("seq", help="Schick sequence terms as CSV (index, signed, absolute)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, help="number of terms (default: one period)")
    s.add_argument("--g", type=int, default=2, help="base of the generalized sequence")
    s.add_argument("--start", type=int, choices=(0, 1), default=1, help="index of the first term")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=_cmd_seq)

    q = add("sqrt", help="closed-form square root mod*")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--level", choices=("auto", "1", "2", "3"), default="auto")
    q.set_defaults(func=_cmd_sqrt)

    for name, func, helptext in (("density", _cmd_density, "Artin-style density over primes"),
                                 ("sg-density", _cmd_sg_density, "density over Sophie Germain pairs")):
        d = add(name, help=helptext)
        d.add_argument("--base", type=int, required=True)
        d.add_argument("--limit", type=int, required=True)
        d.add_argument("--partitions", type=int, default=1)
        d.add_argument("--checkpoint", help="CSV checkpoint path (default from MODSTAR_CHECKPOINT_DIR)")
        d.add_argument("--resume", action="store_true")
        if name == "sg-density":
            d.add_argument("--include-degenerate", action="store_true",
                           help="also count (3, 7), which is not of the form (6k-1, 12k-1)")
        d.set_defaults(func=func)

    pl = add("poly", help="S_k, P_m, Psi_n or Phi_n coefficients (constant first)")
    pl.add_argument("--kind", choices=tuple(_POLY), required=True)
    pl.add_argument("--n", type=int)
    pl.add_argument("--m", type=int)
    pl.add_argument("--format", choices=("json", "plain"), default="json")
    pl.set_defaults(func=_cmd_poly)

    c = add("chords", help="chord values or product expansions")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--numbering", choices=chordpoly.NUMBERINGS, default="odd")
    c.add_argument("--product", type=int, nargs="+", metavar="J")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.set_defaults(func=_cmd_chords)

    dg = add("diagram", help="SVG chord diagram")
    dg.add_argument("--n", type=int, required=True)
    dg.add_argument("--output", required=True)
    dg.set_defaults(func=_cmd_diagram)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("modstar")
    root.handlers[:] = [handler]
    root.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        out = args.func(args)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (OSError, CheckpointError) as exc:
        stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    except (ConsistencyError, ArithmeticError) as exc:
        stderr.write(f"internal consistency error: {exc}\n")
        return EXIT_INTERNAL
    stdout.write(out + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
