"""Command-line front end.

Exit codes: 0 success, 1 usage or internal error (or a failed verification),
2 when a screen leaves unresolved triples.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .chars import (
    CharacterError,
    decompose_into_chi,
    tensor_character,
    weyl_character,
    weyl_dim,
)
from .modular import (
    ModularError,
    PrimeContext,
    affine_rep,
    g1_linked,
    g_linked,
    is_weyl_simple,
    jantzen_sum,
    linkage_rep,
    restricted_weights,
    strongly_linked,
)
from .rootdata import RootSystemError, build_root_system, parse_type
from .screening import (
    DEFAULT_CAP,
    FILTERS,
    RESOLUTIONS,
    ScreeningError,
    ScreeningReport,
    fundamental_weight_check,
    screen,
)

FORMATS = ("text", "csv", "json")
EXIT_OK, EXIT_ERROR, EXIT_UNRESOLVED = 0, 1, 2


def fmt_weight(w) -> str:
    return "(" + ",".join(str(int(x)) for x in w) + ")"


def parse_weight(s: str):
    s = s.strip().strip("()[]")
    try:
        return tuple(int(x) for x in s.split(",")) if s else ()
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {s!r}; use e.g. 6,5,5") from None


@dataclass
class TableArtifact:
    title: str
    header: list
    rows: list = field(default_factory=list)
    provenance: str = ""

    def __post_init__(self):
        if any(len(r) != len(self.header) for r in self.rows):
            raise ValueError("table rows must match the header width")


def report_table(report: ScreeningReport) -> TableArtifact:
    rows = sorted(((t.lam, t.mu1, t.gamma, ";".join(sorted(t.filters_passed)))
                   for t in report.triples()))
    rows = [[fmt_weight(l), fmt_weight(g), fmt_weight(m), f] for l, m, g, f in rows]
    return TableArtifact(
        title=f"{report.series}{report.rank} p={report.p}",
        header=["lambda", "gamma", "mu1", "filters"],
        rows=rows,
        provenance="(lambda | mu_(1)) pairs passing the enabled filters",
    )


def emit_table(report: ScreeningReport, fmt: str = "text") -> bytes:
    """Deterministic serialization of a screening report."""
    if fmt == "json":
        return (json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n").encode()
    table = report_table(report)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.header)
        w.writerows(table.rows)
        return buf.getvalue().encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"# {table.title}  filters: {','.join(report.filters)}"]
    c = report.counts
    lines.append("# counts: " + ", ".join(f"{k}={v}" for k, v in sorted(c.items())))
    for name, ts in sorted(report.resolved_by.items()):
        lines.append(f"# resolved by {name}: {len(ts)}")
        lines.extend(f"#   {fmt_weight(t.lam)} {fmt_weight(t.gamma)} {fmt_weight(t.mu1)}"
                     for t in ts)
    if not table.rows:
        lines.append("unresolved: none")
    else:
        lines.append(f"unresolved: {len(table.rows)}")
        width = max(len(r[0]) for r in table.rows + [table.header])
        lines.append("  ".join(h.ljust(width) for h in table.header[:3]))
        lines.extend("  ".join(x.ljust(width) for x in r[:3]) for r in table.rows)
    return ("\n".join(lines) + "\n").encode()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_type(p: argparse.ArgumentParser, prime=True):
    p.add_argument("--type", required=True, help="series letter (A..G) or full name such as B3")
    p.add_argument("--rank", type=int, help="rank, unless given in --type")
    if prime:
        p.add_argument("--p", type=int, required=True, help="the prime")
        p.add_argument("--r", type=int, default=1, help="Frobenius exponent (default 1)")


def _add_output(p):
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stscreen", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="root system data")
    _add_type(p, prime=False)
    _add_output(p)

    p = sub.add_parser("screen", help="run the screen over X_1")
    _add_type(p)
    _add_output(p)
    p.add_argument("--lambda", dest="lam", type=parse_weight, action="append",
                   help="restrict to this weight (repeatable)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="largest |X_1| to enumerate (default from STSCREEN_CAP or 100000)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--skip-filter", action="append", default=[], choices=FILTERS,
                   help="disable a filter (repeatable)")
    p.add_argument("--resolve", action="append", default=[], choices=RESOLUTIONS,
                   help="apply an extra resolution step to mu_(1) = 0 triples")

    p = sub.add_parser("linked", help="linkage of two weights")
    _add_type(p)
    _add_output(p)
    p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)
    p.add_argument("--mu", type=parse_weight, required=True)

    for name, text in (("simple", "is nabla(lambda) simple"), ("jsum", "Jantzen sum")):
        p = sub.add_parser(name, help=text)
        _add_type(p)
        _add_output(p)
        p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)

    p = sub.add_parser("restricted", help="list restricted weights")
    _add_type(p)
    _add_output(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("mult", help="weight multiplicity in nabla(lambda)")
    _add_type(p, prime=False)
    _add_output(p)
    p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)
    p.add_argument("--weight", type=parse_weight, required=True)

    p = sub.add_parser("dim", help="dimension of nabla(lambda)")
    _add_type(p, prime=False)
    _add_output(p)
    p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)

    p = sub.add_parser("tensor", help="nabla(lambda) (x) nabla(mu) in the chi basis")
    _add_type(p, prime=False)
    _add_output(p)
    p.add_argument("--lambda", dest="lam", type=parse_weight, required=True)
    p.add_argument("--mu", type=parse_weight, required=True)

    p = sub.add_parser("fundweights", help="fundamental-weight table h(j, r, p)")
    _add_type(p, prime=False)
    _add_output(p)
    p.add_argument("--primes", type=parse_weight, default=(2, 3, 5, 7))
    p.add_argument("--rs", type=parse_weight, default=(1, 2, 3))

    p = sub.add_parser("hyperalg", help="characteristic-2 SL_6 verification")
    p.add_argument("action", choices=["verify-a5"])
    _add_output(p)
    return parser


def _system(args):
    t = args.type
    if args.rank is not None and t.isalpha():
        return build_root_system(t.upper(), args.rank)
    system = parse_type(t)
    if args.rank is not None and args.rank != system.rank:
        raise RootSystemError(f"--type {t} conflicts with --rank {args.rank}")
    return system


def _check_rank(system, *weights):
    for w in weights:
        if len(w) != system.rank:
            raise RootSystemError(f"weight {fmt_weight(w)} does not have rank {system.rank}")


def _render(args, data: dict, text_lines: list[str], rows=None) -> bytes:
    if args.format == "json":
        return (json.dumps({"schema": "v1", **data}, indent=2, sort_keys=True) + "\n").encode()
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows if rows is not None else [list(data), [str(v) for v in data.values()]]:
            w.writerow(r)
        return buf.getvalue().encode()
    return ("\n".join(text_lines) + "\n").encode()


def _write(args, payload: bytes):
    if getattr(args, "out", None):
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode())
        sys.stdout.flush()


def _cmd_screen(args):
    system = _system(args)
    ctx = PrimeContext(system, args.p, args.r)
    if args.cap < 1:
        raise ScreeningError("--cap must be >= 1")
    if args.jobs < 1:
        raise ScreeningError("--jobs must be >= 1")
    filters = tuple(f for f in FILTERS if f not in args.skip_filter)
    report = screen(ctx, lambdas=args.lam, filters=filters, resolve=tuple(args.resolve),
                    cap=args.cap, jobs=args.jobs)
    _write(args, emit_table(report, args.format))
    return EXIT_UNRESOLVED if report.unresolved else EXIT_OK


def _cmd_info(args):
    system = _system(args)
    d = system.to_json()
    lines = [f"{k}: {v}" for k, v in d.items()]
    return _render(args, d, lines)


def _cmd_linked(args):
    system = _system(args)
    ctx = PrimeContext(system, args.p, args.r)
    _check_rank(system, args.lam, args.mu)
    d = {
        "lambda": list(args.lam), "mu": list(args.mu), "p": args.p,
        "g1_linked": g1_linked(args.lam, args.mu, ctx),
        "g_linked": g_linked(args.lam, args.mu, ctx),
        "strongly_linked": strongly_linked(args.mu, args.lam, ctx),
        "rep_lambda": list(linkage_rep(args.lam, ctx).canonical),
        "rep_mu": list(linkage_rep(args.mu, ctx).canonical),
        "alcove_rep_lambda": list(affine_rep(system, args.lam, args.p)),
        "alcove_rep_mu": list(affine_rep(system, args.mu, args.p)),
    }
    lines = [f"{k}: {fmt_weight(v) if isinstance(v, list) else v}" for k, v in d.items()]
    return _render(args, d, lines)


def _cmd_simple(args):
    system = _system(args)
    ctx = PrimeContext(system, args.p, args.r)
    _check_rank(system, args.lam)
    s = is_weyl_simple(args.lam, ctx)
    js = jantzen_sum(args.lam, ctx)
    d = {"lambda": list(args.lam), "p": args.p, "simple": s, "jantzen_sum": js.to_json()}
    lines = [f"nabla{fmt_weight(args.lam)} at p={args.p}: {'simple' if s else 'not simple'}"]
    return _render(args, d, lines)


def _cmd_jsum(args):
    system = _system(args)
    ctx = PrimeContext(system, args.p, args.r)
    _check_rank(system, args.lam)
    js = jantzen_sum(args.lam, ctx)
    d = {"lambda": list(args.lam), "p": args.p, "terms": js.to_json()}
    rows = [["weight", "coefficient"]] + [[fmt_weight(w), c] for w, c in sorted(js.terms.items())]
    lines = [f"{c:+d} chi{fmt_weight(w)}" for w, c in sorted(js.terms.items())] or ["0"]
    return _render(args, d, lines, rows)


def _cmd_restricted(args):
    system = _system(args)
    ctx = PrimeContext(system, args.p, args.r)
    if ctx.q ** system.rank > args.cap:
        raise ScreeningError(f"|X_r| = {ctx.q ** system.rank} exceeds the cap {args.cap}")
    ws = list(restricted_weights(ctx))
    d = {"p": args.p, "r": args.r, "weights": [list(w) for w in ws]}
    rows = [["weight"]] + [[fmt_weight(w)] for w in ws]
    return _render(args, d, [fmt_weight(w) for w in ws], rows)


def _cmd_mult(args):
    system = _system(args)
    _check_rank(system, args.lam, args.weight)
    m = weyl_character(system, args.lam).mult(args.weight)
    d = {"lambda": list(args.lam), "weight": list(args.weight), "multiplicity": m}
    return _render(args, d, [str(m)])


def _cmd_dim(args):
    system = _system(args)
    _check_rank(system, args.lam)
    n = weyl_dim(system, args.lam)
    return _render(args, {"lambda": list(args.lam), "dim": n}, [str(n)])


def _cmd_tensor(args):
    system = _system(args)
    _check_rank(system, args.lam, args.mu)
    c = tensor_character(weyl_character(system, args.lam), weyl_character(system, args.mu))
    e = decompose_into_chi(c)
    d = {"lambda": list(args.lam), "mu": list(args.mu), "terms": e.to_json()}
    rows = [["weight", "coefficient"]] + [[fmt_weight(w), k] for w, k in sorted(e.terms.items())]
    lines = [f"{k} x nabla{fmt_weight(w)}" for w, k in sorted(e.terms.items())]
    return _render(args, d, lines, rows)


def _cmd_fundweights(args):
    system = _system(args)
    rows = fundamental_weight_check(system, primes=args.primes, rs=args.rs)
    data = {"type": system.name, "rows": [
        {"j": r.j, "p": r.p, "r": r.r, "value": str(r.value), "flagged": r.flagged,
         "deltas": [list(x) for x in r.deltas]} for r in rows]}
    table = [["j", "p", "r", "value", "flagged"]] + [
        [r.j, r.p, r.r, str(r.value), r.flagged] for r in rows]
    lines = [f"j={r.j} p={r.p} r={r.r} h={r.value}{'  FLAG' if r.flagged else ''}"
             for r in rows]
    return _render(args, data, lines, table)


def _cmd_hyperalg(args):
    from .hyperalg import verify_a5

    checks = verify_a5()
    data = {"checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]}
    lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + ("" if c.ok else f"  [{c.detail}]")
             for c in checks]
    table = [["check", "ok", "detail"]] + [[c.name, c.ok, c.detail] for c in checks]
    _write(args, _render(args, data, lines, table))
    return EXIT_OK if all(c.ok for c in checks) else EXIT_ERROR


COMMANDS = {
    "info": _cmd_info, "linked": _cmd_linked, "simple": _cmd_simple, "jsum": _cmd_jsum,
    "restricted": _cmd_restricted, "mult": _cmd_mult, "dim": _cmd_dim,
    "tensor": _cmd_tensor, "fundweights": _cmd_fundweights,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "screen":
            return _cmd_screen(args)
        if args.command == "hyperalg":
            return _cmd_hyperalg(args)
        _write(args, COMMANDS[args.command](args))
        return EXIT_OK
    except (RootSystemError, CharacterError, ModularError, ScreeningError, ValueError) as exc:
        print(f"stscreen: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
