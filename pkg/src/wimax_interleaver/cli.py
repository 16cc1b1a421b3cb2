"""``wimax-il`` command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments or
parameters, 3 I/O or input-data failure. Payload goes to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from . import analysis
from .bitstream import IOFormat, PartialPolicy, process_stream
from .errors import ParameterError, StreamError
from .permutation import (
    DEFAULT_ROWS,
    VALID_ROW_COUNTS,
    Direction,
    ModulationScheme,
    make_params,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _modulation(text: str) -> ModulationScheme:
    try:
        return ModulationScheme.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} must be >= 0")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wimax-il", description="IEEE 802.16 channel (de)interleaver tools")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    block = argparse.ArgumentParser(add_help=False)
    block.add_argument("--mod", type=_modulation, required=True, help="qpsk, 16qam or 64qam")
    block.add_argument("--ncpbs", type=int, required=True, help="block size in bits")
    rows = argparse.ArgumentParser(add_help=False)
    rows.add_argument("--d", type=int, default=DEFAULT_ROWS, choices=VALID_ROW_COUNTS,
                      help="row count of the block (default 16)")

    p = sub.add_parser("table", parents=[block, rows], help="print deinterleaver address table")
    p.add_argument("--rows", type=_non_negative, help="rows to print (default d)")
    p.add_argument("--cols", type=_non_negative, help="columns to print (default ncpbs/d)")
    p.add_argument("--format", dest="table_format", choices=("txt", "csv"), default="txt")

    for name in ("interleave", "deinterleave"):
        p = sub.add_parser(name, parents=[block, rows], help=f"{name} a bit stream")
        p.add_argument("-i", "--input", help="input path (default stdin)")
        p.add_argument("-o", "--output", help="output path (default stdout)")
        p.add_argument("--io-format", choices=("ascii", "raw"), default="ascii")
        p.add_argument("--partial", choices=("strict", "pad"), default="strict",
                       help="trailing partial frame: error (strict) or zero-fill (pad)")
        p.add_argument("--bits", type=_non_negative,
                       help="declared bit count of raw input (trims the last byte)")

    p = sub.add_parser("verify", parents=[rows], help="check floor-free generator against oracle")
    p.add_argument("--mod", type=_modulation)
    p.add_argument("--ncpbs", type=int)
    p.add_argument("--all", action="store_true", help="every valid depth up to --max-ncpbs")
    p.add_argument("--max-ncpbs", type=int, default=4608)

    p = sub.add_parser("sweep", parents=[rows], help="list valid depths per modulation")
    p.add_argument("--max-ncpbs", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="also run equivalence on each depth")

    p = sub.add_parser("disperse", parents=[block, rows], help="burst dispersion report (JSON)")
    p.add_argument("--start", type=int, default=0, help="first received index of the burst")
    p.add_argument("--len", dest="burst_len", type=int, required=True, help="burst length")

    return parser


@contextlib.contextmanager
def _open_stream(path, mode, default):
    if path is None or path == "-":
        yield default
    else:
        with open(path, mode) as fh:
            yield fh


def _cmd_table(args, out, err) -> int:
    params = make_params(args.mod, args.ncpbs, args.d)
    table = analysis.emit_address_table(params, args.rows, args.cols)
    out.write(table.format(args.table_format))
    return EXIT_OK


def _cmd_stream(args, out, err) -> int:
    params = make_params(args.mod, args.ncpbs, args.d)
    direction = Direction(args.command)
    stdin = sys.stdin.buffer
    stdout = getattr(out, "buffer", out)
    try:
        with _open_stream(args.input, "rb", stdin) as src, \
                _open_stream(args.output, "wb", stdout) as dst:
            result = process_stream(
                params,
                direction,
                src,
                dst,
                partial_policy=PartialPolicy(args.partial),
                io_format=IOFormat(args.io_format),
                bit_count=args.bits,
            )
    except OSError as exc:
        err.write(f"wimax-il: {exc}\n")
        return EXIT_IO
    if result.pad_bits:
        err.write(f"wimax-il: padded final frame with {result.pad_bits} zero bits\n")
    return EXIT_OK


def _cmd_verify(args, out, err) -> int:
    if args.all:
        reports = [
            r for _, rs in analysis.sweep_depths(args.max_ncpbs, args.d, verify=True) for r in rs
        ]
    else:
        if args.mod is None or args.ncpbs is None:
            err.write("wimax-il: verify needs --mod and --ncpbs, or --all\n")
            return EXIT_USAGE
        reports = [analysis.verify_equivalence(make_params(args.mod, args.ncpbs, args.d))]
    # ascending ncpbs, then modulation order
    order = {m: i for i, m in enumerate(analysis.MODULATION_ORDER)}
    reports.sort(key=lambda r: (r.params.ncpbs, order[r.params.modulation]))
    failed = 0
    for report in reports:
        out.write(report.summary() + "\n")
        for m in report.mismatches[:10]:
            err.write(f"  n={m.n} oracle={m.oracle_address} floorless={m.floorless_address}\n")
        failed += not report.passed
    err.write(f"wimax-il: {len(reports)} parameter sets, {failed} failed\n")
    return EXIT_MISMATCH if failed else EXIT_OK


def _cmd_sweep(args, out, err) -> int:
    failed = 0
    for mod, depths in analysis.sweep_depths(args.max_ncpbs, args.d, verify=args.verify):
        if args.verify:
            failed += sum(not r.passed for r in depths)
            cells = [f"{r.params.ncpbs}{'' if r.passed else '!'}" for r in depths]
        else:
            cells = [str(n) for n in depths]
        out.write(f"{mod.label}: {' '.join(cells)}".rstrip() + "\n")
    return EXIT_MISMATCH if failed else EXIT_OK


def _cmd_disperse(args, out, err) -> int:
    params = make_params(args.mod, args.ncpbs, args.d)
    report = analysis.burst_dispersion(params, args.start, args.burst_len)
    out.write(report.to_json() + "\n")
    return EXIT_OK


_COMMANDS = {
    "table": _cmd_table,
    "interleave": _cmd_stream,
    "deinterleave": _cmd_stream,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "disperse": _cmd_disperse,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out, err)
    except ParameterError as exc:
        err.write(f"wimax-il: invalid parameters: {exc}\n")
        return EXIT_USAGE
    except StreamError as exc:
        err.write(f"wimax-il: {exc}\n")
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
