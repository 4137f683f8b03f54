"""Command-line front end: ``dhtrand {gen,dht,measure,table,plot}``.

Exit status is 0 on success, 1 on usage errors and 2 when a computation or
input file fails. Data goes to stdout (or ``--out``), diagnostics to stderr.
"""
import argparse
import os
import sys

from . import __version__, experiments
from .errors import DhtRandError, InvalidConfigError
from .measure import measure
from .sequences import (
    DSequence,
    SwitchSpec,
    Switch,
    dsequence,
    format_bitstring,
    parse_bitstring,
    prng_bits,
    switch_sequence,
)
from .transform import DhtKernel, dht, format_real_sequence, parse_real_sequence

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _u64(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return value


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _nonneg(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text}")
    return value


def _positions(text):
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad position list: {text!r}") from None


def _kernel(text):
    try:
        return DhtKernel(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid kernel {text!r} (choose from direct, matrix, fast)") from None


def build_parser():
    parser = _Parser(prog="dhtrand", description="DHT-based randomness measures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    out = _Parser(add_help=False)
    out.add_argument("--out", metavar="FILE", help="write data here instead of stdout")

    gen = sub.add_parser("gen", help="generate a bit sequence")
    gen_sub = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    p = gen_sub.add_parser("dseq", parents=[out], help="binary expansion of 1/P")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--length", type=_positive)
    p = gen_sub.add_parser("switch", parents=[out], help="switch sequence")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--switches", type=_nonneg)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--positions", type=_positions, help="explicit 1-indexed flips, e.g. 5,36,56,70")
    p = gen_sub.add_parser("prng", parents=[out], help="PRNG bitstream")
    p.add_argument("--length", type=_nonneg, required=True)
    p.add_argument("--seed", type=_u64, required=True)

    p = sub.add_parser("dht", parents=[out], help="transform a bit or real sequence")
    p.add_argument("--in", dest="input", required=True, metavar="FILE", help="'-' for stdin")
    p.add_argument("--kernel", type=_kernel, required=True)

    p = sub.add_parser("measure", parents=[out], help="randomness report for a bitstring")
    p.add_argument("--in", dest="input", required=True, metavar="FILE", help="'-' for stdin")
    p.add_argument("--kernel", type=_kernel)
    p.add_argument("--machine", action="store_true", help="17 significant digits")

    table = sub.add_parser("table", help="reproduce a result table as CSV")
    table_sub = table.add_subparsers(dest="family", required=True, parser_class=_Parser)
    for name in ("switch", "dseq", "prng"):
        p = table_sub.add_parser(name, parents=[out])
        p.add_argument("--trials", type=_positive)
        p.add_argument("--seed", type=_u64)
        p.add_argument("--config", metavar="FILE", help="flat 'key = value' file")
        p.add_argument("--jobs", type=_positive, default=None,
                       help="worker processes (default: available cores)")

    plot = sub.add_parser("plot", help="figure data as CSV or SVG")
    plot_sub = plot.add_subparsers(dest="source", required=True, parser_class=_Parser)
    figure = _Parser(add_help=False, parents=[out])
    figure.add_argument("--svg", action="store_true")
    p = plot_sub.add_parser("dseq", parents=[figure])
    p.add_argument("--prime", type=int, required=True)
    p = plot_sub.add_parser("switch", parents=[figure])
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--switches", type=_nonneg, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p = plot_sub.add_parser("file", parents=[figure])
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    return parser


def _read(path, stdin):
    if path == "-":
        return stdin.read()
    with open(path, encoding="ascii", errors="replace") as fh:
        return fh.read()


def _write(text, path, stdout):
    if path is None or path == "-":
        stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _looks_like_bitstring(text):
    body = text.rstrip("\r\n")
    return "\n" not in body and body != "" and set(body) <= {"0", "1"}


def read_config(text):
    """Parse ``key = value`` lines; list values are comma separated."""
    known = {"lengths", "switches", "primes", "trials", "seed"}
    config = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise InvalidConfigError(f"config line {lineno}: unrecognised entry {raw.strip()!r}")
        try:
            items = [int(v, 0) for v in value.replace(",", " ").split()]
        except ValueError:
            raise InvalidConfigError(f"config line {lineno}: expected integers") from None
        if key in ("trials", "seed"):
            if len(items) != 1:
                raise InvalidConfigError(f"config line {lineno}: {key} takes one value")
            config[key] = items[0]
        else:
            config[key] = items
    return config


def _cmd_gen(args, io):
    if args.family == "dseq":
        seq = dsequence(args.prime, args.length)
    elif args.family == "prng":
        seq = prng_bits(args.seed, args.length)
    else:
        if args.positions is not None:
            if args.switches is not None and 2 * args.switches != len(args.positions):
                raise UsageError("--switches S needs exactly 2*S --positions")
            spec = SwitchSpec.explicit(args.positions)
        elif args.switches is None:
            raise UsageError("gen switch: one of --switches or --positions is required")
        else:
            spec = SwitchSpec.random(args.switches, args.seed)
        seq = switch_sequence(args.length, spec)
    _write(format_bitstring(seq), args.out, io[1])


def _cmd_dht(args, io):
    text = _read(args.input, io[0])
    x = parse_bitstring(text).as_real() if _looks_like_bitstring(text) else parse_real_sequence(text)
    _write(format_real_sequence(dht(x, args.kernel)), args.out, io[1])


def _cmd_measure(args, io):
    seq = parse_bitstring(_read(args.input, io[0]))
    report = measure(seq, args.kernel)
    _write(report.format(machine=args.machine), args.out, io[1])


def _cmd_table(args, io):
    config = read_config(_read(args.config, io[0])) if args.config else {}
    trials = args.trials or config.get("trials", experiments.DEFAULT_TRIALS)
    seed = args.seed if args.seed is not None else config.get("seed", experiments.DEFAULT_SEED)
    jobs = args.jobs or os.cpu_count() or 1
    if args.family == "switch":
        rows = experiments.switch_table(config.get("lengths", experiments.SWITCH_LENGTHS),
                                        config.get("switches", experiments.SWITCH_COUNTS),
                                        trials=trials, seed=seed, jobs=jobs)
    elif args.family == "prng":
        rows = experiments.prng_table(config.get("lengths", experiments.PRNG_LENGTHS),
                                      trials=trials, seed=seed, jobs=jobs)
    else:
        rows = experiments.dseq_table(config.get("primes", experiments.DSEQ_PRIMES))
        io[2].write(experiments.dseq_deviation_report(rows))
    _write(experiments.format_table_csv(rows), args.out, io[1])


def _cmd_plot(args, io):
    if args.source == "dseq":
        source = DSequence(args.prime)
    elif args.source == "switch":
        source = Switch(args.length, SwitchSpec.random(args.switches, args.seed))
    else:
        source = parse_bitstring(_read(args.input, io[0]))
    series = experiments.figure_series(source)
    if args.svg:
        text = experiments.figure_svg(series)
    else:
        text = experiments.format_figure_csv(series)
    _write(text, args.out, io[1])


COMMANDS = {
    "gen": _cmd_gen,
    "dht": _cmd_dht,
    "measure": _cmd_measure,
    "table": _cmd_table,
    "plot": _cmd_plot,
}


def run(argv=None, stdin=None, stdout=None, stderr=None):
    """Run one command and return its exit status."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help / --version
            return EXIT_OK if not exc.code else EXIT_USAGE
        COMMANDS[args.command](args, (stdin, stdout, stderr))
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (DhtRandError, OSError) as exc:
        stderr.write(f"dhtrand: error: {exc}\n")
        return EXIT_COMPUTE
    return EXIT_OK


def main():
    sys.exit(run())
