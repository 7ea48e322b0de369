"""Command line: ``dpsort {generate,bench,oracle,sort}``.

Exit codes: 0 success, 1 usage or I/O error, 2 verification failure.

``bench --format=csv`` columns, in order:
pipeline, variant, strategy, seed, confirm_boundaries, reduce_alphabet,
threads, n, k, sigma, D, d, symbols_inspected, rounds_executed,
per_round_active (space separated), wall_time_total, checksum, verified.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench, formats, oracle
from .corpus import PROFILES, CorpusSpec, generate
from .pipeline import SortConfig, d_aware_sort
from .scan import set_num_threads
from .semisort import Strategy

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _on_off(value):
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _add_sort_flags(p):
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="write here instead of stdout")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: hardware parallelism)")
    p.add_argument("--seed", type=int, default=0, help="fingerprint base seed")
    p.add_argument("--variant", choices=("full", "relaxed"), default="full")
    p.add_argument("--semisort", choices=[s.value for s in Strategy], default="hybrid")
    p.add_argument("--confirm-boundaries", type=_on_off, default=True, metavar="{on,off}")
    p.add_argument("--reduce-alphabet", type=_on_off, default=False, metavar="{on,off}")


def build_parser():
    parser = _Parser(prog="dpsort", description=__doc__.split("\n\n")[0],
                     epilog=__doc__.split("\n\n", 1)[1],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a synthetic corpus")
    g.add_argument("--output", required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--profile", choices=PROFILES, default="random")
    g.add_argument("--sigma", type=int, default=26)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--tail-length", type=int, default=0)
    g.add_argument("--groups", type=int, default=1, help="clustered: number of groups")
    g.add_argument("--prefix-length", type=int, default=0,
                   help="clustered: length of the shared group prefix")
    g.add_argument("--min-length", type=int, default=1, help="random: shortest body")
    g.add_argument("--max-length", type=int, default=16, help="random: longest body")
    g.add_argument("--dictionary", help="dictionary: newline-delimited word list")
    g.add_argument("--encoding", choices=("auto", "text", "binary"), default="auto")

    b = sub.add_parser("bench", help="sort a corpus and report work counters")
    _add_sort_flags(b)
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.add_argument("--verify", action="store_true",
                   help="check the permutation and L bounds against the oracle")
    b.add_argument("--baseline", action="store_true",
                   help="sort the untruncated strings instead (prefix-unaware baseline)")

    o = sub.add_parser("oracle", help="print exact relevant prefix lengths as JSON")
    o.add_argument("--input", required=True)
    o.add_argument("--output")

    s = sub.add_parser("sort", help="sort a corpus")
    _add_sort_flags(s)
    s.add_argument("--emit-order", action="store_true",
                   help="print 1-based string indices instead of the sorted strings")
    return parser


def _write(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args):
    return SortConfig(variant=args.variant, strategy=args.semisort, seed=args.seed,
                      confirm_boundaries=args.confirm_boundaries,
                      reduce_alphabet=args.reduce_alphabet)


def _generate(args):
    spec = CorpusSpec(k=args.k, profile=args.profile, sigma=args.sigma, seed=args.seed,
                      tail_length=args.tail_length, groups=args.groups,
                      prefix_length=args.prefix_length, min_length=args.min_length,
                      max_length=args.max_length, dictionary=args.dictionary)
    formats.save(generate(spec), args.output, args.encoding)
    return EXIT_OK


def _bench(args):
    strings = formats.load(args.input)
    try:
        report = bench.run(strings, _config(args), baseline=args.baseline, verify=args.verify)
        code = EXIT_OK
    except bench.VerifyFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        report, code = exc.report, EXIT_VERIFY
    text = bench.to_json(report) + "\n" if args.format == "json" else bench.to_csv([report])
    _write(args.output, text)
    return code


def _oracle(args):
    info = oracle.relevant_prefixes(formats.load(args.input))
    _write(args.output, json.dumps(info.as_dict()) + "\n")
    return EXIT_OK


def _sort(args):
    strings = formats.load(args.input)
    result = d_aware_sort(strings, _config(args))
    if args.emit_order:
        _write(args.output, "".join(f"{i + 1}\n" for i in result.order))
    elif args.output:
        formats.save(strings.subset(result.order), args.output)
    else:
        sys.stdout.buffer.write(formats.dump_text(strings.subset(result.order)))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "threads", None) is not None:
            set_num_threads(args.threads)
        handler = {"generate": _generate, "bench": _bench,
                   "oracle": _oracle, "sort": _sort}[args.command]
        return handler(args)
    except (OSError, ValueError) as exc:
        print(f"dpsort: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
