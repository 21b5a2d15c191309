"""Command line interface: compile, annotate, eval, bench.

Exit codes: 0 success, 1 usage error, 2 resource error, 3 I/O error.
"""

import argparse
import logging
import sys

from .annotator import annotate_text, read_dags
from .bench import benchmark, synthetic_text
from .build import CompileError, compile_bundle
from .evaluator import AlignmentError, UnmappedTagError, evaluate, load_reference, parse_downgrade_map
from .lexicon import CompiledLexicon, LexiconFormatError
from .resources import ResourceError, load_manifest

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3

ENCODINGS = {"utf8": "utf-8", "utf16le": "utf-16-le"}

log = logging.getLogger("korlex")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(code, message):
    print(f"error: {message}", file=sys.stderr)
    return code


def read_text(path, encoding):
    """Read and decode a text file; decoding errors name the byte offset."""
    with open(path, "rb") as f:
        data = f.read()
    codec = ENCODINGS[encoding]
    if codec == "utf-16-le" and data.startswith(b"\xff\xfe"):
        data = data[2:]
    try:
        return data.decode(codec)
    except UnicodeDecodeError as e:
        raise UnicodeDecodeError(
            e.encoding, e.object, e.start, e.end, f"{e.reason} at byte offset {e.start}"
        ) from None


def load_lexicon(path):
    return CompiledLexicon.load(path)


def _print_report(report, verbose):
    for key, value in report.items():
        if key == "timings":
            continue
        if isinstance(value, dict):
            for sub, v in value.items():
                print(f"{key}.{sub}={v}")
        else:
            print(f"{key}={value}")
    if verbose:
        for step, seconds in report["timings"].items():
            print(f"# {step}: {seconds:.3f} s", file=sys.stderr)


def cmd_compile(args):
    try:
        manifest = load_manifest(args.manifest)
    except OSError as e:
        return _fail(EXIT_IO, f"cannot read manifest: {e}")
    except (ResourceError, ValueError) as e:
        return _fail(EXIT_RESOURCE, f"step 1 (parse resources): {e}")
    if args.unroll_bound is not None:
        manifest.unroll_bound = args.unroll_bound
    if args.no_derived_allomorphs:
        manifest.allomorphs_of_derived = False
    output = args.output or manifest.output
    if output is None:
        raise UsageError("no output path: pass --output or set 'output' in the manifest")
    try:
        lexicon, report = compile_bundle(manifest)
    except CompileError as e:
        return _fail(EXIT_RESOURCE, str(e))
    try:
        lexicon.save(output)
    except OSError as e:
        return _fail(EXIT_IO, f"cannot write lexicon: {e}")
    report["output"] = output
    _print_report(report, args.verbose)
    return EXIT_OK


def cmd_annotate(args):
    try:
        lexicon = load_lexicon(args.lexicon)
        text = read_text(args.input, args.encoding)
    except (OSError, UnicodeDecodeError) as e:
        return _fail(EXIT_IO, str(e))
    except LexiconFormatError as e:
        return _fail(EXIT_RESOURCE, f"{args.lexicon}: {e}")
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as sink:
            n = annotate_text(lexicon, text, sink)
    except OSError as e:
        return _fail(EXIT_IO, str(e))
    if args.verbose:
        print(f"# {n} sentences", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args):
    try:
        with open(args.system, encoding="utf-8") as f:
            dags = list(read_dags(f))
        reference = load_reference(args.reference)
        dmap = parse_downgrade_map(args.map)
    except OSError as e:
        return _fail(EXIT_IO, str(e))
    except (ResourceError, ValueError) as e:
        return _fail(EXIT_RESOURCE, str(e))
    try:
        scores = evaluate(dags, reference, dmap)
    except (AlignmentError, UnmappedTagError) as e:
        return _fail(EXIT_RESOURCE, str(e))
    print(scores.format())
    return EXIT_OK


def cmd_bench(args):
    try:
        lexicon = load_lexicon(args.lexicon)
        if args.input:
            text = read_text(args.input, args.encoding)
        else:
            text = synthetic_text(lexicon, args.synthetic, seed=args.seed)
    except (OSError, UnicodeDecodeError) as e:
        return _fail(EXIT_IO, str(e))
    except (LexiconFormatError, ValueError) as e:
        return _fail(EXIT_RESOURCE, str(e))
    result = benchmark(lexicon, text)
    print(f"words={result['words']}")
    print(f"seconds={result['seconds']:.6f}")
    print(f"words_per_second={result['words_per_second']:.1f}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="korlex", description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", action="store_true", help="log steps and timings")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("compile", parents=[common], help="compile a resource bundle into a word lexicon")
    p.add_argument("manifest")
    p.add_argument("--output", "-o")
    p.add_argument("--unroll-bound", type=int)
    p.add_argument("--no-derived-allomorphs", action="store_true",
                   help="do not generate allomorphs of derived stems")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("annotate", parents=[common], help="annotate text into morpheme DAGs")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--encoding", choices=sorted(ENCODINGS), default="utf8")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("eval", parents=[common], help="score DAGs against a reference corpus")
    p.add_argument("--system", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", parents=[common], help="measure annotation throughput")
    p.add_argument("--lexicon", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--input")
    group.add_argument("--synthetic", type=int, metavar="N", help="generate N random words")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--encoding", choices=sorted(ENCODINGS), default="utf8")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "compile" and args.unroll_bound is not None and args.unroll_bound < 1:
        parser.error("--unroll-bound must be a positive integer")
    try:
        return args.func(args)
    except UsageError as e:
        return _fail(EXIT_USAGE, str(e))


if __name__ == "__main__":
    sys.exit(main())
