"""Command-line entry point: ``morphic-conjugacy <command> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
error, 3 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import presets
from .conjugacy import complete_classes_up_to
from .factors import (
    CODED_LEVEL,
    DEFAULT_MAX_MEMBERS,
    UNDERLYING_LEVEL,
    MembershipOracle,
    ResourceError,
    closure_factor_set,
    coded_factor_set,
    coding_span,
)
from .morphism import FixedPointStream, Morphism, MorphismParseError, compose, parse_morphism, power
from .verifier import Config, PaperVerifier

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_tables(args) -> tuple[Morphism, Morphism]:
    """F and G from the preset, with optional file overrides."""
    if args.preset not in presets.PRESETS:
        raise UsageError(f"unknown preset {args.preset!r}")
    F = presets.PRESETS[args.preset]["F"]
    G = presets.PRESETS[args.preset]["G"]
    if args.underlying_morphism:
        F = _read_morphism(args.underlying_morphism, "F")
    if args.coding_morphism:
        G = _read_morphism(args.coding_morphism, "G")
    if not F.is_endomorphism:
        raise UsageError("underlying morphism must map its alphabet to itself")
    if G.source != F.source:
        raise UsageError("coding morphism must be defined on the underlying alphabet")
    return F, G


def _read_morphism(path: str, name: str) -> Morphism:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    try:
        m = parse_morphism(text)
    except MorphismParseError as e:
        raise UsageError(f"{path}: {e}") from None
    return Morphism(m.source, m.target, m.images, name=name)


def derived(F: Morphism, G: Morphism) -> tuple[Morphism, Morphism]:
    f = power(F, 3)
    g = compose(G, power(F, 2))
    return (Morphism(f.source, f.target, f.images, name="f"),
            Morphism(g.source, g.target, g.images, name="g"))


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    F, G = load_tables(args)
    n = args.length
    if n < 0:
        raise UsageError("length must be non-negative")
    if n == 0:
        _emit(args, "")
        return EXIT_OK
    stream = FixedPointStream(F, args.seed)
    if args.level == UNDERLYING_LEVEL:
        word = stream.prefix(n)[:n]
    else:
        size = n
        while True:
            word = G.apply(stream.prefix(size))
            if len(word) >= n:
                break
            size *= 2
        word = word[:n]
    _emit(args, word + "\n")
    return EXIT_OK


def _oracle(args) -> MembershipOracle:
    F, G = load_tables(args)
    f, g = derived(F, G)
    try:
        return MembershipOracle(f, args.seed, g, args.underlying_marker, args.coded_marker,
                                base_bound=args.base_bound)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_member(args) -> int:
    oracle = _oracle(args)
    alphabet = oracle.alphabet(args.level)
    try:
        alphabet.check(args.word)
    except ValueError as e:
        raise UsageError(str(e)) from None
    verdict = oracle.decide(args.word, args.level)
    if args.format == "json":
        payload = verdict.to_dict(args.max_word_len)
        payload["replayed"] = oracle.replay(verdict)
        _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        _emit(args, f"{verdict.verdict}\n")
    return EXIT_OK


def cmd_classes(args) -> int:
    F, G = load_tables(args)
    f, g = derived(F, G)
    n = args.max_len
    found = []
    if n >= 2:
        if args.level == UNDERLYING_LEVEL:
            universe = closure_factor_set(f, args.seed, n, max_members=args.budget)
            alphabet = f.source
        else:
            under = closure_factor_set(f, args.seed, coding_span(n, g), max_members=args.budget)
            universe = coded_factor_set(under, g, n, max_members=args.budget)
            alphabet = g.target
        found = complete_classes_up_to(universe, n, index_filter=args.max_index, alphabet=alphabet)
    if args.format == "json":
        payload = {
            "level": args.level,
            "max_len": n,
            "max_index": args.max_index,
            "count": len(found),
            "classes": [{"canonical": c.canonical, "length": c.length, "index": c.index} for c in found],
        }
        _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = [f"{c.canonical}  length={c.length} index={c.index}" for c in found]
        lines.append(f"{len(found)} complete classes")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    F, G = load_tables(args)
    if args.max_d < args.min_d:
        raise UsageError("--max-d must be at least --min-d")
    config = Config(F=F, G=G, max_d=args.max_d, min_d=args.min_d,
                    theorem_max_len=args.max_len, base_bound=args.base_bound)
    report = PaperVerifier(config).full_report()
    timing = not args.no_timing
    text = report.to_json(timing) + "\n" if args.format == "json" else report.to_text(timing)
    _emit(args, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_preset(args) -> int:
    F, G = load_tables(args)
    f, g = derived(F, G)
    table = {"F": F, "G": G, "f": f, "g": g}[args.name]
    _emit(args, table.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphic-conjugacy",
        description="Morphic words, factor membership and conjugacy-class avoidance.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", default="paper")
    common.add_argument("--underlying-morphism", metavar="FILE", help="replaces F")
    common.add_argument("--coding-morphism", metavar="FILE", help="replaces G")
    common.add_argument("--seed", default=presets.SEED)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", metavar="PATH")

    level = argparse.ArgumentParser(add_help=False)
    level.add_argument("--level", choices=(UNDERLYING_LEVEL, CODED_LEVEL), default=UNDERLYING_LEVEL)

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--underlying-marker", default=presets.UNDERLYING_MARKER)
    oracle.add_argument("--coded-marker", default=presets.CODED_MARKER)
    oracle.add_argument("--base-bound", type=int, default=200)

    p = sub.add_parser("generate", parents=[common, level], help="print a prefix of the word")
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("member", parents=[common, level, oracle], help="decide factor membership")
    p.add_argument("word")
    p.add_argument("--max-word-len", type=int, default=None,
                   help="digest words longer than this in JSON certificates")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("classes", parents=[common, level], help="list complete conjugacy classes")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-index", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_MEMBERS, help="max factor-set members")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("verify-paper", parents=[common], help="run every check")
    p.add_argument("--base-bound", type=int, default=200)
    p.add_argument("--max-d", type=int, default=5)
    p.add_argument("--min-d", type=int, default=0)
    p.add_argument("--max-len", type=int, default=100, help="longest class length for the w5 check")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("preset", parents=[common], help="print a morphism table in file format")
    p.add_argument("name", choices=("F", "G", "f", "g"))
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as e:
        print(f"resource budget exceeded: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
