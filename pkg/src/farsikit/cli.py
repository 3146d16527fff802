"""Command-line front end.

    farsikit normalize [FLAGS] [FILE ...]
    farsikit tokenize  [FLAGS] [FILE ...]
    farsikit check     [FLAGS] [FILE ...]

Input is read line by line as UTF-8 (stdin when no file, or ``-``).
Exit codes: 0 success, 1 violations found (check), 2 usage or
configuration error, 3 invalid UTF-8 input.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from dataclasses import dataclass
from typing import BinaryIO, Iterator

from .charset import TableParseError, default_mapping_table, read_mapping_table
from .conformance import Report, ReportFormat, check, render_report
from .morpho import (
    AffixLexicon,
    LexiconParseError,
    default_affix_lexicon,
    read_affix_lexicon,
    read_known_words,
)
from .normalizer import DigitMode, NormalizationConfig, normalize
from .pipeline import standardize_line
from .tokenizer import TokenizerConfig, read_abbreviations, tokenize

log = logging.getLogger("farsikit")

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_ENCODING = 0, 1, 2, 3

BOM = "﻿".encode()


def _error(message: str) -> None:
    # always on stderr, whatever logging setup a host process has
    print(f"farsikit: {message}", file=sys.stderr, flush=True)


class InputEncodingError(Exception):
    def __init__(self, name: str, offset: int, reason: str):
        super().__init__(f"{name}: invalid UTF-8 at byte offset {offset} ({reason})")
        self.offset = offset


@dataclass
class Settings:
    config: NormalizationConfig
    tokenizer: TokenizerConfig
    lexicon: AffixLexicon
    known_words: frozenset[str] | None
    repair: bool
    split: bool
    report_zwj: bool
    fmt: ReportFormat

    def standardize(self, line: str) -> str:
        return standardize_line(
            line, self.config, self.lexicon, self.tokenizer, self.known_words,
            repair=self.repair, split=self.split,
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", metavar="FILE", help="input files (default: stdin)")
    common.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")
    g = common.add_argument_group("normalization")
    g.add_argument("--no-map-variants", action="store_true", help="keep Arabic letter variants")
    g.add_argument("--keep-tatweel", action="store_true", help="do not delete TATWEEL (kashida)")
    g.add_argument("--keep-diacritics", action="store_true", help="do not strip short-vowel marks")
    g.add_argument("--digits", choices=["persian", "preserve"], default="persian",
                   help="map Arabic-Indic digits to Persian ones (default) or keep them")
    g.add_argument("--no-fix-zwnj", action="store_true", help="leave ZWNJ characters as they are")
    g.add_argument("--table", metavar="PATH", help="mapping table replacing the bundled one")
    g.add_argument("--extended", action="store_true", help="also map presentation forms and ligatures")
    g = common.add_argument_group("affixes")
    g.add_argument("--repair-affixes", dest="repair", action="store_true", default=True,
                   help="re-attach space-separated affixes (default)")
    g.add_argument("--no-repair-affixes", dest="repair", action="store_false",
                   help="leave space-separated affixes alone")
    g.add_argument("--split-attached", action="store_true",
                   help="insert ZWNJ into attached forms whose stem is in --known-words")
    g.add_argument("--affixes", metavar="PATH", help="affix lexicon file")
    g.add_argument("--known-words", metavar="PATH", help="known stems, one per line")
    g = common.add_argument_group("tokenization")
    g.add_argument("--abbrev", metavar="PATH", help="abbreviation list, one per line")
    g.add_argument("--no-dash-compounds", action="store_true", help="treat dashes as punctuation")
    g = common.add_argument_group("reporting")
    g.add_argument("--format", choices=["text", "json"], default="text", help="check report format")
    g.add_argument("--report-zwj", action="store_true", help="also report ZWJ characters")

    parser = argparse.ArgumentParser(prog="farsikit", description="Standardize Persian text.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("normalize", parents=[common], help="write the standardized text")
    sub.add_parser("tokenize", parents=[common], help="one token per line: KIND START END TEXT")
    sub.add_parser("check", parents=[common], help="report deviations from the standard")
    return parser


def load_settings(args: argparse.Namespace) -> Settings:
    """Parse every override file. Raises on any configuration problem."""
    if args.table:
        table = read_mapping_table(args.table)
        if args.extended:
            table = table.merged(default_mapping_table(extended=True))
    else:
        table = default_mapping_table(extended=args.extended)
    config = NormalizationConfig(
        map_variants=not args.no_map_variants,
        remove_tatweel=not args.keep_tatweel,
        strip_diacritics=not args.keep_diacritics,
        unify_digits=DigitMode(args.digits),
        fix_zwnj=not args.no_fix_zwnj,
        mapping=table,
    )
    abbreviations = read_abbreviations(args.abbrev) if args.abbrev else frozenset()
    tokenizer = TokenizerConfig(
        frozenset(normalize(a, config) for a in abbreviations),
        join_dash_compounds=not args.no_dash_compounds,
    )
    lexicon = read_affix_lexicon(args.affixes) if args.affixes else default_affix_lexicon()
    known = None
    if args.split_attached:
        if not args.known_words:
            raise ValueError("--split-attached needs --known-words")
        known = frozenset(normalize(w, config) for w in read_known_words(args.known_words))
    return Settings(
        config, tokenizer, lexicon, known, args.repair, args.split_attached,
        args.report_zwj, ReportFormat(args.format),
    )


def iter_lines(stream: BinaryIO, name: str) -> Iterator[tuple[str, bool, bool]]:
    """Yield ``(line, had_newline, had_bom)`` for each input line.

    A byte order mark at the very start of the stream is stripped and
    flagged on the first line; callers that echo text put it back.
    """
    offset = 0
    first = True
    for raw in stream:
        bom = first and raw.startswith(BOM)
        if bom:
            raw = raw[len(BOM):]
            offset += len(BOM)
        first = False
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputEncodingError(name, offset + exc.start, exc.reason) from None
        offset += len(raw)
        if text.endswith("\n"):
            yield text[:-1], True, bom
        else:
            yield text, False, bom


def run_normalize(stream, name, out, settings: Settings) -> int:
    for line, newline, bom in iter_lines(stream, name):
        if bom:
            out.write(BOM)
        out.write(settings.standardize(line).encode())
        if newline:
            out.write(b"\n")
        out.flush()
    return EXIT_OK


def run_tokenize(stream, name, out, settings: Settings) -> int:
    offset = 0
    for line, newline, _ in iter_lines(stream, name):
        text = settings.standardize(line)
        for tok in tokenize(text, settings.tokenizer):
            out.write(
                f"{tok.kind.value}\t{offset + tok.start}\t{offset + tok.end}\t{tok.text}\n".encode()
            )
        offset += len(text) + (1 if newline else 0)
    return EXIT_OK


def run_check(stream, name, out, settings: Settings, header: bool) -> int:
    violations = []
    offset = 0
    for line, newline, _ in iter_lines(stream, name):
        report = check(
            line, settings.config, settings.lexicon,
            tokenizer_config=settings.tokenizer, known_words=settings.known_words,
            repair=settings.repair, split=settings.split, report_zwj=settings.report_zwj,
        )
        for v in report.violations:
            violations.append(
                dataclasses.replace(v, span=(v.start + offset, v.end + offset))
            )
        offset += len(line) + (1 if newline else 0)
    report = Report(tuple(violations), offset)
    if header and settings.fmt is ReportFormat.TEXT:
        out.write(f"==> {name} <==\n".encode())
    body = render_report(report, settings.fmt)
    out.write(body if settings.fmt is ReportFormat.TEXT else body + b"\n")
    return EXIT_OK if report.clean else EXIT_VIOLATIONS


def _open_inputs(paths):
    if not paths:
        yield "<stdin>", sys.stdin.buffer
        return
    for path in paths:
        if path == "-":
            yield "<stdin>", sys.stdin.buffer
        else:
            with open(path, "rb") as fh:
                yield path, fh


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="farsikit: %(message)s")
    try:
        settings = load_settings(args)
    except FileNotFoundError as exc:
        _error(f"{exc.filename}: {exc.strerror}")
        return EXIT_USAGE
    except (TableParseError, LexiconParseError, ValueError, OSError) as exc:
        _error(str(exc))
        return EXIT_USAGE
    for path in args.inputs:
        if path != "-" and not _readable(path):
            _error(f"{path}: cannot read input")
            return EXIT_USAGE

    status = EXIT_OK
    out = open(args.output, "wb") if args.output else sys.stdout.buffer
    try:
        for name, stream in _open_inputs(args.inputs):
            log.debug("processing %s", name)
            if args.command == "normalize":
                code = run_normalize(stream, name, out, settings)
            elif args.command == "tokenize":
                code = run_tokenize(stream, name, out, settings)
            else:
                code = run_check(stream, name, out, settings, header=len(args.inputs) > 1)
            status = max(status, code)
    except InputEncodingError as exc:
        _error(str(exc))
        return EXIT_ENCODING
    finally:
        out.flush()
        if args.output:
            out.close()
    return status


def _readable(path: str) -> bool:
    try:
        with open(path, "rb"):
            return True
    except OSError:
        return False


if __name__ == "__main__":
    sys.exit(main())
