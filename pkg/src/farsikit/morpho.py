"""Affix boundary repair.

Bound morphemes written as free words ("کتاب ها") are re-attached to their
stem with a ZWNJ. The work is driven by an affix lexicon: only listed forms
are ever moved, and forms marked ``separate`` are never attached.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import BinaryIO, Iterable, Sequence

from .charset import ZWNJ, JoiningClass, joining_class
from .tokenizer import FULL_STOPS, Token, TokenKind

__all__ = [
    "Side",
    "Join",
    "AffixEntry",
    "AffixLexicon",
    "LexiconParseError",
    "default_affix_lexicon",
    "load_affix_lexicon",
    "read_affix_lexicon",
    "load_known_words",
    "read_known_words",
    "join_affix",
    "repair_affixes",
    "split_attached",
]


class Side(enum.Enum):
    PREFIX = "prefix"
    SUFFIX = "suffix"
    WORD = "word"


class Join(enum.Enum):
    ZWNJ = "zwnj"
    SEPARATE = "separate"


class LexiconParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class AffixEntry:
    form: str
    side: Side
    join: Join

    def __post_init__(self):
        if not self.form:
            raise ValueError("affix form must be nonempty")
        if ZWNJ in self.form or any(ch.isspace() for ch in self.form):
            raise ValueError(f"affix form {self.form!r} contains a space or ZWNJ")
        if self.side is Side.WORD and self.join is not Join.SEPARATE:
            raise ValueError(f"free word {self.form!r} must be marked separate")


# function words that never host a plural or comparative suffix
DEFAULT_STEM_EXCEPTIONS = frozenset({"و", "یا", "از", "با", "تا", "اگر", "چون"})


@dataclass(frozen=True)
class AffixLexicon:
    entries: frozenset[AffixEntry]
    stem_exceptions: frozenset[str] = field(default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "entries", frozenset(self.entries))
        object.__setattr__(self, "stem_exceptions", frozenset(self.stem_exceptions))
        seen = {}
        for entry in self.entries:
            other = seen.get(entry.form)
            if other is not None and other != entry:
                # one entry per form keeps the grouping of a token run unambiguous
                raise ValueError(f"form {entry.form!r} is listed twice with different roles")
            seen[entry.form] = entry

    @cached_property
    def by_form(self) -> dict[str, AffixEntry]:
        return {e.form: e for e in self.entries}

    @cached_property
    def suffixes(self) -> frozenset[str]:
        return frozenset(
            e.form for e in self.entries if e.side is Side.SUFFIX and e.join is Join.ZWNJ
        )

    @cached_property
    def prefixes(self) -> frozenset[str]:
        return frozenset(
            e.form for e in self.entries if e.side is Side.PREFIX and e.join is Join.ZWNJ
        )

    def __contains__(self, form: str) -> bool:
        return form in self.by_form


def _lines(source) -> Iterable[tuple[int, str]]:
    if isinstance(source, (bytes, bytearray)):
        source = source.splitlines()
    for lineno, raw in enumerate(source, 1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise LexiconParseError(f"invalid UTF-8 ({exc.reason})", lineno) from None
        line = raw.split("#", 1)[0].rstrip("\r\n")
        if line.strip():
            yield lineno, line


def load_affix_lexicon(
    source: BinaryIO | bytes,
    stem_exceptions: Iterable[str] = DEFAULT_STEM_EXCEPTIONS,
) -> AffixLexicon:
    """Parse ``FORM<TAB>SIDE<TAB>JOIN`` lines into a lexicon."""
    entries = []
    for lineno, line in _lines(source):
        parts = [p.strip() for p in line.split("\t")]
        if len(parts) != 3:
            raise LexiconParseError("expected FORM, SIDE and JOIN separated by tabs", lineno)
        form, side, join = parts
        try:
            entries.append(AffixEntry(form, Side(side.lower()), Join(join.lower())))
        except ValueError as exc:
            raise LexiconParseError(str(exc), lineno) from None
    try:
        return AffixLexicon(frozenset(entries), frozenset(stem_exceptions))
    except ValueError as exc:
        raise LexiconParseError(str(exc)) from None


def read_affix_lexicon(path, stem_exceptions: Iterable[str] = DEFAULT_STEM_EXCEPTIONS) -> AffixLexicon:
    with open(path, "rb") as fh:
        return load_affix_lexicon(fh, stem_exceptions)


_DEFAULT_LEXICON = None


def default_affix_lexicon() -> AffixLexicon:
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        data = resources.files("farsikit").joinpath("data", "affixes.tsv").read_bytes()
        _DEFAULT_LEXICON = load_affix_lexicon(data)
    return _DEFAULT_LEXICON


def load_known_words(source: BinaryIO | bytes | Iterable[str]) -> frozenset[str]:
    """One word per line; blank lines and ``#`` comments are skipped."""
    return frozenset(line.strip() for _, line in _lines(source))


def read_known_words(path) -> frozenset[str]:
    with open(path, "rb") as fh:
        return load_known_words(fh)


def join_affix(left: str, right: str) -> str:
    """Concatenate with a ZWNJ, unless the ZWNJ would break no joining.

    The ZWNJ is kept only when the last non-transparent character of
    ``left`` joins forward; this matches what ZWNJ repair would leave.
    """
    for ch in reversed(left):
        jc = joining_class(ch)
        if jc is JoiningClass.TRANSPARENT:
            continue
        if jc is JoiningClass.DUAL_JOINING:
            return left + ZWNJ + right
        break
    return left + right


_ARABIC_SCRIPT = (
    range(0x0600, 0x0700),
    range(0x0750, 0x0780),
    range(0x08A0, 0x0900),
    range(0xFB50, 0xFE00),
    range(0xFE70, 0xFF00),
)


def _edge_letter_is_arabic(text: str, last: bool) -> bool:
    chars = reversed(text) if last else iter(text)
    for ch in chars:
        cat = unicodedata.category(ch)
        if cat[0] == "M" or cat == "Cf":
            continue
        cp = ord(ch)
        return cat[0] == "L" and any(cp in r for r in _ARABIC_SCRIPT)
    return False


def _is_host(tok: Token, lexicon: AffixLexicon) -> bool:
    return (
        tok.kind is TokenKind.WORD
        and tok.text not in lexicon.by_form
        and tok.text not in lexicon.stem_exceptions
        and not any(c in FULL_STOPS for c in tok.text)
    )


def plan_groups(tokens: Sequence[Token], lexicon: AffixLexicon) -> list[tuple[int, int]]:
    """Index ranges ``[lo, hi)`` of tokens that merge into one word.

    A group is a run of prefix tokens, a host word, then a run of suffix
    tokens, with at least one affix. Groups are found left to right and
    never overlap.
    """
    groups = []
    prefixes, suffixes = lexicon.prefixes, lexicon.suffixes
    n = len(tokens)
    i = 0
    while i < n:
        j = i
        while j < n and tokens[j].kind is TokenKind.WORD and tokens[j].text in prefixes:
            j += 1
        if j > i:
            if j < n and _is_host(tokens[j], lexicon) and _edge_letter_is_arabic(tokens[j].text, last=False):
                host = j
            else:
                i += 1
                continue
        elif _is_host(tokens[i], lexicon):
            host = i
        else:
            i += 1
            continue
        k = host + 1
        if _edge_letter_is_arabic(tokens[host].text, last=True):
            while k < n and tokens[k].kind is TokenKind.WORD and tokens[k].text in suffixes:
                k += 1
        if k - i > 1:
            groups.append((i, k))
        i = k
    return groups


def merge_tokens(group: Sequence[Token]) -> Token:
    text = group[0].text
    for tok in group[1:]:
        text = join_affix(text, tok.text)
    return Token(text, (group[0].start, group[-1].end), TokenKind.WORD)


def repair_affixes(tokens: Sequence[Token], lexicon: AffixLexicon | None = None) -> list[Token]:
    """Attach space-separated affixes to their stems.

    ``[کتاب, ها]`` becomes ``[کتاب‌ها]``; ``[می, رود]`` becomes
    ``[می‌رود]``. A merged token spans all of its parts. Tokens should come
    from normalized text on a single line.
    """
    if lexicon is None:
        lexicon = default_affix_lexicon()
    out = []
    pos = 0
    for lo, hi in plan_groups(tokens, lexicon):
        out.extend(tokens[pos:lo])
        out.append(merge_tokens(tokens[lo:hi]))
        pos = hi
    out.extend(tokens[pos:])
    return out


def split_point(word: str, lexicon: AffixLexicon, known_words: frozenset[str] | set[str]) -> int | None:
    """Where a ZWNJ belongs in an attached form such as ``کتابها``, if anywhere."""
    for form in sorted(lexicon.suffixes, key=len, reverse=True):
        if len(word) > len(form) and word.endswith(form):
            stem = word[: -len(form)]
            if stem in known_words:
                return len(stem)
    return None


def split_attached(
    tokens: Sequence[Token],
    lexicon: AffixLexicon | None,
    known_words: frozenset[str] | set[str],
) -> list[Token]:
    """Rewrite attached suffixes into the ZWNJ form when the stem is known.

    Only stems listed in ``known_words`` are split, so a word like ``تنها``
    is left alone unless ``تن`` is listed.
    """
    if lexicon is None:
        lexicon = default_affix_lexicon()
    out = []
    for tok in tokens:
        if tok.kind is TokenKind.WORD and tok.text not in lexicon.by_form:
            cut = split_point(tok.text, lexicon, known_words)
            if cut is not None:
                text = join_affix(tok.text[:cut], tok.text[cut:])
                if text != tok.text:
                    tok = Token(text, tok.span, tok.kind)
        out.append(tok)
    return out
