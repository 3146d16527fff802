"""Word-boundary detection for normalized Persian text.

Boundaries are decided from code points alone. Positional letter forms
carry no information under Unicode, so they are never consulted.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .charset import ZWNJ, CharClass, classify

__all__ = [
    "TokenKind",
    "Token",
    "TokenizerConfig",
    "TokenSpanError",
    "tokenize",
    "detokenize",
    "splice",
    "load_abbreviations",
    "read_abbreviations",
]

FULL_STOPS = frozenset(".۔")
DASHES = frozenset("-‐")
SLASHES = frozenset("/")
# Arabic decimal and thousands separators stay inside numbers
NUMBER_SEPARATORS = SLASHES | frozenset("٫٬")


class TokenKind(enum.Enum):
    WORD = "Word"
    NUMBER = "Number"
    PUNCT = "Punct"
    SYMBOL = "Symbol"


@dataclass(frozen=True)
class Token:
    """A slice of the input. ``span`` is a half-open code point range."""

    text: str
    span: tuple[int, int]
    kind: TokenKind

    def __post_init__(self):
        start, end = self.span
        if end <= start:
            raise ValueError(f"empty or inverted span {self.span}")

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]


class TokenSpanError(ValueError):
    """A token list does not line up with the text it claims to cover."""


@dataclass(frozen=True)
class TokenizerConfig:
    abbreviations: frozenset[str] = frozenset()
    join_dash_compounds: bool = True

    def __post_init__(self):
        abbrevs = frozenset(self.abbreviations)
        for a in abbrevs:
            if not a or not any(c in FULL_STOPS for c in a):
                raise ValueError(f"abbreviation {a!r} must contain a full stop")
            if any(c.isspace() for c in a):
                raise ValueError(f"abbreviation {a!r} must not contain whitespace")
        object.__setattr__(self, "abbreviations", abbrevs)
        # longest first so "U.S.A." wins over "U.S."
        object.__setattr__(
            self, "_abbrev_order", tuple(sorted(abbrevs, key=lambda a: (-len(a), a)))
        )


_SPACE, _WORD, _DIGIT, _ZWNJ, _PUNCT, _SYMBOL = range(6)

_WORD_CLASSES = frozenset(
    {
        CharClass.FARSI_LETTER,
        CharClass.ARABIC_VARIANT_LETTER,
        CharClass.DIACRITIC,
        CharClass.TATWEEL,
        CharClass.ZWJ,
    }
)
_DIGIT_CLASSES = frozenset(
    {CharClass.PERSIAN_DIGIT, CharClass.ARABIC_INDIC_DIGIT, CharClass.LATIN_DIGIT}
)


@lru_cache(maxsize=None)
def _category(ch: str) -> int:
    cls = classify(ch)
    if cls is CharClass.SPACE:
        return _SPACE
    if cls is CharClass.ZWNJ:
        return _ZWNJ
    if cls in _WORD_CLASSES:
        return _WORD
    if cls in _DIGIT_CLASSES:
        return _DIGIT
    if cls is CharClass.PUNCTUATION:
        return _PUNCT
    cat = unicodedata.category(ch)
    if cat[0] in "LM":
        return _WORD
    if cat == "Nd":
        return _DIGIT
    return _SYMBOL


def _scan_word(text: str, i: int, n: int, join_dash: bool) -> int:
    cat = _category
    while True:
        while i < n and cat(text[i]) == _WORD:
            i += 1
        if i >= n:
            return i
        ch = text[i]
        if ch == ZWNJ:
            k = i + 1
            while k < n and text[k] == ZWNJ:
                k += 1
            if k < n and cat(text[k]) == _WORD:
                i = k
                continue
        elif join_dash and ch in DASHES and i + 1 < n and cat(text[i + 1]) == _WORD:
            i += 1
            continue
        return i


def _scan_number(text: str, i: int, n: int) -> int:
    cat = _category
    while True:
        while i < n and cat(text[i]) == _DIGIT:
            i += 1
        if i + 1 < n and text[i] in NUMBER_SEPARATORS and cat(text[i + 1]) == _DIGIT:
            i += 1
            continue
        return i


def _abbreviation_at(text: str, i: int, n: int, config: TokenizerConfig) -> int:
    for abbr in config._abbrev_order:
        if text.startswith(abbr, i):
            j = i + len(abbr)
            if j == n or _category(text[j]) in (_SPACE, _PUNCT, _SYMBOL):
                return j
    return i


_DEFAULT_CONFIG = TokenizerConfig()


def tokenize(text: str, config: TokenizerConfig | None = None) -> list[Token]:
    """Split ``text`` into Word, Number, Punct and Symbol tokens.

    Spaces separate tokens and belong to none. ZWNJ between word characters
    is part of the word; a ZWNJ run at a word edge (only possible in text
    that skipped normalization) becomes its own Symbol token.
    """
    if config is None:
        config = _DEFAULT_CONFIG
    cat = _category
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = cat(text[i])
        if c == _SPACE:
            i += 1
            continue
        kind = None
        j = i
        if config.abbreviations:
            j = _abbreviation_at(text, i, n, config)
            if j > i:
                kind = TokenKind.WORD
        if kind is None:
            if c == _WORD:
                j, kind = _scan_word(text, i, n, config.join_dash_compounds), TokenKind.WORD
            elif c == _DIGIT:
                j, kind = _scan_number(text, i, n), TokenKind.NUMBER
            elif c == _ZWNJ:
                j = i + 1
                while j < n and text[j] == ZWNJ:
                    j += 1
                kind = TokenKind.SYMBOL
            elif c == _PUNCT:
                j, kind = i + 1, TokenKind.PUNCT
            else:
                j, kind = i + 1, TokenKind.SYMBOL
        tokens.append(Token(text[i:j], (i, j), kind))
        i = j
    return tokens


def _check_layout(tokens: Sequence[Token], original: str) -> None:
    pos = 0
    for tok in tokens:
        if tok.start < pos:
            raise TokenSpanError(f"token {tok.text!r} at {tok.span} overlaps or is out of order")
        if tok.end > len(original):
            raise TokenSpanError(f"token span {tok.span} runs past the text")
        pos = tok.end


def detokenize(tokens: Sequence[Token], original: str) -> str:
    """Rebuild ``original`` from its tokens and the spaces between them.

    Raises :class:`TokenSpanError` if the tokens do not describe
    ``original`` exactly.
    """
    _check_layout(tokens, original)
    out = []
    pos = 0
    for tok in tokens:
        gap = original[pos : tok.start]
        if any(classify(ch) is not CharClass.SPACE for ch in gap):
            raise TokenSpanError(f"non-space text {gap!r} is not covered by any token")
        if original[tok.start : tok.end] != tok.text:
            raise TokenSpanError(f"token {tok.text!r} does not match the text at {tok.span}")
        out.append(gap)
        out.append(tok.text)
        pos = tok.end
    tail = original[pos:]
    if any(classify(ch) is not CharClass.SPACE for ch in tail):
        raise TokenSpanError(f"non-space text {tail!r} is not covered by any token")
    out.append(tail)
    return "".join(out)


def splice(tokens: Sequence[Token], original: str) -> str:
    """Write token texts over their spans in ``original``.

    Unlike :func:`detokenize` the token text may differ from the slice it
    covers, which is how repaired tokens are turned back into text.
    """
    _check_layout(tokens, original)
    out = []
    pos = 0
    for tok in tokens:
        out.append(original[pos : tok.start])
        out.append(tok.text)
        pos = tok.end
    out.append(original[pos:])
    return "".join(out)


def load_abbreviations(lines: Iterable[str | bytes]) -> frozenset[str]:
    """Read an abbreviation list: one entry per line, ``#`` comments."""
    out = set()
    for lineno, raw in enumerate(lines, 1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not any(c in FULL_STOPS for c in line) or any(c.isspace() for c in line):
            raise ValueError(f"line {lineno}: {line!r} is not a dotted abbreviation")
        out.add(line)
    return frozenset(out)


def read_abbreviations(path) -> frozenset[str]:
    with open(path, "rb") as fh:
        return load_abbreviations(fh)
