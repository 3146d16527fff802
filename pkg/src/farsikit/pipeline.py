"""Full standardization: normalize, then repair affix boundaries.

Processing is line-local. No rule looks across a newline, so an affix
separated from its stem by a line break is left as it is.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .morpho import (
    AffixLexicon,
    default_affix_lexicon,
    join_affix,
    plan_groups,
    split_point,
)
from .normalizer import NormalizationConfig, normalize
from .tokenizer import Token, TokenizerConfig, TokenKind, tokenize

__all__ = ["AffixEdit", "affix_edits", "standardize", "standardize_line", "apply_edits"]


@dataclass(frozen=True)
class AffixEdit:
    """Replace ``[start, end)`` of a normalized line with ``text``."""

    start: int
    end: int
    text: str
    attached: bool  # True for a split of an attached form, False for a re-join


@lru_cache(maxsize=16)
def _prefilter(lexicon: AffixLexicon) -> re.Pattern | None:
    # every re-join needs whitespace right before a suffix or right after a prefix
    alts = []
    if lexicon.suffixes:
        alts.append(r"\s(?:%s)" % "|".join(map(re.escape, sorted(lexicon.suffixes))))
    if lexicon.prefixes:
        alts.append(r"(?:%s)\s" % "|".join(map(re.escape, sorted(lexicon.prefixes))))
    return re.compile("|".join(alts)) if alts else None


def _separator(left: str, right: str) -> str:
    joined = join_affix(left, right)
    return joined[len(left) : len(joined) - len(right)]


def affix_edits(
    line: str,
    lexicon: AffixLexicon | None = None,
    tokenizer_config: TokenizerConfig | None = None,
    known_words: frozenset[str] | None = None,
    *,
    repair: bool = True,
    split: bool = False,
) -> list[AffixEdit]:
    """Edits that turn a normalized line into its affix-repaired form.

    Edits are sorted and never overlap. A re-joined suffix edit covers the
    gap and the suffix; a re-joined prefix edit covers the prefix and the
    gap; a split edit covers the suffix of the attached word.
    """
    if lexicon is None:
        lexicon = default_affix_lexicon()
    split = split and bool(known_words)
    if not split:
        if not repair:
            return []
        pattern = _prefilter(lexicon)
        if pattern is None or not pattern.search(line):
            return []
    tokens = tokenize(line, tokenizer_config)
    edits = []
    if split:
        for idx, tok in enumerate(tokens):
            if tok.kind is not TokenKind.WORD or tok.text in lexicon.by_form:
                continue
            cut = split_point(tok.text, lexicon, known_words)
            if cut is None:
                continue
            text = join_affix(tok.text[:cut], tok.text[cut:])
            if text != tok.text:
                edits.append(AffixEdit(tok.start + cut, tok.end, text[cut:], True))
                tokens[idx] = Token(text, tok.span, tok.kind)
    if repair:
        for lo, hi in plan_groups(tokens, lexicon):
            host = next(k for k in range(lo, hi) if tokens[k].text not in lexicon.prefixes)
            acc = tokens[lo].text
            for k in range(lo + 1, hi):
                a, b = tokens[k - 1], tokens[k]
                sep = _separator(acc, b.text)
                if k <= host:
                    edits.append(AffixEdit(a.start, b.start, a.text + sep, False))
                else:
                    edits.append(AffixEdit(a.end, b.end, sep + b.text, False))
                acc = acc + sep + b.text
    edits.sort(key=lambda e: e.start)
    return edits


def apply_edits(line: str, edits: Iterable[AffixEdit]) -> str:
    out = []
    pos = 0
    for e in edits:
        if e.start < pos:
            raise ValueError(f"overlapping edit at {e.start}")
        out.append(line[pos : e.start])
        out.append(e.text)
        pos = e.end
    out.append(line[pos:])
    return "".join(out)


def standardize_line(
    line: str,
    config: NormalizationConfig | None = None,
    lexicon: AffixLexicon | None = None,
    tokenizer_config: TokenizerConfig | None = None,
    known_words: frozenset[str] | None = None,
    *,
    repair: bool = True,
    split: bool = False,
) -> str:
    normalized = normalize(line, config)
    edits = affix_edits(
        normalized, lexicon, tokenizer_config, known_words, repair=repair, split=split
    )
    return apply_edits(normalized, edits) if edits else normalized


def standardize(
    text: str,
    config: NormalizationConfig | None = None,
    lexicon: AffixLexicon | None = None,
    tokenizer_config: TokenizerConfig | None = None,
    known_words: frozenset[str] | None = None,
    *,
    repair: bool = True,
    split: bool = False,
) -> str:
    """Normalize ``text`` and repair its affix boundaries, line by line.

    >>> standardize("كتاب ها")
    'کتاب\\u200cها'
    """
    return "\n".join(
        standardize_line(
            line, config, lexicon, tokenizer_config, known_words, repair=repair, split=split
        )
        for line in text.split("\n")
    )
