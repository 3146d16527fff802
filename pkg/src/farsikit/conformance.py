"""Conformance checking with located, machine-applicable fixes.

:func:`check` reports every place where a text departs from the standard
form that :func:`farsikit.pipeline.standardize` would produce. Applying the
suggested fixes in span order yields exactly that standard form.
"""

from __future__ import annotations

import enum
import json
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable

from .charset import ZWJ
from .morpho import AffixLexicon
from .normalizer import NormalizationConfig, Stage, trace
from .pipeline import affix_edits
from .tokenizer import TokenizerConfig

__all__ = [
    "ViolationKind",
    "Violation",
    "Report",
    "ReportFormat",
    "check",
    "apply_fixes",
    "render_report",
]


class ViolationKind(enum.Enum):
    NON_STANDARD_LETTER = "NonStandardLetter"
    TATWEEL = "Tatweel"
    SHORT_VOWEL = "ShortVowel"
    ARABIC_INDIC_DIGIT = "ArabicIndicDigit"
    ZWNJ_MISUSE = "ZwnjMisuse"
    SPACE_JOINED_AFFIX = "SpaceJoinedAffix"
    ATTACHED_AFFIX = "AttachedAffix"
    ZWJ_PRESENT = "ZwjPresent"


_STAGE_KIND = {
    Stage.MAP_VARIANTS: ViolationKind.NON_STANDARD_LETTER,
    Stage.REMOVE_TATWEEL: ViolationKind.TATWEEL,
    Stage.STRIP_DIACRITICS: ViolationKind.SHORT_VOWEL,
    Stage.UNIFY_DIGITS: ViolationKind.ARABIC_INDIC_DIGIT,
    Stage.FIX_ZWNJ: ViolationKind.ZWNJ_MISUSE,
}


@dataclass(frozen=True)
class Violation:
    """One located deviation.

    ``suggested`` is ``None`` for report-only findings (ZWJ), which have no
    mechanical fix.
    """

    kind: ViolationKind
    span: tuple[int, int]
    found: str
    suggested: str | None

    def __post_init__(self):
        if self.suggested == self.found:
            raise ValueError("a violation must suggest a change")

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "start": self.start,
            "end": self.end,
            "found": self.found,
            "suggested": self.suggested,
        }


@dataclass(frozen=True)
class Report:
    violations: tuple[Violation, ...] = ()
    total_code_points: int = 0
    counts: dict[ViolationKind, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        violations = tuple(sorted(self.violations, key=lambda v: v.span))
        object.__setattr__(self, "violations", violations)
        tally = {}
        for v in violations:
            tally[v.kind] = tally.get(v.kind, 0) + 1
        object.__setattr__(
            self, "counts", {k: tally[k] for k in ViolationKind if k in tally}
        )

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "total_code_points": self.total_code_points,
            "counts": {k.value: n for k, n in self.counts.items()},
            "violations": [v.to_dict() for v in self.violations],
        }


def _check_line(
    line: str,
    offset: int,
    config: NormalizationConfig | None,
    lexicon: AffixLexicon | None,
    tokenizer_config: TokenizerConfig | None,
    known_words: frozenset[str] | None,
    repair: bool,
    split: bool,
    report_zwj: bool,
) -> list[Violation]:
    traced = trace(line, config)
    outs = [out for out, _ in traced]
    normalized = "".join(outs)
    # nstart[i]: where the output of line[i] begins in the normalized line
    nstart = []
    owner = []
    pos = 0
    for i, out in enumerate(outs):
        nstart.append(pos)
        owner.extend([i] * len(out))
        pos += len(out)

    absorbed = set()
    found = []
    for e in affix_edits(
        normalized, lexicon, tokenizer_config, known_words, repair=repair, split=split
    ):
        first, last = owner[e.start], owner[e.end - 1]
        lo, hi = nstart[first], nstart[last] + len(outs[last])
        suggested = normalized[lo : e.start] + e.text + normalized[e.end : hi]
        kind = ViolationKind.ATTACHED_AFFIX if e.attached else ViolationKind.SPACE_JOINED_AFFIX
        found.append(
            Violation(kind, (offset + first, offset + last + 1), line[first : last + 1], suggested)
        )
        absorbed.update(range(first, last + 1))

    for i, (out, stage) in enumerate(traced):
        if stage is not None and i not in absorbed:
            found.append(Violation(_STAGE_KIND[stage], (offset + i, offset + i + 1), line[i], out))
        elif report_zwj and line[i] == ZWJ and out == ZWJ:
            found.append(Violation(ViolationKind.ZWJ_PRESENT, (offset + i, offset + i + 1), ZWJ, None))
    return found


def check(
    text: str,
    config: NormalizationConfig | None = None,
    lexicon: AffixLexicon | None = None,
    *,
    tokenizer_config: TokenizerConfig | None = None,
    known_words: frozenset[str] | None = None,
    repair: bool = True,
    split: bool = False,
    report_zwj: bool = False,
) -> Report:
    """Find every deviation of ``text`` from its standardized form.

    Stages disabled in ``config`` (or via ``repair``/``split``) report
    nothing. Violations inside an affix repair region are folded into that
    region's single fix, so spans never overlap.
    """
    violations = []
    offset = 0
    for line in text.split("\n"):
        violations.extend(
            _check_line(
                line, offset, config, lexicon, tokenizer_config, known_words,
                repair, split, report_zwj,
            )
        )
        offset += len(line) + 1
    return Report(tuple(violations), len(text))


def apply_fixes(text: str, violations: Iterable[Violation]) -> str:
    """Apply suggested fixes in span order; report-only findings are skipped."""
    out = []
    pos = 0
    for v in sorted(violations, key=lambda v: v.span):
        if v.suggested is None:
            continue
        if v.start < pos:
            raise ValueError(f"overlapping fixes at {v.span}")
        if text[v.start : v.end] != v.found:
            raise ValueError(f"fix at {v.span} does not match the text")
        out.append(text[pos : v.start])
        out.append(v.suggested)
        pos = v.end
    out.append(text[pos:])
    return "".join(out)


class ReportFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"


def _visible(s: str | None) -> str:
    if s is None:
        return "(report only)"
    shown = []
    for ch in s:
        if ch == " " or (ch.isprintable() and unicodedata.category(ch) not in ("Mn", "Me", "Cf")):
            shown.append(ch)
        else:
            shown.append(f"\\u{ord(ch):04x}")
    return '"' + "".join(shown) + '"'


def render_report(report: Report, format: ReportFormat | str = ReportFormat.TEXT) -> bytes:
    """Serialize a report as UTF-8 text or compact JSON with stable key order."""
    format = ReportFormat(format)
    if format is ReportFormat.JSON:
        return json.dumps(report.to_dict(), ensure_ascii=False, separators=(",", ":")).encode()
    lines = [
        f"{v.start}-{v.end} {v.kind.value} {_visible(v.found)} -> {_visible(v.suggested)}"
        for v in report.violations
    ]
    n = len(report.violations)
    footer = f"{n} violation{'s' if n != 1 else ''} in {report.total_code_points} code points"
    if report.counts:
        footer += ": " + ", ".join(f"{k.value}={c}" for k, c in report.counts.items())
    lines.append(footer)
    return ("\n".join(lines) + "\n").encode()
