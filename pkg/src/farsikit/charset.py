"""Character knowledge base for Persian text.

Classifies code points, reports cursive joining behaviour, and owns the
mapping tables that carry Arabic variants onto the Persian repertoire.
All tables are immutable once built.
"""

from __future__ import annotations

import enum
import io
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import BinaryIO, Iterable, Mapping

__all__ = [
    "CharClass",
    "JoiningClass",
    "CharRecord",
    "MappingTable",
    "TableParseError",
    "TableCascadeError",
    "Charset",
    "classify",
    "joining_class",
    "char_record",
    "default_mapping_table",
    "extended_mapping_table",
    "load_mapping_table",
    "read_mapping_table",
    "load_repertoire",
    "TATWEEL",
    "ZWNJ",
    "ZWJ",
]

TATWEEL = "ـ"
ZWNJ = "‌"
ZWJ = "‍"

ARABIC_BLOCK = range(0x0600, 0x0700)
HARAKAT = range(0x064B, 0x0653)
ARABIC_INDIC_DIGITS = range(0x0660, 0x066A)
PERSIAN_DIGITS = range(0x06F0, 0x06FA)
PRESENTATION_FORMS = (range(0xFB50, 0xFE00), range(0xFE70, 0xFF00))

_MAX_SCALAR = 0x10FFFF


class CharClass(enum.Enum):
    FARSI_LETTER = "FarsiLetter"
    ARABIC_VARIANT_LETTER = "ArabicVariantLetter"
    DIACRITIC = "Diacritic"
    TATWEEL = "Tatweel"
    ZWNJ = "Zwnj"
    ZWJ = "Zwj"
    SPACE = "Space"
    PUNCTUATION = "Punctuation"
    PERSIAN_DIGIT = "PersianDigit"
    ARABIC_INDIC_DIGIT = "ArabicIndicDigit"
    LATIN_DIGIT = "LatinDigit"
    OTHER = "Other"


class JoiningClass(enum.Enum):
    DUAL_JOINING = "DualJoining"
    RIGHT_JOINING = "RightJoining"
    NON_JOINING = "NonJoining"
    TRANSPARENT = "Transparent"


LETTER_CLASSES = frozenset({CharClass.FARSI_LETTER, CharClass.ARABIC_VARIANT_LETTER})


@dataclass(frozen=True)
class CharRecord:
    """Everything the toolkit knows about one code point."""

    code_point: int
    char_class: CharClass
    joining: JoiningClass
    is_standard: bool
    canonical: tuple[int, ...] | None = None


class TableParseError(ValueError):
    """A mapping table file does not follow the line grammar."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class TableCascadeError(TableParseError):
    """A replacement contains a code point that is itself a source."""


@dataclass(frozen=True)
class MappingTable:
    """Ordered code point -> code point sequence substitution map.

    Sources are unique and no replacement mentions a source, so a single
    left-to-right pass is a complete rewrite.
    """

    entries: tuple[tuple[int, tuple[int, ...]], ...] = ()
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        seen = set()
        for src, repl in self.entries:
            if src in seen:
                raise TableParseError(f"duplicate source {src:04X}")
            if not repl:
                raise TableParseError(f"empty replacement for {src:04X}")
            seen.add(src)
        for src, repl in self.entries:
            for cp in repl:
                if cp in seen:
                    raise TableCascadeError(
                        f"replacement for {src:04X} contains source {cp:04X}"
                    )

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, cp):
        return cp in self.as_dict()

    def as_dict(self) -> dict[int, tuple[int, ...]]:
        return _table_dict(self)

    def translation(self) -> dict[int, str]:
        """Table in the form ``str.translate`` expects."""
        return _table_translation(self)

    def merged(self, other: MappingTable) -> MappingTable:
        """Entries of ``self`` followed by those of ``other`` not already present."""
        mine = self.as_dict()
        extra = tuple(e for e in other.entries if e[0] not in mine)
        label = "+".join(p for p in (self.provenance, other.provenance) if p)
        return MappingTable(self.entries + extra, label)

    def dumps(self) -> str:
        lines = []
        if self.provenance:
            lines.append(f"# {self.provenance}")
        for src, repl in self.entries:
            lines.append(f"{src:04X} " + " ".join(f"{cp:04X}" for cp in repl))
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=32)
def _table_dict(table: MappingTable) -> dict[int, tuple[int, ...]]:
    return dict(table.entries)


@lru_cache(maxsize=32)
def _table_translation(table: MappingTable) -> dict[int, str]:
    return {src: "".join(map(chr, repl)) for src, repl in table.entries}


def _parse_hex(token: str, lineno: int) -> int:
    if not token or token.upper() != token or token.startswith(("U+", "0X")):
        raise TableParseError(f"bad code point {token!r}: expected uppercase hex", lineno)
    try:
        cp = int(token, 16)
    except ValueError:
        raise TableParseError(f"bad code point {token!r}", lineno) from None
    if cp > _MAX_SCALAR or 0xD800 <= cp <= 0xDFFF:
        raise TableParseError(f"{token} is not a Unicode scalar value", lineno)
    return cp


def _data_lines(source) -> Iterable[tuple[int, str]]:
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    for lineno, raw in enumerate(source, 1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise TableParseError(f"invalid UTF-8 ({exc.reason})", lineno) from None
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def load_mapping_table(source: BinaryIO | bytes, provenance: str = "") -> MappingTable:
    """Parse a mapping table from a binary stream.

    Each non-blank line is ``SRC_HEX REPL_HEX [REPL_HEX ...]``; ``#`` starts
    a comment. Raises :class:`TableParseError` (with the line number) on bad
    syntax or a duplicate source, and :class:`TableCascadeError` when a
    replacement contains a source.
    """
    entries = []
    sources = {}
    for lineno, line in _data_lines(source):
        parts = line.split()
        if len(parts) < 2:
            raise TableParseError("expected a source and at least one replacement", lineno)
        src = _parse_hex(parts[0], lineno)
        repl = tuple(_parse_hex(p, lineno) for p in parts[1:])
        if src in sources:
            raise TableParseError(f"duplicate source {src:04X}", lineno)
        sources[src] = lineno
        entries.append((src, repl))
    # second pass so a later source can be blamed on the line that introduced it
    for src, repl in entries:
        for cp in repl:
            if cp in sources:
                raise TableCascadeError(
                    f"replacement for {src:04X} contains source {cp:04X}",
                    max(sources[src], sources[cp]),
                )
    return MappingTable(tuple(entries), provenance)


def read_mapping_table(path) -> MappingTable:
    with open(path, "rb") as fh:
        return load_mapping_table(fh, provenance=str(path))


def _read_data(name: str) -> bytes:
    return resources.files("farsikit").joinpath("data", name).read_bytes()


@lru_cache(maxsize=None)
def default_mapping_table(extended: bool = False) -> MappingTable:
    """The bundled base table, optionally followed by the presentation forms."""
    base = load_mapping_table(_read_data("base_map.txt"), provenance="farsikit base v1")
    if extended:
        return base.merged(extended_mapping_table())
    return base


@lru_cache(maxsize=None)
def extended_mapping_table() -> MappingTable:
    """Presentation forms and ligatures only (the 1->n entries live here)."""
    return load_mapping_table(_read_data("extended_map.txt"), provenance="farsikit extended v1")


_STATUSES = ("standard", "loanword", "variant")


def load_repertoire(source: BinaryIO | bytes) -> dict[int, str]:
    """Parse a repertoire file: ``CODE<TAB>STATUS`` per line."""
    out = {}
    for lineno, line in _data_lines(source):
        parts = line.split()
        if len(parts) != 2:
            raise TableParseError("expected CODE and STATUS", lineno)
        cp = _parse_hex(parts[0], lineno)
        if parts[1] not in _STATUSES:
            raise TableParseError(f"unknown status {parts[1]!r}", lineno)
        if cp not in ARABIC_BLOCK:
            raise TableParseError(f"{cp:04X} is outside the Arabic block", lineno)
        out[cp] = parts[1]
    return out


# Joining types of the Arabic block as (first, last, type) runs. Join-causing
# TATWEEL is folded into dual joining. Code points not covered are
# non-joining unless they are marks or format characters.
_D, _R, _T = JoiningClass.DUAL_JOINING, JoiningClass.RIGHT_JOINING, JoiningClass.TRANSPARENT
_ARABIC_JOINING_RUNS = (
    (0x0610, 0x061A, _T),
    (0x061C, 0x061C, _T),
    (0x0620, 0x0620, _D),
    (0x0622, 0x0625, _R),
    (0x0626, 0x0626, _D),
    (0x0627, 0x0627, _R),
    (0x0628, 0x0628, _D),
    (0x0629, 0x0629, _R),
    (0x062A, 0x062E, _D),
    (0x062F, 0x0632, _R),
    (0x0633, 0x063F, _D),
    (0x0640, 0x0640, _D),
    (0x0641, 0x0647, _D),
    (0x0648, 0x0648, _R),
    (0x0649, 0x064A, _D),
    (0x064B, 0x065F, _T),
    (0x066E, 0x066F, _D),
    (0x0670, 0x0670, _T),
    (0x0671, 0x0673, _R),
    (0x0675, 0x0677, _R),
    (0x0678, 0x0687, _D),
    (0x0688, 0x0699, _R),
    (0x069A, 0x06BF, _D),
    (0x06C0, 0x06C0, _R),
    (0x06C1, 0x06C2, _D),
    (0x06C3, 0x06CB, _R),
    (0x06CC, 0x06CC, _D),
    (0x06CD, 0x06CD, _R),
    (0x06CE, 0x06CE, _D),
    (0x06CF, 0x06CF, _R),
    (0x06D0, 0x06D1, _D),
    (0x06D2, 0x06D3, _R),
    (0x06D5, 0x06D5, _R),
    (0x06D6, 0x06DC, _T),
    (0x06DF, 0x06E4, _T),
    (0x06E7, 0x06E8, _T),
    (0x06EA, 0x06ED, _T),
    (0x06EE, 0x06EF, _R),
    (0x06FA, 0x06FC, _D),
    (0x06FF, 0x06FF, _D),
)

_ARABIC_JOINING = {
    cp: jc for lo, hi, jc in _ARABIC_JOINING_RUNS for cp in range(lo, hi + 1)
}


def _as_scalar(cp: int | str) -> int:
    if isinstance(cp, str):
        if len(cp) != 1:
            raise ValueError(f"expected a single character, got {cp!r}")
        return ord(cp)
    if not 0 <= cp <= _MAX_SCALAR:
        raise ValueError(f"{cp:#x} is not a Unicode code point")
    return cp


def _in_presentation_forms(cp: int) -> bool:
    return any(cp in r for r in PRESENTATION_FORMS)


class Charset:
    """Classification backed by a repertoire and a mapping table.

    The module-level helpers use a shared instance built from the bundled
    data; build your own to override either table.
    """

    def __init__(
        self,
        repertoire: Mapping[int, str] | None = None,
        mapping: MappingTable | None = None,
    ):
        if repertoire is None:
            repertoire = load_repertoire(_read_data("repertoire.tsv"))
        self.repertoire = dict(repertoire)
        self.mapping = mapping if mapping is not None else default_mapping_table()
        self.loanwords = frozenset(cp for cp, s in self.repertoire.items() if s == "loanword")
        self._classify = lru_cache(maxsize=None)(self._classify_uncached)

    def classify(self, cp: int | str) -> CharClass:
        return self._classify(_as_scalar(cp))

    def _classify_uncached(self, cp: int) -> CharClass:
        if cp == 0x0640:
            return CharClass.TATWEEL
        if cp == 0x200C:
            return CharClass.ZWNJ
        if cp == 0x200D:
            return CharClass.ZWJ
        if cp in HARAKAT:
            return CharClass.DIACRITIC
        if cp in ARABIC_INDIC_DIGITS:
            return CharClass.ARABIC_INDIC_DIGIT
        if cp in PERSIAN_DIGITS:
            return CharClass.PERSIAN_DIGIT
        if 0x30 <= cp <= 0x39:
            return CharClass.LATIN_DIGIT
        if 0xD800 <= cp <= 0xDFFF:
            return CharClass.OTHER
        ch = chr(cp)
        category = unicodedata.category(ch)
        status = self.repertoire.get(cp)
        if status is not None and category.startswith("L"):
            if status == "variant":
                return CharClass.ARABIC_VARIANT_LETTER
            return CharClass.FARSI_LETTER
        if ch.isspace():
            return CharClass.SPACE
        if category.startswith("P"):
            return CharClass.PUNCTUATION
        return CharClass.OTHER

    def is_standard(self, cp: int | str) -> bool:
        cp = _as_scalar(cp)
        if cp in ARABIC_BLOCK:
            return self.repertoire.get(cp, "variant") != "variant"
        if _in_presentation_forms(cp):
            return False
        return True

    def record(self, cp: int | str) -> CharRecord:
        cp = _as_scalar(cp)
        standard = self.is_standard(cp)
        canonical = None
        if not standard:
            if cp == 0x0640:
                canonical = ()
            else:
                canonical = self.mapping.as_dict().get(cp)
                if canonical is None:
                    canonical = extended_mapping_table().as_dict().get(cp)
        return CharRecord(cp, self.classify(cp), joining_class(cp), standard, canonical)


@lru_cache(maxsize=None)
def _joining(cp: int) -> JoiningClass:
    jc = _ARABIC_JOINING.get(cp)
    if jc is not None:
        return jc
    if cp == 0x200D:
        return JoiningClass.DUAL_JOINING
    if cp == 0x200C or cp in ARABIC_BLOCK:
        return JoiningClass.NON_JOINING
    if 0xD800 <= cp <= 0xDFFF:
        return JoiningClass.NON_JOINING
    if unicodedata.category(chr(cp)) in ("Mn", "Me", "Cf"):
        return JoiningClass.TRANSPARENT
    return JoiningClass.NON_JOINING


def joining_class(cp: int | str) -> JoiningClass:
    """Cursive joining behaviour of a code point.

    Exact for the Arabic block; elsewhere marks and format characters are
    transparent and everything else is non-joining. ZWJ counts as dual.
    """
    return _joining(_as_scalar(cp))


@lru_cache(maxsize=1)
def _default_charset() -> Charset:
    return Charset()


def classify(cp: int | str) -> CharClass:
    """Character class of a code point under the bundled tables."""
    return _default_charset().classify(cp)


def char_record(cp: int | str) -> CharRecord:
    return _default_charset().record(cp)
