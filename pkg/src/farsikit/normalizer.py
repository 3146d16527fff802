"""Character-level standardization of Persian text.

Stages run in a fixed order: variant mapping, TATWEEL removal, diacritic
stripping, digit unification, ZWNJ repair. The first four are per code
point and are fused into one substitution table; ZWNJ repair looks
at neighbours.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .charset import (
    ARABIC_INDIC_DIGITS,
    HARAKAT,
    TATWEEL,
    ZWNJ,
    JoiningClass,
    MappingTable,
    default_mapping_table,
    joining_class,
)

__all__ = [
    "DigitMode",
    "NormalizationConfig",
    "map_characters",
    "remove_tatweel",
    "strip_diacritics",
    "unify_digits",
    "fix_zwnj",
    "normalize",
    "trace",
    "Stage",
]


class Stage(enum.IntEnum):
    MAP_VARIANTS = 0
    REMOVE_TATWEEL = 1
    STRIP_DIACRITICS = 2
    UNIFY_DIGITS = 3
    FIX_ZWNJ = 4


class DigitMode(enum.Enum):
    PERSIAN = "persian"
    PRESERVE = "preserve"


@dataclass(frozen=True)
class NormalizationConfig:
    map_variants: bool = True
    remove_tatweel: bool = True
    strip_diacritics: bool = True
    unify_digits: DigitMode = DigitMode.PERSIAN
    fix_zwnj: bool = True
    mapping: MappingTable = field(default_factory=default_mapping_table)

    def __post_init__(self):
        if not isinstance(self.unify_digits, DigitMode):
            object.__setattr__(self, "unify_digits", DigitMode(self.unify_digits))

    @cached_property
    def _fused(self) -> tuple[tuple[str, str], ...]:
        # per instance, so the hot path skips hashing the whole config
        return _fused_table(self)

    @classmethod
    def identity(cls) -> NormalizationConfig:
        """A config under which :func:`normalize` changes nothing."""
        return cls(False, False, False, DigitMode.PRESERVE, False)


_DELETE_TATWEEL = {0x0640: None}
_DELETE_HARAKAT = dict.fromkeys(HARAKAT)
_PERSIAN_DIGITS = {cp: cp - 0x0660 + 0x06F0 for cp in ARABIC_INDIC_DIGITS}


def map_characters(text: str, table: MappingTable) -> str:
    """Replace every source code point of ``table`` in one left-to-right pass."""
    return text.translate(table.translation())


def remove_tatweel(text: str) -> str:
    return text.translate(_DELETE_TATWEEL)


def strip_diacritics(text: str) -> str:
    """Delete short-vowel signs (fathatan through sukun)."""
    return text.translate(_DELETE_HARAKAT)


def unify_digits(text: str, mode: DigitMode | str = DigitMode.PERSIAN) -> str:
    if DigitMode(mode) is DigitMode.PRESERVE:
        return text
    return text.translate(_PERSIAN_DIGITS)


_ZWNJ_RUN = re.compile(ZWNJ + "+")


def _char_class(chars) -> str:
    return "".join(re.escape(c) for c in sorted(chars))


# A single ZWNJ right after a dual-joining character and before anything but
# a space is always kept. Only the other runs need the full rule.
_DUAL = [chr(cp) for cp in range(0x0600, 0x0700) if joining_class(cp) is JoiningClass.DUAL_JOINING]
_SUSPECT_ZWNJ = re.compile(
    "(?<![%s\u200d])\u200c+|\u200c{2,}|\u200c(?=\\s|$)" % _char_class(_DUAL)
)


_joining = lru_cache(maxsize=None)(joining_class)


def _keeps_zwnj(text: str, start: int, end: int) -> bool:
    """Decide whether the ZWNJ run ``text[start:end]`` survives as one ZWNJ."""
    if start == 0 or end == len(text):
        return False
    if text[start - 1].isspace() or text[end].isspace():
        return False
    i = start - 1
    while i >= 0 and _joining(text[i]) is JoiningClass.TRANSPARENT:
        i -= 1
    return i >= 0 and _joining(text[i]) is JoiningClass.DUAL_JOINING


def fix_zwnj(text: str) -> str:
    """Collapse ZWNJ runs and drop every ZWNJ that breaks no joining.

    A ZWNJ is dropped at either end of the string, next to a space, or when
    the closest non-transparent character before it does not join forward.
    """
    if ZWNJ not in text:
        return text
    return _SUSPECT_ZWNJ.sub(_repair_run, text)


def _repair_run(m: re.Match) -> str:
    return ZWNJ if _keeps_zwnj(m.string, m.start(), m.end()) else ""


@lru_cache(maxsize=65536)
def _char_stages(ch: str, config: NormalizationConfig) -> tuple[str, ...]:
    """Output of ``ch`` after each of the four per-character stages."""
    s = ch
    out = []
    if config.map_variants:
        repl = config.mapping.as_dict().get(ord(ch))
        # digit entries belong to the digit stage, so the two flags stay independent
        if repl is not None and ord(ch) not in ARABIC_INDIC_DIGITS:
            s = "".join(map(chr, repl))
    out.append(s)
    if config.remove_tatweel:
        s = remove_tatweel(s)
    out.append(s)
    if config.strip_diacritics:
        s = strip_diacritics(s)
    out.append(s)
    s = unify_digits(s, config.unify_digits)
    out.append(s)
    return tuple(out)


@lru_cache(maxsize=64)
def _fused_table(config: NormalizationConfig) -> tuple[tuple[str, str], ...]:
    """(char, output) for every char the four per-character stages change."""
    candidates = set(ARABIC_INDIC_DIGITS) | set(HARAKAT) | {ord(TATWEEL)}
    candidates.update(src for src, _ in config.mapping)
    table = []
    for cp in sorted(candidates):
        out = _char_stages(chr(cp), config)[-1]
        if out != chr(cp):
            table.append((chr(cp), out))
    return tuple(table)


_DEFAULT_CONFIG = None


def _default_config() -> NormalizationConfig:
    global _DEFAULT_CONFIG
    if _DEFAULT_CONFIG is None:
        _DEFAULT_CONFIG = NormalizationConfig()
    return _DEFAULT_CONFIG


def normalize(text: str, config: NormalizationConfig | None = None) -> str:
    """Run the enabled stages over ``text``.

    The result is a fixed point: normalizing it again under the same config
    returns it unchanged.
    """
    if config is None:
        config = _default_config()
    # outputs never contain keys, so one replace per key equals a single pass;
    # str.replace is several times faster than str.translate on non-ASCII text
    for src, out in config._fused:
        if src in text:
            text = text.replace(src, out)
    if config.fix_zwnj:
        text = fix_zwnj(text)
    return text


def trace(text: str, config: NormalizationConfig | None = None) -> list[tuple[str, Stage | None]]:
    """Per-code-point view of :func:`normalize`.

    Returns one ``(output, stage)`` pair per input code point, where
    ``output`` is what that code point became and ``stage`` is the first
    stage that changed it (``None`` if untouched). Concatenating the outputs
    gives ``normalize(text, config)``.
    """
    if config is None:
        config = _default_config()
    per_char = [_char_stages(ch, config) for ch in text]
    outs = [stages[-1] for stages in per_char]
    if config.fix_zwnj:
        merged = "".join(outs)
        owner = [i for i, o in enumerate(outs) for _ in o]
        dropped = set()
        for m in _ZWNJ_RUN.finditer(merged):
            first = m.start() + 1 if _keeps_zwnj(merged, m.start(), m.end()) else m.start()
            dropped.update(range(first, m.end()))
        if dropped:
            pieces = [[] for _ in outs]
            for pos, ch in enumerate(merged):
                if pos not in dropped:
                    pieces[owner[pos]].append(ch)
            outs = ["".join(p) for p in pieces]
    result = []
    for ch, stages, out in zip(text, per_char, outs):
        stage = next((Stage(k) for k, s in enumerate(stages) if s != ch), None)
        if stage is None and out != ch:
            stage = Stage.FIX_ZWNJ
        result.append((out, stage))
    return result
