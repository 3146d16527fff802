"""Persian text standardization toolkit.

Character normalization, ZWNJ-aware tokenization, affix-boundary repair and
conformance checking for Persian (Farsi) text.
"""

from .charset import (
    CharClass,
    CharRecord,
    JoiningClass,
    MappingTable,
    char_record,
    classify,
    default_mapping_table,
    extended_mapping_table,
    joining_class,
    load_mapping_table,
)
from .conformance import Report, Violation, ViolationKind, apply_fixes, check, render_report
from .estimators import ConformanceChecker, PersianNormalizer, PersianStandardizer, PersianTokenizer
from .morpho import (
    AffixEntry,
    AffixLexicon,
    default_affix_lexicon,
    repair_affixes,
    split_attached,
)
from .normalizer import (
    DigitMode,
    NormalizationConfig,
    fix_zwnj,
    map_characters,
    normalize,
    remove_tatweel,
    strip_diacritics,
    unify_digits,
)
from .pipeline import standardize
from .tokenizer import Token, TokenizerConfig, TokenKind, detokenize, tokenize

__version__ = "0.1.0"

__all__ = [
    "AffixEntry",
    "AffixLexicon",
    "apply_fixes",
    "char_record",
    "CharClass",
    "CharRecord",
    "check",
    "classify",
    "ConformanceChecker",
    "default_affix_lexicon",
    "default_mapping_table",
    "detokenize",
    "DigitMode",
    "extended_mapping_table",
    "fix_zwnj",
    "joining_class",
    "JoiningClass",
    "load_mapping_table",
    "map_characters",
    "MappingTable",
    "NormalizationConfig",
    "normalize",
    "PersianNormalizer",
    "PersianStandardizer",
    "PersianTokenizer",
    "remove_tatweel",
    "render_report",
    "repair_affixes",
    "Report",
    "split_attached",
    "standardize",
    "strip_diacritics",
    "Token",
    "tokenize",
    "TokenizerConfig",
    "TokenKind",
    "unify_digits",
    "Violation",
    "ViolationKind",
]

