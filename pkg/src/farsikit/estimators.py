"""scikit-learn compatible wrappers.

The transformers hold no learned state: ``fit`` validates the parameters,
loads any tables they name and returns ``self``. They accept any 1-d
iterable of strings, so they drop into a ``Pipeline`` in front of a
vectorizer::

    from sklearn.feature_extraction.text import TfidfVectorizer
    from sklearn.pipeline import make_pipeline

    tok = PersianTokenizer().fit()
    pipe = make_pipeline(
        PersianStandardizer(),
        TfidfVectorizer(tokenizer=tok, token_pattern=None, lowercase=False),
    )
"""

from __future__ import annotations

import os

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bool, check_choice, check_texts
from .charset import MappingTable, default_mapping_table, read_mapping_table
from .conformance import check
from .morpho import AffixLexicon, default_affix_lexicon, read_affix_lexicon, read_known_words
from .normalizer import DigitMode, NormalizationConfig, normalize
from .pipeline import standardize
from .tokenizer import TokenizerConfig, tokenize

__all__ = ["PersianNormalizer", "PersianStandardizer", "PersianTokenizer", "ConformanceChecker"]

_DIGIT_MODES = {m.value for m in DigitMode}


class _TextTransformer(TransformerMixin, BaseEstimator):
    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.two_d_array = False
        tags.input_tags.string = True
        return tags

    def _build_config(self) -> NormalizationConfig:
        for name in ("map_variants", "remove_tatweel", "strip_diacritics", "fix_zwnj", "extended"):
            check_bool(name, getattr(self, name))
        check_choice("unify_digits", self.unify_digits, _DIGIT_MODES)
        mapping = self.mapping
        if mapping is None:
            table = default_mapping_table(extended=self.extended)
        else:
            if isinstance(mapping, (str, os.PathLike)):
                table = read_mapping_table(mapping)
            elif isinstance(mapping, MappingTable):
                table = mapping
            else:
                raise TypeError("mapping must be None, a MappingTable or a path")
            if self.extended:
                table = table.merged(default_mapping_table(extended=True))
        return NormalizationConfig(
            map_variants=self.map_variants,
            remove_tatweel=self.remove_tatweel,
            strip_diacritics=self.strip_diacritics,
            unify_digits=DigitMode(self.unify_digits),
            fix_zwnj=self.fix_zwnj,
            mapping=table,
        )


class PersianNormalizer(_TextTransformer):
    """Character-level normalization of each input string.

    Parameters mirror :class:`farsikit.normalizer.NormalizationConfig`.
    ``mapping`` may be a :class:`MappingTable` or a path to a table file;
    ``extended`` adds the presentation-form table.
    """

    def __init__(
        self,
        map_variants=True,
        remove_tatweel=True,
        strip_diacritics=True,
        unify_digits="persian",
        fix_zwnj=True,
        mapping=None,
        extended=False,
    ):
        self.map_variants = map_variants
        self.remove_tatweel = remove_tatweel
        self.strip_diacritics = strip_diacritics
        self.unify_digits = unify_digits
        self.fix_zwnj = fix_zwnj
        self.mapping = mapping
        self.extended = extended

    def fit(self, X=None, y=None):
        self.config_ = self._build_config()
        return self

    def transform(self, X):
        check_is_fitted(self)
        return [normalize(t, self.config_) for t in check_texts(X)]


class PersianStandardizer(_TextTransformer):
    """Normalization followed by affix-boundary repair.

    ``lexicon`` is an :class:`AffixLexicon` or a path to a lexicon file;
    ``known_words`` an iterable of stems or a path, used only when
    ``split_attached`` is on.
    """

    def __init__(
        self,
        map_variants=True,
        remove_tatweel=True,
        strip_diacritics=True,
        unify_digits="persian",
        fix_zwnj=True,
        mapping=None,
        extended=False,
        repair_affixes=True,
        split_attached=False,
        lexicon=None,
        known_words=None,
        abbreviations=(),
        join_dash_compounds=True,
    ):
        self.map_variants = map_variants
        self.remove_tatweel = remove_tatweel
        self.strip_diacritics = strip_diacritics
        self.unify_digits = unify_digits
        self.fix_zwnj = fix_zwnj
        self.mapping = mapping
        self.extended = extended
        self.repair_affixes = repair_affixes
        self.split_attached = split_attached
        self.lexicon = lexicon
        self.known_words = known_words
        self.abbreviations = abbreviations
        self.join_dash_compounds = join_dash_compounds

    def fit(self, X=None, y=None):
        check_bool("repair_affixes", self.repair_affixes)
        check_bool("split_attached", self.split_attached)
        check_bool("join_dash_compounds", self.join_dash_compounds)
        self.config_ = self._build_config()
        if self.lexicon is None:
            self.lexicon_ = default_affix_lexicon()
        elif isinstance(self.lexicon, AffixLexicon):
            self.lexicon_ = self.lexicon
        else:
            self.lexicon_ = read_affix_lexicon(self.lexicon)
        known = self.known_words
        if isinstance(known, (str, os.PathLike)):
            known = read_known_words(known)
        if self.split_attached and not known:
            raise ValueError("split_attached=True needs known_words")
        # stems are compared against normalized text, so normalize them too
        self.known_words_ = frozenset(normalize(w, self.config_) for w in (known or ()))
        self.tokenizer_config_ = TokenizerConfig(
            frozenset(normalize(a, self.config_) for a in self.abbreviations),
            self.join_dash_compounds,
        )
        return self

    def _standardize(self, text: str) -> str:
        return standardize(
            text,
            self.config_,
            self.lexicon_,
            self.tokenizer_config_,
            self.known_words_,
            repair=self.repair_affixes,
            split=self.split_attached,
        )

    def transform(self, X):
        check_is_fitted(self)
        return [self._standardize(t) for t in check_texts(X)]


class PersianTokenizer(PersianStandardizer):
    """Standardize, then tokenize.

    ``transform`` returns one list of :class:`Token` per input. Calling the
    fitted instance on a single string returns token texts, which is the
    signature vectorizers expect from ``tokenizer=``.
    """

    def __init__(
        self,
        map_variants=True,
        remove_tatweel=True,
        strip_diacritics=True,
        unify_digits="persian",
        fix_zwnj=True,
        mapping=None,
        extended=False,
        repair_affixes=True,
        split_attached=False,
        lexicon=None,
        known_words=None,
        abbreviations=(),
        join_dash_compounds=True,
        kinds=("Word", "Number"),
    ):
        super().__init__(
            map_variants, remove_tatweel, strip_diacritics, unify_digits, fix_zwnj,
            mapping, extended, repair_affixes, split_attached, lexicon, known_words,
            abbreviations, join_dash_compounds,
        )
        self.kinds = kinds

    def transform(self, X):
        check_is_fitted(self)
        return [tokenize(self._standardize(t), self.tokenizer_config_) for t in check_texts(X)]

    def __call__(self, text: str) -> list[str]:
        check_is_fitted(self)
        kinds = set(self.kinds)
        return [
            tok.text
            for tok in tokenize(self._standardize(text), self.tokenizer_config_)
            if tok.kind.value in kinds
        ]


class ConformanceChecker(PersianStandardizer):
    """Conformance reports for each input.

    ``transform`` returns :class:`Report` objects, ``predict`` returns 1
    for conforming texts and 0 otherwise, and ``score`` is the conforming
    fraction.
    """

    def __init__(
        self,
        map_variants=True,
        remove_tatweel=True,
        strip_diacritics=True,
        unify_digits="persian",
        fix_zwnj=True,
        mapping=None,
        extended=False,
        repair_affixes=True,
        split_attached=False,
        lexicon=None,
        known_words=None,
        abbreviations=(),
        join_dash_compounds=True,
        report_zwj=False,
    ):
        super().__init__(
            map_variants, remove_tatweel, strip_diacritics, unify_digits, fix_zwnj,
            mapping, extended, repair_affixes, split_attached, lexicon, known_words,
            abbreviations, join_dash_compounds,
        )
        self.report_zwj = report_zwj

    def fit(self, X=None, y=None):
        check_bool("report_zwj", self.report_zwj)
        return super().fit(X, y)

    def transform(self, X):
        check_is_fitted(self)
        return [
            check(
                t,
                self.config_,
                self.lexicon_,
                tokenizer_config=self.tokenizer_config_,
                known_words=self.known_words_,
                repair=self.repair_affixes,
                split=self.split_attached,
                report_zwj=self.report_zwj,
            )
            for t in check_texts(X)
        ]

    def predict(self, X) -> np.ndarray:
        return np.array([int(r.clean) for r in self.transform(X)], dtype=int)

    def score(self, X, y=None) -> float:
        pred = self.predict(X)
        if y is None:
            return float(pred.mean()) if pred.size else 1.0
        return float(np.mean(pred == np.asarray(y)))
