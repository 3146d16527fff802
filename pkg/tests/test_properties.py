"""Property tests for the invariants the toolkit promises."""

from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import AFFIX_ATOMS, FUZZ_ALPHABET, ZWNJ

from farsikit.charset import CharClass, classify, default_mapping_table
from farsikit.conformance import ViolationKind, apply_fixes, check
from farsikit.morpho import default_affix_lexicon, repair_affixes
from farsikit.normalizer import DigitMode, NormalizationConfig, normalize
from farsikit.pipeline import standardize
from farsikit.tokenizer import TokenKind, detokenize, tokenize

chars = st.sampled_from(FUZZ_ALPHABET)
raw_text = st.text(alphabet=chars, max_size=64)
atoms = st.sampled_from(AFFIX_ATOMS + [" ", ZWNJ, "  ", ".", "\n"] + FUZZ_ALPHABET[:0x100:7])
affix_text = st.lists(atoms, max_size=20).map("".join)
any_text = st.one_of(raw_text, affix_text, st.text(max_size=40))

configs = st.builds(
    NormalizationConfig,
    map_variants=st.booleans(),
    remove_tatweel=st.booleans(),
    strip_diacritics=st.booleans(),
    unify_digits=st.sampled_from(list(DigitMode)),
    fix_zwnj=st.booleans(),
    mapping=st.sampled_from([default_mapping_table(), default_mapping_table(extended=True)]),
)

LETTERS = (CharClass.FARSI_LETTER, CharClass.ARABIC_VARIANT_LETTER)


@given(any_text, configs)
def test_normalize_is_idempotent(text, config):
    once = normalize(text, config)
    assert normalize(once, config) == once


@given(any_text)
def test_skeleton_preserved(text):
    table = default_mapping_table().translation()
    expected = "".join(table.get(ord(c), c) for c in text if classify(c) in LETTERS)
    got = "".join(c for c in normalize(text) if classify(c) is CharClass.FARSI_LETTER)
    assert got == expected


def _is_subsequence(small, big):
    it = iter(big)
    return all(ch in it for ch in small)


@given(any_text)
def test_order_preserved(text):
    # every surviving code point appears in the order its source did
    table = default_mapping_table().translation()
    rewritten = "".join(table.get(ord(c), c) for c in text)
    assert _is_subsequence(normalize(text), rewritten)


@given(any_text, st.booleans(), st.sampled_from(list(DigitMode)))
def test_length_preserved_with_one_to_one_table(text, map_variants, digits):
    cfg = NormalizationConfig(map_variants, False, False, digits, False)
    assert len(normalize(text, cfg)) == len(text)


@given(any_text)
def test_identity_config(text):
    assert normalize(text, NormalizationConfig.identity()) == text


@given(any_text)
def test_tokenize_round_trip_and_coverage(text):
    tokens = tokenize(text)
    assert detokenize(tokens, text) == text
    covered = set()
    for tok in tokens:
        span = set(range(tok.start, tok.end))
        assert not covered & span
        covered |= span
        assert text[tok.start : tok.end] == tok.text
    for i, ch in enumerate(text):
        assert (i in covered) == (classify(ch) is not CharClass.SPACE)


@given(any_text)
def test_words_never_have_edge_zwnj(text):
    for tok in tokenize(normalize(text)):
        if tok.kind is TokenKind.WORD:
            assert not tok.text.startswith(ZWNJ) and not tok.text.endswith(ZWNJ)


def _boundaries(tokens):
    return [(t.start, t.end, t.kind) for t in tokens]


@given(affix_text, st.data())
def test_inserted_letter_only_shifts_spans(text, data):
    text = normalize(text)
    tokens = tokenize(text)
    words = [t for t in tokens if t.kind is TokenKind.WORD]
    if not words:
        return
    target = data.draw(st.sampled_from(words))
    letter = data.draw(st.sampled_from("بپتسی"))
    shifted = text[: target.start] + letter + text[target.start :]
    expected = []
    for t in tokens:
        if t.start < target.start:
            expected.append((t.start, t.end, t.kind))
        elif t is target:
            expected.append((t.start, t.end + 1, t.kind))
        else:
            expected.append((t.start + 1, t.end + 1, t.kind))
    assert _boundaries(tokenize(shifted)) == expected


@given(affix_text, st.data())
def test_joining_form_of_a_letter_does_not_move_boundaries(text, data):
    # swapping a dual-joining letter for a right-joining one changes every
    # neighbouring glyph form but no boundary
    tokens = tokenize(text)
    positions = [i for i, c in enumerate(text) if c in "بتسکی"]
    if not positions:
        return
    i = data.draw(st.sampled_from(positions))
    swapped = text[:i] + "د" + text[i + 1 :]
    assert _boundaries(tokenize(swapped)) == _boundaries(tokens)


@given(affix_text)
def test_repair_invariants(text):
    lex = default_affix_lexicon()
    tokens = tokenize(normalize(text.replace("\n", " ")))
    repaired = repair_affixes(tokens, lex)
    letters = lambda ts: "".join(t.text for t in ts).replace(ZWNJ, "")
    assert letters(repaired) == letters(tokens)
    assert len(repaired) <= len(tokens)
    merged = [t for t in repaired if t not in tokens]
    consumed = sum(1 for t in tokens if not any(t == r for r in repaired))
    assert consumed - len(merged) == len(tokens) - len(repaired)
    assert repair_affixes(repaired, lex) == repaired


@given(any_text)
def test_standardize_is_idempotent(text):
    once = standardize(text)
    assert standardize(once) == once


@settings(max_examples=300)
@given(any_text)
def test_check_soundness_and_fix_consistency(text):
    report = check(text)
    target = standardize(text)
    assert apply_fixes(text, report.violations) == target
    assert check(target).clean
    assert report.clean == (target == text)
    assert sum(report.counts.values()) == len(report.violations)
    assert report.total_code_points == len(text)
    assert [v.span for v in report] == sorted(v.span for v in report)
    for v in report:
        assert text[v.start : v.end] == v.found
        assert v.suggested != v.found


@given(any_text, configs, st.booleans())
def test_fix_consistency_under_any_config(text, config, repair):
    report = check(text, config, repair=repair)
    assert apply_fixes(text, report.violations) == standardize(text, config, repair=repair)


_STAGE_FLAGS = {
    "map_variants": ViolationKind.NON_STANDARD_LETTER,
    "remove_tatweel": ViolationKind.TATWEEL,
    "strip_diacritics": ViolationKind.SHORT_VOWEL,
    "fix_zwnj": ViolationKind.ZWNJ_MISUSE,
}


@given(any_text, st.sampled_from(sorted(_STAGE_FLAGS)))
def test_disabled_stage_reports_nothing(text, flag):
    report = check(text, NormalizationConfig(**{flag: False}))
    assert _STAGE_FLAGS[flag] not in report.counts


@given(any_text)
def test_disabled_digits_and_repair_report_nothing(text):
    report = check(text, NormalizationConfig(unify_digits=DigitMode.PRESERVE), repair=False)
    assert ViolationKind.ARABIC_INDIC_DIGIT not in report.counts
    assert ViolationKind.SPACE_JOINED_AFFIX not in report.counts


@given(any_text)
def test_zwj_reported_exactly_when_present(text):
    report = check(text, report_zwj=True)
    zwj = [v for v in report if v.kind is ViolationKind.ZWJ_PRESENT]
    assert len(zwj) == text.count("\u200d")
    assert all(v.suggested is None for v in zwj)
    assert apply_fixes(text, report.violations) == standardize(text)
