import pytest
from oracles import ZWNJ, default_rewrite_table, naive_rewrite

from farsikit.charset import MappingTable, default_mapping_table
from farsikit.normalizer import (
    DigitMode,
    NormalizationConfig,
    Stage,
    fix_zwnj,
    map_characters,
    normalize,
    remove_tatweel,
    strip_diacritics,
    trace,
    unify_digits,
)


def test_map_characters():
    table = default_mapping_table()
    assert map_characters("كتاب", table) == "کتاب"
    assert map_characters("", table) == ""
    assert map_characters("کتاب ایرانی", table) == "کتاب ایرانی"


def test_map_characters_is_single_pass():
    table = MappingTable(((0x41, (0x42, 0x43)),))
    assert map_characters("AA", table) == "BCBC"


def test_remove_tatweel():
    assert remove_tatweel("کتـــاب") == "کتاب"
    assert remove_tatweel("ـــــ") == ""
    assert remove_tatweel("کتاب") == "کتاب"


def test_strip_diacritics():
    assert strip_diacritics("بَبر") == "ببر"
    assert strip_diacritics("بِبر") == "ببر"
    assert strip_diacritics("بُبر") == "ببر"
    assert strip_diacritics("ببر") == "ببر"
    # superscript alef and hamza above are not short vowels
    assert strip_diacritics("ٰٔ") == "ٰٔ"


def test_unify_digits():
    assert unify_digits("٠١٢") == "۰۱۲"
    assert unify_digits("٠١٢", DigitMode.PRESERVE) == "٠١٢"
    assert unify_digits("٠١٢", "preserve") == "٠١٢"
    assert unify_digits("123") == "123"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("کتاب‌ ها", "کتاب ها"),
        ("کتاب ‌ها", "کتاب ها"),
        ("کتاب‌‌ها", "کتاب‌ها"),
        ("‌", ""),
        ("‌‌‌", ""),
        ("‌کتاب", "کتاب"),
        ("کتاب‌", "کتاب"),
        ("می‌رود", "می‌رود"),
        # dal and alef do not join forward, so the ZWNJ breaks nothing
        ("خود‌کار", "خودکار"),
        ("ما‌ها", "ماها"),
        # a diacritic between the letter and the ZWNJ is looked through
        ("بَ‌ها", "بَ‌ها"),
        ("دَ‌ها", "دَها"),
        ("a‌b", "ab"),
    ],
)
def test_fix_zwnj(text, expected):
    assert fix_zwnj(text) == expected


def test_normalize_examples():
    assert normalize("كتـاب") == "کتاب"
    assert normalize("کتاب") == "کتاب"
    assert normalize("") == ""


def test_normalize_matches_naive_rewriter():
    table = default_rewrite_table()
    samples = [
        "كتـاب", "يك‌ ‌ها", "٣ـ‌ب", "ا‌‌ب", "بَ‌ِ‌ا", "ي‌ك", "‌ي‌", "ب ‌ ب", "ـ‌ب",
    ]
    for s in samples:
        assert normalize(s) == naive_rewrite(s, table), s


def test_stage_order_zwnj_sees_mapped_letters():
    # heh doachashmee maps to heh before ZWNJ repair runs
    cfg = NormalizationConfig()
    assert normalize("ھ‌ا", cfg) == "ه‌ا"
    # tatweel is deleted before the ZWNJ repair looks at neighbours
    assert normalize("دـ‌ا") == "دا"


def test_identity_config():
    cfg = NormalizationConfig.identity()
    text = "كتـــاب‌ ‌ها ٣ بَبر"
    assert normalize(text, cfg) == text


@pytest.mark.parametrize(
    "field, text, expected",
    [
        ("map_variants", "كتاب", "كتاب"),
        ("remove_tatweel", "کتـاب", "کتـاب"),
        ("strip_diacritics", "بَبر", "بَبر"),
        ("fix_zwnj", "کتاب‌‌ها", "کتاب‌‌ها"),
    ],
)
def test_each_flag_disables_its_stage(field, text, expected):
    cfg = NormalizationConfig(**{field: False})
    assert normalize(text, cfg) == expected


def test_digit_flag_is_independent_of_mapping():
    assert normalize("٣", NormalizationConfig(map_variants=False)) == "۳"
    assert normalize("٣", NormalizationConfig(unify_digits=DigitMode.PRESERVE)) == "٣"
    assert normalize("٣ي", NormalizationConfig(unify_digits="preserve")) == "٣ی"


def test_extended_table():
    cfg = NormalizationConfig(mapping=default_mapping_table(extended=True))
    assert normalize("ﻻ", cfg) == "لا"
    assert normalize("ﻻ") == "ﻻ"


def test_custom_mapping():
    cfg = NormalizationConfig(mapping=MappingTable(((ord("x"), (ord("y"),)),)))
    assert normalize("xي", cfg) == "yي"


def test_trace_concatenates_to_normalize():
    text = "كتـــاب‌ ‌ها ٣ بَبر‌‌ی"
    pairs = trace(text)
    assert len(pairs) == len(text)
    assert "".join(out for out, _ in pairs) == normalize(text)


def test_trace_stages():
    pairs = trace("كـَ٣‌")
    assert [s for _, s in pairs] == [
        Stage.MAP_VARIANTS, Stage.REMOVE_TATWEEL, Stage.STRIP_DIACRITICS,
        Stage.UNIFY_DIGITS, Stage.FIX_ZWNJ,
    ]
    assert trace("ب‌‌ا")[1:3] == [(ZWNJ, None), ("", Stage.FIX_ZWNJ)]


def test_config_accepts_string_digit_mode():
    assert NormalizationConfig(unify_digits="preserve").unify_digits is DigitMode.PRESERVE
    with pytest.raises(ValueError):
        NormalizationConfig(unify_digits="roman")
