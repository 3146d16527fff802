import io
import json
import subprocess
import sys

import pytest

from farsikit import cli
from farsikit.cli import BOM, InputEncodingError, iter_lines, main


@pytest.fixture
def run(tmp_path, capsysbinary):
    """Run the CLI in-process on a text input; returns (code, stdout, stderr)."""

    def go(args, text=None, data=None):
        argv = list(args)
        if text is not None or data is not None:
            path = tmp_path / "input.txt"
            path.write_bytes(data if data is not None else text.encode("utf-8"))
            argv.append(str(path))
        code = main(argv)
        out, err = capsysbinary.readouterr()
        return code, out, err.decode("utf-8", "replace")

    return go


def test_normalize(run):
    code, out, _ = run(["normalize"], "كتـاب\n")
    assert code == 0
    assert out.decode() == "کتاب\n"


def test_normalize_repairs_affixes_by_default(run):
    assert run(["normalize"], "کتاب ها\n")[1].decode() == "کتاب‌ها\n"
    assert run(["normalize", "--no-repair-affixes"], "کتاب ها\n")[1].decode() == "کتاب ها\n"


def test_normalize_preserves_line_structure(run):
    assert run(["normalize"], "كتاب\n\nي")[1].decode() == "کتاب\n\nی"
    assert run(["normalize"], "")[1] == b""


def test_normalize_flags(run):
    text = "كتـَاب ٣\n"
    args = ["normalize", "--no-map-variants", "--keep-tatweel", "--keep-diacritics", "--digits", "preserve"]
    assert run(args, text)[1].decode() == text
    assert run(["normalize", "--no-fix-zwnj"], "ما‌ها\n")[1].decode() == "ما‌ها\n"


def test_output_file(run, tmp_path):
    dest = tmp_path / "out.txt"
    code, out, _ = run(["normalize", "-o", str(dest)], "ي\n")
    assert code == 0 and out == b""
    assert dest.read_text(encoding="utf-8") == "ی\n"


def test_bom_is_re_emitted(run):
    code, out, _ = run(["normalize"], data=BOM + "ي\n".encode())
    assert out == BOM + "ی\n".encode()


def test_bom_excluded_from_offsets(run):
    _, out, _ = run(["check", "--format", "json"], data=BOM + "ك".encode())
    assert json.loads(out)["violations"][0]["start"] == 0


def test_tokenize(run):
    code, out, _ = run(["tokenize"], "او رفت.\nکتاب ها\n")
    assert code == 0
    assert out.decode().splitlines() == [
        "Word\t0\t2\tاو",
        "Word\t3\t6\tرفت",
        "Punct\t6\t7\t.",
        "Word\t8\t15\tکتاب‌ها",
    ]


def test_tokenize_abbreviations(run, tmp_path):
    abbr = tmp_path / "abbr.txt"
    abbr.write_text("ق.م.\n", encoding="utf-8")
    _, out, _ = run(["tokenize", "--abbrev", str(abbr)], "۵ ق.م.")
    assert out.decode().splitlines()[1] == "Word\t2\t6\tق.م."


def test_tokenize_dash_flag(run):
    _, out, _ = run(["tokenize", "--no-dash-compounds"], "الف-ب")
    assert [l.split("\t")[0] for l in out.decode().splitlines()] == ["Word", "Punct", "Word"]


def test_check_clean(run):
    code, out, _ = run(["check"], "کتاب\n")
    assert code == 0
    assert out.decode() == "0 violations in 5 code points\n"


def test_check_violation(run):
    code, out, _ = run(["check", "--format", "json"], "کتاب ها\n")
    assert code == 1
    report = json.loads(out)
    assert len(report["violations"]) == 1
    assert report["violations"][0]["kind"] == "SpaceJoinedAffix"


def test_check_offsets_are_cumulative(run):
    _, out, _ = run(["check", "--format", "json"], "کتاب\nكتاب\n")
    report = json.loads(out)
    assert report["total_code_points"] == 10
    assert [(v["start"], v["end"]) for v in report["violations"]] == [(5, 6)]


def test_check_multiple_files(tmp_path, capsysbinary):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text("کتاب\n", encoding="utf-8")
    b.write_text("ي\n", encoding="utf-8")
    assert main(["check", str(a), str(b)]) == 1
    out = capsysbinary.readouterr().out.decode()
    assert f"==> {a} <==" in out and f"==> {b} <==" in out


def test_check_report_zwj(run):
    assert run(["check"], "ب‍ا")[0] == 0
    code, out, _ = run(["check", "--report-zwj", "--format", "json"], "ب‍ا")
    assert code == 1
    assert json.loads(out)["violations"][0]["suggested"] is None


def test_split_attached(run, tmp_path):
    known = tmp_path / "known.txt"
    known.write_text("کتاب\n", encoding="utf-8")
    _, out, _ = run(["normalize", "--split-attached", "--known-words", str(known)], "کتابها\n")
    assert out.decode() == "کتاب‌ها\n"


def test_split_attached_needs_known_words(run):
    code, _, err = run(["normalize", "--split-attached"], "x\n")
    assert code == 2
    assert "known-words" in err


def test_invalid_utf8(run):
    code, _, err = run(["normalize"], data=b"ab\xffcd\n")
    assert code == 3
    assert "byte offset 2" in err


def test_invalid_utf8_offset_on_later_line(run):
    code, _, err = run(["check"], data="ي\n".encode() + b"x\xc3")
    assert code == 3
    assert "byte offset 4" in err


def test_missing_table(run, tmp_path):
    code, _, err = run(["normalize", "--table", str(tmp_path / "nope.txt")], "x\n")
    assert code == 2
    assert "nope.txt" in err


def test_bad_table(run, tmp_path):
    table = tmp_path / "t.txt"
    table.write_bytes(b"0041 0042\n0042 0043\n")
    code, _, err = run(["normalize", "--table", str(table)], "x\n")
    assert code == 2
    assert "line 2" in err


def test_custom_table(run, tmp_path):
    table = tmp_path / "t.txt"
    table.write_bytes(b"0041 0042\n")
    assert run(["normalize", "--table", str(table)], "Aي\n")[1].decode() == "Bي\n"
    assert run(["normalize", "--table", str(table), "--extended"], "Aﻻ\n")[1].decode() == "Bلا\n"


def test_bad_lexicon(run, tmp_path):
    lex = tmp_path / "lex.tsv"
    lex.write_text("ها suffix\n", encoding="utf-8")
    assert run(["normalize", "--affixes", str(lex)], "x\n")[0] == 2


def test_missing_input(tmp_path, capsysbinary):
    assert main(["normalize", str(tmp_path / "missing.txt")]) == 2


def test_usage_error(capsysbinary):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_iter_lines():
    lines = list(iter_lines(io.BytesIO(BOM + b"a\nb"), "x"))
    assert lines == [("a", True, True), ("b", False, False)]
    with pytest.raises(InputEncodingError) as info:
        list(iter_lines(io.BytesIO(BOM + b"\xff"), "x"))
    assert info.value.offset == 3


def test_deterministic(run):
    text = "كتاب هـا\nمي رود ٣\n"
    assert run(["normalize"], text)[1] == run(["normalize"], text)[1]


def test_pipe_composition():
    """normalize | check is clean for messy input, through real processes."""
    text = "كتـاب ها را‌ ‌به خانه مي برد ٣ بَبر‍\n\nتنها"
    norm = subprocess.run(
        [sys.executable, "-m", "farsikit", "normalize"], input=text.encode(), capture_output=True
    )
    assert norm.returncode == 0
    chk = subprocess.run(
        [sys.executable, "-m", "farsikit", "check"], input=norm.stdout, capture_output=True
    )
    assert chk.returncode == 0, chk.stdout.decode()


def test_stdin_dash(monkeypatch, capsysbinary):
    class Stdin:
        buffer = io.BytesIO("ي\n".encode())

    monkeypatch.setattr(cli.sys, "stdin", Stdin)
    assert main(["normalize", "-"]) == 0
    assert capsysbinary.readouterr().out.decode() == "ی\n"
