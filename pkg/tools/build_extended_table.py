"""Regenerate src/farsikit/data/extended_map.txt.

Walks the Arabic presentation-form blocks and keeps every code point whose
compatibility decomposition, after the base mapping, consists solely of
Persian letters. Run from the repository root::

    python tools/build_extended_table.py
"""

import unicodedata
from pathlib import Path

from farsikit.charset import CharClass, classify, default_mapping_table

RANGES = [(0xFB50, 0xFDFF), (0xFE70, 0xFEFF)]
OUT = Path("src/farsikit/data/extended_map.txt")


def main():
    base = default_mapping_table().as_dict()
    lines = [
        "# Extended mapping: Arabic presentation forms and ligatures onto",
        "# Persian letters. Opt-in; entries may expand to several code points.",
        f"# Generated by tools/build_extended_table.py from Unicode {unicodedata.unidata_version}.",
        "# SRC REPL...",
    ]
    for lo, hi in RANGES:
        for cp in range(lo, hi + 1):
            decomp = unicodedata.decomposition(chr(cp))
            if not decomp.startswith("<"):
                continue
            parts = [int(h, 16) for h in decomp.split()[1:]]
            repl = []
            for p in parts:
                repl.extend(base.get(p, (p,)))
            if repl and all(classify(p) is CharClass.FARSI_LETTER for p in repl):
                lines.append(f"{cp:04X} " + " ".join(f"{p:04X}" for p in repl))
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines) - 4} entries to {OUT}")


if __name__ == "__main__":
    main()
