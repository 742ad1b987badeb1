#!/usr/bin/env python3
"""Independent per-token classifier for the byte-level fixture vocabulary.

Shares no code or tables with the Rust crate: the byte alphabet is rebuilt
from its algorithmic definition, letters come from Python's unicodedata,
and script blocks are hard-coded from the Unicode block list. The output
(crates/core/data/fixtures/byte_vocab_oracle.json) is frozen and compared
against the Rust partition in the acceptance suite.
"""

import json
import unicodedata
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "data" / "fixtures"

BLOCKS = {
    "EN": [(0x0000, 0x007F), (0x0080, 0x00FF), (0x0100, 0x017F), (0x0180, 0x024F),
           (0x1E00, 0x1EFF), (0xFF00, 0xFF5E)],
    "RU": [(0x0400, 0x04FF), (0x0500, 0x052F), (0x1C80, 0x1C8F), (0x2DE0, 0x2DFF), (0xA640, 0xA69F)],
    "AR": [(0x0600, 0x06FF), (0x0750, 0x077F), (0x08A0, 0x08FF), (0xFB50, 0xFDFF), (0xFE70, 0xFEFF)],
    "ZH": [(0x3400, 0x4DBF), (0x4E00, 0x9FFF), (0xF900, 0xFAFF), (0x20000, 0x2A6DF),
           (0x2A700, 0x2EBEF), (0x2F800, 0x2FA1F), (0x30000, 0x3134F)],
}


def byte_alphabet():
    keep = [b for b in range(256) if 0x21 <= b <= 0x7E or 0xA1 <= b <= 0xAC or 0xAE <= b <= 0xFF]
    table, extra = {}, 0
    for b in range(256):
        if b in keep:
            table[chr(b)] = b
        else:
            table[chr(256 + extra)] = b
            extra += 1
    return table


def owner(ch):
    cp = ord(ch)
    for lang, ranges in BLOCKS.items():
        if any(lo <= cp <= hi for lo, hi in ranges):
            return lang
    return "OTHER"


def category(text, target):
    if text is None:
        return 1
    langs = {owner(ch) for ch in text if unicodedata.category(ch).startswith("L")}
    if not langs:
        return 1
    return 0 if langs == {target} else 2


def main():
    vocab = json.loads((FIXTURES / "byte_vocab.json").read_text(encoding="utf-8"))
    alphabet = byte_alphabet()
    specials = set(vocab["special_tokens"])
    texts = []
    for tok in sorted(vocab["tokens"], key=lambda t: t["id"]):
        if tok["surface"] in specials:
            texts.append(None)
            continue
        raw = bytes(alphabet[c] for c in tok["surface"])
        try:
            texts.append(raw.decode("utf-8"))
        except UnicodeDecodeError:
            texts.append(None)
    out = {}
    for target in ("EN", "ZH", "AR", "RU"):
        cats = [category(t, target) for t in texts]
        out[target] = {
            "categories": cats,
            "counts": {"target": cats.count(0), "neutral": cats.count(1), "distractor": cats.count(2)},
        }
    (FIXTURES / "byte_vocab_oracle.json").write_text(json.dumps(out) + "\n", encoding="utf-8")
    for k, v in out.items():
        print(k, v["counts"])


if __name__ == "__main__":
    main()
