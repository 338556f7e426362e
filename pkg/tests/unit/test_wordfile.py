"""Tests for ASCII and packed word files."""

from __future__ import annotations

import pytest

from ergodic_lab.core.errors import IoFailure
from ergodic_lab.sampler.wordfile import decode_packed, encode_packed, read_words, write_words
from ergodic_lab.schemas.word import BinaryWord


class TestPackedFraming:
    def test_layout(self) -> None:
        data = encode_packed([BinaryWord("101")])
        assert data == b"\x03\x00\x00\x00\x00\x00\x00\x00\xa0"

    def test_multiple_words(self) -> None:
        words = [BinaryWord("1" * 9), BinaryWord(""), BinaryWord("0110")]
        decoded = decode_packed(encode_packed(words))
        assert [str(w) for w in decoded] == ["1" * 9, "", "0110"]

    def test_truncated_header(self) -> None:
        with pytest.raises(IoFailure, match="length header"):
            decode_packed(b"\x03\x00")

    def test_truncated_payload(self) -> None:
        with pytest.raises(IoFailure, match="payload"):
            decode_packed(b"\x10\x00\x00\x00\x00\x00\x00\x00\xff")


class TestWordFiles:
    def test_ascii_file(self, tmp_path) -> None:
        path = write_words([BinaryWord("0101"), BinaryWord("11")], tmp_path / "w.txt")
        assert path.read_text() == "0101\n11\n"
        assert [str(w) for w in read_words(path)] == ["0101", "11"]

    def test_packed_file(self, tmp_path) -> None:
        words = [BinaryWord("0" * 1000), BinaryWord("1")]
        path = write_words(words, tmp_path / "w.bin", packed=True)
        assert read_words(path, packed=True) == words

    def test_blank_lines_skipped(self, tmp_path) -> None:
        path = tmp_path / "w.txt"
        path.write_text("01\n\n10\n", encoding="ascii")
        assert len(read_words(path)) == 2

    def test_malformed_ascii(self, tmp_path) -> None:
        path = tmp_path / "w.txt"
        path.write_text("0102\n", encoding="ascii")
        with pytest.raises(IoFailure, match="malformed"):
            read_words(path)

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(IoFailure):
            read_words(tmp_path / "absent.txt")
