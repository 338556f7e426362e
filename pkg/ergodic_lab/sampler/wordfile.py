"""Word file framing shared by ``sample`` output and ``dimension``/``deficiency`` input.

ASCII: one word per line as 0/1 characters.
Packed: per word, an 8-byte little-endian bit length followed by the bits
packed MSB-first and zero padded to a whole byte.
"""

from __future__ import annotations

import struct
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import structlog

from ergodic_lab.core.errors import IoFailure
from ergodic_lab.schemas.word import BinaryWord

logger = structlog.get_logger(__name__)

_LENGTH = struct.Struct("<Q")


def encode_packed(words: Sequence[BinaryWord]) -> bytes:
    chunks = []
    for word in words:
        chunks.append(_LENGTH.pack(word.length))
        chunks.append(np.packbits(word.bits, bitorder="big").tobytes())
    return b"".join(chunks)


def decode_packed(data: bytes) -> list[BinaryWord]:
    words: list[BinaryWord] = []
    offset = 0
    while offset < len(data):
        if offset + _LENGTH.size > len(data):
            raise IoFailure("truncated length header in packed word file", offset=offset)
        (n_bits,) = _LENGTH.unpack_from(data, offset)
        offset += _LENGTH.size
        n_bytes = (n_bits + 7) // 8
        if offset + n_bytes > len(data):
            raise IoFailure("truncated bit payload in packed word file", offset=offset)
        payload = np.frombuffer(data, dtype=np.uint8, count=n_bytes, offset=offset)
        words.append(BinaryWord(np.unpackbits(payload, count=n_bits, bitorder="big")))
        offset += n_bytes
    return words


def write_words(words: Sequence[BinaryWord], path: str | Path, *, packed: bool = False) -> Path:
    """Write words in ASCII or packed framing; returns the path written."""
    file_path = Path(path)
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        if packed:
            file_path.write_bytes(encode_packed(words))
        else:
            file_path.write_text("".join(f"{w}\n" for w in words), encoding="ascii")
    except OSError as exc:
        raise IoFailure(f"cannot write word file: {exc}", path=str(file_path)) from exc
    logger.info("words_written", path=str(file_path), count=len(words), packed=packed)
    return file_path


def read_words(path: str | Path, *, packed: bool = False) -> list[BinaryWord]:
    """Read every word of an ASCII or packed word file."""
    file_path = Path(path)
    try:
        if packed:
            return decode_packed(file_path.read_bytes())
        lines = file_path.read_text(encoding="ascii").splitlines()
    except OSError as exc:
        raise IoFailure(f"cannot read word file: {exc}", path=str(file_path)) from exc
    except UnicodeDecodeError as exc:
        raise IoFailure("word file is not ASCII", path=str(file_path)) from exc
    try:
        return [BinaryWord(line) for line in lines if line.strip()]
    except ValueError as exc:
        raise IoFailure(f"malformed word file: {exc}", path=str(file_path)) from exc
