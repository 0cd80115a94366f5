"""Byte payloads <-> sequences of U1(q) messages.

Each B-byte chunk is read as a big-endian integer N < 3^(2n) and written as
2n little-endian base-3 digits: the first n become m2, the rest m3.  The
payload is always padded with 0x80 followed by 0x00 bytes to a multiple
of B, so the marker sits in the final chunk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BadPadding, BlockOverflow
from .field import Field
from .scheme import Plaintext

PADDING_SCHEME = "iso7816-4"


@dataclass(frozen=True)
class BlockCodec:
    field: Field

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def block_bytes(self) -> int:
        """Largest B with 256^B <= 3^(2n)."""
        limit = 3 ** (2 * self.n)
        b = 0
        while 256 ** (b + 1) <= limit:
            b += 1
        return b


def _to_digits(value: int, count: int) -> list[int]:
    out = []
    for _ in range(count):
        value, d = divmod(value, 3)
        out.append(d)
    return out


def encode_bytes(payload: bytes, codec: BlockCodec) -> list[Plaintext]:
    B, n, f = codec.block_bytes, codec.n, codec.field
    padded = bytes(payload) + b"\x80"
    padded += b"\x00" * (-len(padded) % B)
    blocks = []
    for off in range(0, len(padded), B):
        digits = _to_digits(int.from_bytes(padded[off:off + B], "big"), 2 * n)
        blocks.append(Plaintext(f.from_trits(digits[:n]), f.from_trits(digits[n:])))
    return blocks


def decode_bytes(blocks: Iterable[Plaintext], codec: BlockCodec) -> bytes:
    B = codec.block_bytes
    limit = 256 ** B
    out = bytearray()
    for block in blocks:
        value = 0
        for d in reversed(block.m2.trits + block.m3.trits):
            value = 3 * value + d
        if value >= limit:
            raise BlockOverflow(f"block value {value} does not fit in {B} bytes")
        out += value.to_bytes(B, "big")
    if not out:
        raise BadPadding("no blocks")
    # the marker must sit in the final block
    end = len(out) - 1
    stop = len(out) - B
    while end >= stop and out[end] == 0:
        end -= 1
    if end < stop or out[end] != 0x80:
        raise BadPadding("missing 0x80 padding marker in final block")
    return bytes(out[:end])
