"""Canonical Huffman coding over byte values.

Only the 256 code lengths travel with a message; both ends rebuild the same
canonical codes from them. Bits are packed MSB-first and the final byte is
zero padded.
"""

import heapq
import re
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CodecError, EmptyInput

MAX_CODE_LENGTH = 99  # two decimal digits on the wire
CODEBOOK_FIELD_WIDTH = 512

# Lookup width for the table-driven decoder. Longer codes fall back to a
# per-length search.
_PEEK_BITS = 12

_BYTE_BITS = [format(i, "08b") for i in range(256)]
_DIGITS = re.compile(r"[0-9]{%d}" % CODEBOOK_FIELD_WIDTH)


class HuffmanError(CodecError):
    pass


class CodeTooLong(HuffmanError):
    pass


class SymbolNotInCodebook(HuffmanError):
    def __init__(self, byte):
        self.byte = byte
        super().__init__(f"byte {byte} has no code in the codebook")


class TruncatedBitstream(HuffmanError):
    pass


class TrailingGarbage(HuffmanError):
    pass


class InvalidCode(HuffmanError):
    """Bit pattern matches no code (only possible with a one-symbol codebook)."""


class InvalidCodebook(HuffmanError):
    pass


class MalformedCodebookField(HuffmanError):
    pass


class PackedBitstream(NamedTuple):
    data: bytes
    pad_bits: int

    @property
    def total_bits(self) -> int:
        return 8 * len(self.data) - self.pad_bits


def count_frequencies(bs) -> list[int]:
    """Histogram of byte values, as a list of 256 counts."""
    if not bs:
        raise EmptyInput("cannot count frequencies of an empty input")
    counts = [0] * 256
    for b, c in Counter(bs).items():
        counts[b] = c
    return counts


@dataclass(frozen=True)
class HuffmanCodebook:
    """Code length per byte value; 0 means the byte has no code."""

    lengths: tuple

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if len(self.lengths) != 256:
            raise InvalidCodebook(f"expected 256 code lengths, got {len(self.lengths)}")

    def validate(self):
        """Raise InvalidCodebook unless the lengths describe a usable prefix code."""
        used = [n for n in self.lengths if n]
        if any(n < 0 or n > MAX_CODE_LENGTH for n in self.lengths):
            raise InvalidCodebook("code length out of range 0..99")
        if not used:
            raise InvalidCodebook("codebook has no symbols")
        if len(used) == 1:
            if used[0] != 1:
                raise InvalidCodebook("a single-symbol codebook must use a 1-bit code")
            return self
        top = max(used)
        if sum(1 << (top - n) for n in used) != 1 << top:
            raise InvalidCodebook("code lengths violate Kraft equality")
        return self

    def codes(self) -> dict[int, str]:
        """Canonical codes as bit strings, keyed by byte value.

        Symbols are ordered by (length, byte value) and receive consecutive
        code values, shifted left whenever the length grows.
        """
        order = sorted((n, b) for b, n in enumerate(self.lengths) if n)
        codes = {}
        code = 0
        prev = order[0][0] if order else 0
        for n, b in order:
            code <<= n - prev
            codes[b] = format(code, f"0{n}b")
            code += 1
            prev = n
        return codes

    def cost(self, counts) -> int:
        return sum(c * n for c, n in zip(counts, self.lengths))


def build_codebook(counts) -> HuffmanCodebook:
    """Optimal code lengths for a 256-entry frequency table.

    Queue order is (weight, sequence); leaves take sequence numbers in byte
    order, merged nodes continue the sequence in creation order. This fixes
    the tree for every input.
    """
    if len(counts) != 256:
        raise ValueError("frequency table must have 256 entries")
    heap = [(c, b, b) for b, c in enumerate(counts) if c > 0]
    if not heap:
        raise EmptyInput("frequency table is all zero")
    lengths = [0] * 256
    if len(heap) == 1:
        lengths[heap[0][2]] = 1
        return HuffmanCodebook(lengths)

    heapq.heapify(heap)
    seq = 256
    while len(heap) > 1:
        w1, _, a = heapq.heappop(heap)
        w2, _, b = heapq.heappop(heap)
        heapq.heappush(heap, (w1 + w2, seq, (a, b)))
        seq += 1

    stack = [(heap[0][2], 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, tuple):
            stack.append((node[0], depth + 1))
            stack.append((node[1], depth + 1))
        else:
            if depth > MAX_CODE_LENGTH:
                raise CodeTooLong(f"byte {node} needs a {depth}-bit code")
            lengths[node] = depth
    return HuffmanCodebook(lengths)


def encode_bits(bs, cb: HuffmanCodebook) -> PackedBitstream:
    bs = bytes(bs)
    codes = [""] * 256
    for b, code in cb.codes().items():
        codes[b] = code
    for b in set(bs):
        if not codes[b]:
            raise SymbolNotInCodebook(b)
    bits = "".join(map(codes.__getitem__, bs))
    if not bits:
        return PackedBitstream(b"", 0)
    pad = -len(bits) % 8
    bits += "0" * pad
    return PackedBitstream(int(bits, 2).to_bytes(len(bits) // 8, "big"), pad)


def _decode_table(codes, peek):
    table = {}
    for b, code in codes.items():
        n = len(code)
        if n > peek:
            table.setdefault(code[:peek], None)
            continue
        fill = peek - n
        for tail in range(1 << fill):
            table[code + (format(tail, f"0{fill}b") if fill else "")] = (b, n)
    return table


def decode_bits(pb: PackedBitstream, cb: HuffmanCodebook, n: int) -> bytes:
    """Decode exactly ``n`` bytes, consuming every non-padding bit."""
    cb.validate()
    data, pad = bytes(pb[0]), pb[1]
    if not 0 <= pad <= 7 or (not data and pad):
        raise TrailingGarbage(f"invalid pad bit count {pad}")
    if n < 0:
        raise ValueError("expected byte count must be non-negative")
    total = 8 * len(data) - pad
    bits = "".join(map(_BYTE_BITS.__getitem__, data))
    if "1" in bits[total:]:
        raise TrailingGarbage("padding bits are not zero")

    codes = cb.codes()
    peek = min(_PEEK_BITS, max(map(len, codes.values())))
    table = _decode_table(codes, peek)
    long_codes = {code: b for b, code in codes.items() if len(code) > peek}
    long_lengths = sorted({len(c) for c in long_codes})
    bits = bits[:total] + "0" * peek

    out = bytearray(n)
    pos = 0
    for i in range(n):
        if pos >= total:
            raise TruncatedBitstream(f"bits exhausted after {i} of {n} symbols")
        entry = table.get(bits[pos:pos + peek])
        if entry is None:
            for length in long_lengths:
                b = long_codes.get(bits[pos:pos + length])
                if b is not None:
                    entry = (b, length)
                    break
            else:
                if long_lengths and pos + long_lengths[-1] > total:
                    raise TruncatedBitstream(f"bits exhausted inside symbol {i} of {n}")
                raise InvalidCode(f"no code matches the bits at offset {pos}")
        out[i] = entry[0]
        pos += entry[1]
        if pos > total:
            raise TruncatedBitstream(f"bits exhausted inside symbol {i} of {n}")
    if pos != total:
        raise TrailingGarbage(f"{total - pos} unconsumed bits after {n} symbols")
    return bytes(out)


def serialize_codebook(cb: HuffmanCodebook) -> str:
    return "".join(f"{n:02d}" for n in cb.lengths)


def deserialize_codebook(text: str) -> HuffmanCodebook:
    if len(text) != CODEBOOK_FIELD_WIDTH or not _DIGITS.fullmatch(text):
        raise MalformedCodebookField(
            f"codebook field must be {CODEBOOK_FIELD_WIDTH} decimal digits"
        )
    lengths = [int(text[i:i + 2]) for i in range(0, CODEBOOK_FIELD_WIDTH, 2)]
    return HuffmanCodebook(lengths).validate()


def compress(bs) -> tuple[HuffmanCodebook, PackedBitstream]:
    cb = build_codebook(count_frequencies(bs))
    return cb, encode_bits(bs, cb)
