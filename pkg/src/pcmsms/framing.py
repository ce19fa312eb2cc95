"""Message envelope, SMS segmentation and receiver-side reassembly.

Envelope text layout (character offsets)::

    0-1    magic "VS"
    2      version "1"
    3      mode, "0" uncompressed / "1" compressed
    4-6    total segments - 1, 3 decimal digits
    7-14   original byte count, 8 decimal digits
    15     pad bit count, 1 digit
    16-527 code lengths, 256 x 2 digits (compressed mode only)
    ...    body symbols

Each SMS is a 3-digit decimal index followed by up to 157 envelope
characters, so no rendered segment exceeds 160 characters.
"""

import enum
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

from . import huffman
from .errors import CodecError, EmptyInput
from .symbols import bytes_to_text, is_safe_text, text_to_bytes

SMS_LIMIT = 160
INDEX_WIDTH = 3
PAYLOAD_LIMIT = SMS_LIMIT - INDEX_WIDTH  # 157
MAX_SEGMENTS = 1000
MAX_ORIG_LEN = 99_999_999

MAGIC = "VS"
VERSION = "1"
HEADER_LEN = 16
CODEBOOK_LEN = huffman.CODEBOOK_FIELD_WIDTH

_INDEX = re.compile(r"[0-9]{3}")
_HEADER = re.compile(r"[01][0-9]{3}[0-9]{8}[0-7]")


class FramingError(CodecError):
    pass


class MessageTooLarge(FramingError):
    pass


class MissingSegments(FramingError):
    def __init__(self, indices):
        self.indices = sorted(indices)
        super().__init__("missing segments: " + ", ".join(map(str, self.indices)))


class ConflictingDuplicate(FramingError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"segment {index} received twice with different payloads")


class MalformedSegment(FramingError):
    pass


class CountMismatch(FramingError):
    pass


class BadMagic(FramingError):
    pass


class UnsupportedVersion(FramingError):
    pass


class MalformedHeaderField(FramingError):
    pass


class Mode(enum.Enum):
    UNCOMPRESSED = "0"
    COMPRESSED = "1"

    @classmethod
    def of(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        if isinstance(value, bool):
            return cls.COMPRESSED if value else cls.UNCOMPRESSED
        return cls(value) if value in ("0", "1") else cls[str(value).upper()]


def segment_count(char_count: int) -> int:
    return math.ceil(char_count / PAYLOAD_LIMIT)


def envelope_size(body_len: int, mode) -> int:
    """Envelope character count for a body of ``body_len`` symbols."""
    extra = CODEBOOK_LEN if Mode.of(mode) is Mode.COMPRESSED else 0
    return HEADER_LEN + extra + body_len


@dataclass(frozen=True)
class MessageEnvelope:
    mode: Mode
    seg_total_minus_one: int
    orig_len: int
    pad_bits: int
    codebook: Optional[huffman.HuffmanCodebook]
    body: str

    @property
    def char_count(self) -> int:
        return envelope_size(len(self.body), self.mode)

    @property
    def segment_total(self) -> int:
        return self.seg_total_minus_one + 1

    @property
    def body_symbols(self) -> list[int]:
        return [ord(c) for c in self.body]

    def header(self) -> str:
        head = (
            f"{MAGIC}{VERSION}{self.mode.value}{self.seg_total_minus_one:03d}"
            f"{self.orig_len:08d}{self.pad_bits}"
        )
        if self.mode is Mode.COMPRESSED:
            head += huffman.serialize_codebook(self.codebook)
        return head

    def render(self) -> str:
        return self.header() + self.body


@dataclass(frozen=True)
class SmsSegment:
    index: int
    payload: str

    def render(self) -> str:
        return f"{self.index:03d}{self.payload}"

    @classmethod
    def parse(cls, text: str) -> "SmsSegment":
        if len(text) > SMS_LIMIT:
            raise MalformedSegment(f"segment is {len(text)} characters, limit is {SMS_LIMIT}")
        if not _INDEX.fullmatch(text[:INDEX_WIDTH]):
            raise MalformedSegment(f"segment does not start with a 3-digit index: {text[:3]!r}")
        payload = text[INDEX_WIDTH:]
        if not is_safe_text(payload):
            raise MalformedSegment(f"segment {text[:3]} contains characters outside the alphabet")
        return cls(int(text[:INDEX_WIDTH]), payload)


def build_envelope(bs, mode) -> MessageEnvelope:
    mode = Mode.of(mode)
    bs = bytes(bs)
    if not bs:
        raise EmptyInput("cannot frame an empty message")
    if len(bs) > MAX_ORIG_LEN:
        raise MessageTooLarge(f"{len(bs)} bytes exceeds the 8-digit length field")
    if mode is Mode.COMPRESSED:
        codebook, packed = huffman.compress(bs)
        body, pad = bytes_to_text(packed.data), packed.pad_bits
    else:
        codebook, body, pad = None, bytes_to_text(bs), 0
    total = segment_count(envelope_size(len(body), mode))
    if total > MAX_SEGMENTS:
        raise MessageTooLarge(f"message needs {total} segments, limit is {MAX_SEGMENTS}")
    return MessageEnvelope(mode, total - 1, len(bs), pad, codebook, body)


def segment_text(text: str) -> list[SmsSegment]:
    """Cut envelope text into consecutive 157-character payloads."""
    segs = [
        SmsSegment(i, text[pos:pos + PAYLOAD_LIMIT])
        for i, pos in enumerate(range(0, len(text), PAYLOAD_LIMIT))
    ]
    if len(segs) > MAX_SEGMENTS:
        raise MessageTooLarge(f"message needs {len(segs)} segments, limit is {MAX_SEGMENTS}")
    return segs


def segment_message(env: MessageEnvelope) -> list[SmsSegment]:
    return segment_text(env.render())


def reassemble_segments(segs: Iterable[Union[SmsSegment, str]]) -> str:
    """Order received segments by index and join their payloads.

    Accepts segments in any order, with repeats. The segment total is read
    from the header carried by segment 0.
    """
    received: dict[int, str] = {}
    for seg in segs:
        if isinstance(seg, str):
            seg = SmsSegment.parse(seg)
        elif len(seg.payload) > PAYLOAD_LIMIT or not 0 <= seg.index < MAX_SEGMENTS:
            raise MalformedSegment(f"segment {seg.index} is out of bounds")
        elif not is_safe_text(seg.payload):
            raise MalformedSegment(f"segment {seg.index} contains characters outside the alphabet")
        prev = received.setdefault(seg.index, seg.payload)
        if prev != seg.payload:
            raise ConflictingDuplicate(seg.index)

    if 0 not in received:
        top = max(received, default=0)
        raise MissingSegments([i for i in range(top + 1) if i not in received])
    field = received[0][4:7]
    if not re.fullmatch(r"[0-9]{3}", field):
        raise MalformedHeaderField(f"segment total field is not 3 digits: {field!r}")
    total = int(field) + 1
    top = max(received)
    missing = [i for i in range(total) if i not in received]
    if missing:
        raise MissingSegments(missing)
    if top + 1 != total:
        raise CountMismatch(f"header declares {total} segments but index {top} was received")
    return "".join(received[i] for i in range(total))


def parse_envelope(text: str) -> MessageEnvelope:
    if text[:2] != MAGIC:
        raise BadMagic(f"expected magic {MAGIC!r}, found {text[:2]!r}")
    if text[2:3] != VERSION:
        raise UnsupportedVersion(f"unsupported envelope version {text[2:3]!r}")
    if len(text) < HEADER_LEN or not _HEADER.fullmatch(text[3:HEADER_LEN]):
        raise MalformedHeaderField(f"malformed header {text[:HEADER_LEN]!r}")
    mode = Mode(text[3])
    seg_minus_one = int(text[4:7])
    orig_len = int(text[7:15])
    pad = int(text[15])
    if orig_len < 1:
        raise MalformedHeaderField("original length must be at least 1")

    if mode is Mode.COMPRESSED:
        if len(text) < HEADER_LEN + CODEBOOK_LEN:
            raise MalformedHeaderField("envelope too short to hold the codebook")
        codebook = huffman.deserialize_codebook(text[HEADER_LEN:HEADER_LEN + CODEBOOK_LEN])
        body = text[HEADER_LEN + CODEBOOK_LEN:]
    else:
        codebook, body = None, text[HEADER_LEN:]
        if pad:
            raise MalformedHeaderField("pad bits must be 0 in uncompressed mode")
        if len(body) != orig_len:
            raise MalformedHeaderField(
                f"body has {len(body)} symbols, header declares {orig_len}"
            )
    if segment_count(len(text)) != seg_minus_one + 1:
        raise MalformedHeaderField(
            f"header declares {seg_minus_one + 1} segments for {len(text)} characters"
        )
    return MessageEnvelope(mode, seg_minus_one, orig_len, pad, codebook, body)


def decode_message(env: MessageEnvelope) -> bytes:
    data = text_to_bytes(env.body)
    if env.mode is Mode.UNCOMPRESSED:
        return data
    packed = huffman.PackedBitstream(data, env.pad_bits)
    return huffman.decode_bits(packed, env.codebook, env.orig_len)


def encode(bs, mode) -> list[SmsSegment]:
    return segment_message(build_envelope(bs, mode))


def decode(segs) -> bytes:
    return decode_message(parse_envelope(reassemble_segments(segs)))


def write_segments(segs: Iterable[SmsSegment], path) -> None:
    """Segments file: UTF-8, one rendered segment per LF-terminated line."""
    text = "".join(seg.render() + "\n" for seg in segs)
    Path(path).write_bytes(text.encode("utf-8"))


def read_segments(path) -> list[SmsSegment]:
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedSegment(f"segments file is not valid UTF-8: {exc}") from exc
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [SmsSegment.parse(line) for line in lines]
