"""Byte <-> SMS-safe character mapping.

Bytes 32..255 map to the code point of the same value. Bytes 0..31 are
control characters that cannot travel in a text message, so they are lifted
by 256 into 256..287. The resulting 256-symbol alphabet never contains a
code point below 32.
"""

import re

from .errors import CodecError

SHIFT = 256
RESERVED_MAX = 31
SYMBOL_MAX = RESERVED_MAX + SHIFT  # 287

ALPHABET = frozenset(range(32, 256)) | frozenset(range(SHIFT, SYMBOL_MAX + 1))

_TO_TEXT = {b: b + SHIFT for b in range(RESERVED_MAX + 1)}
_FROM_TEXT = {b + SHIFT: b for b in range(RESERVED_MAX + 1)}
_BAD_CHAR = re.compile("[\x00-\x1f\u0120-\U0010ffff]")


class InvalidSymbol(CodecError, ValueError):
    def __init__(self, symbol, position=None):
        self.symbol = symbol
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"code point {symbol} is outside the SMS alphabet{where}")


def signed_to_unsigned(v: int) -> int:
    """Reinterpret a signed 8-bit value as unsigned (two's complement)."""
    if not -128 <= v <= 127:
        raise ValueError(f"{v} is not a signed 8-bit value")
    return v & 0xFF


def unsigned_to_signed(u: int) -> int:
    if not 0 <= u <= 255:
        raise ValueError(f"{u} is not an unsigned 8-bit value")
    return u - 256 if u > 127 else u


def byte_to_symbol(b: int) -> int:
    if not 0 <= b <= 255:
        raise ValueError(f"{b} is not a byte value")
    return b + SHIFT if b <= RESERVED_MAX else b


def symbol_to_byte(s: int) -> int:
    if s >= SHIFT and s <= SYMBOL_MAX:
        return s - SHIFT
    if 32 <= s < SHIFT:
        return s
    raise InvalidSymbol(s)


def bytes_to_symbols(bs) -> list[int]:
    return [byte_to_symbol(b) for b in bs]


def symbols_to_bytes(ss) -> bytes:
    out = bytearray(len(ss))
    for i, s in enumerate(ss):
        try:
            out[i] = symbol_to_byte(s)
        except InvalidSymbol:
            raise InvalidSymbol(s, i) from None
    return bytes(out)


# Text forms: one character per symbol. These are the fast paths used by the
# envelope, equivalent to the elementwise functions above.

def bytes_to_text(bs) -> str:
    return bytes(bs).decode("latin-1").translate(_TO_TEXT)


def text_to_bytes(text: str) -> bytes:
    bad = _BAD_CHAR.search(text)
    if bad is not None:
        raise InvalidSymbol(ord(bad.group()), bad.start())
    return text.translate(_FROM_TEXT).encode("latin-1")


def is_safe_text(text: str) -> bool:
    return _BAD_CHAR.search(text) is None
