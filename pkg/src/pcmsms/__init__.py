"""Carry PCM audio bytes across an SMS-style text channel.

Pipeline: bytes -> (optional) canonical Huffman -> SMS-safe symbols ->
self-describing envelope -> indexed 160-character segments, and back.
"""

from .errors import CodecError
from .framing import (
    MessageEnvelope,
    SmsSegment,
    build_envelope,
    decode_message,
    parse_envelope,
    reassemble_segments,
    segment_message,
)
from .pcm import PcmClip, load_input, write_output

__all__ = [
    "CodecError",
    "MessageEnvelope",
    "PcmClip",
    "SmsSegment",
    "build_envelope",
    "decode_message",
    "load_input",
    "parse_envelope",
    "reassemble_segments",
    "segment_message",
    "write_output",
]

__version__ = "0.1.0"
