"""Input acquisition: the codec works on whole files as byte streams.

WAV headers are kept in the byte stream so a decoded file is bit-identical
to the original. The parsed format is only used for reporting.
"""

import io
import wave
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import CodecError, EmptyInput


class MalformedWav(CodecError):
    """The file is not a PCM RIFF/WAVE file. It can still be sent raw."""


@dataclass(frozen=True)
class PcmFormat:
    sample_rate: int
    bits_per_sample: int
    channels: int
    data_bytes: int

    @property
    def duration(self) -> float:
        return self.data_bytes / (self.sample_rate * self.channels * self.bits_per_sample / 8)


@dataclass(frozen=True)
class PcmClip:
    bytes: bytes
    format: Optional[PcmFormat] = None

    @property
    def duration(self) -> Optional[float]:
        return None if self.format is None else self.format.duration


def parse_wav(data: bytes) -> PcmFormat:
    """Read the fmt and data chunks of an in-memory WAV file."""
    if data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedWav("missing RIFF/WAVE magic")
    try:
        with wave.open(io.BytesIO(data), "rb") as w:
            rate, width, channels = w.getframerate(), w.getsampwidth(), w.getnchannels()
            nframes = w.getnframes()
    except (wave.Error, EOFError) as exc:
        raise MalformedWav(str(exc)) from exc
    if width not in (1, 2):
        raise MalformedWav(f"unsupported sample width {8 * width} bits")
    if rate <= 0 or channels <= 0:
        raise MalformedWav("non-positive sample rate or channel count")
    return PcmFormat(rate, 8 * width, channels, nframes * width * channels)


def load_input(path, raw: bool = False) -> PcmClip:
    data = Path(path).read_bytes()
    if not data:
        raise EmptyInput(f"{path}: input file is empty")
    if raw:
        return PcmClip(data)
    return PcmClip(data, parse_wav(data))


def write_output(data, path) -> None:
    Path(path).write_bytes(bytes(data))


def wav_bytes(samples, sample_rate=8000, bits_per_sample=8, channels=1) -> bytes:
    """Wrap raw PCM sample bytes in a canonical 44-byte WAV header."""
    buf = io.BytesIO()
    with wave.open(buf, "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(bits_per_sample // 8)
        w.setframerate(sample_rate)
        w.writeframes(bytes(samples))
    return buf.getvalue()
