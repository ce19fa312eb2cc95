"""Character and connected-SMS counts for both transmission modes."""

import csv
from dataclasses import astuple, dataclass, fields
from typing import Optional

from .framing import Mode, build_envelope, segment_count
from .pcm import PcmClip


@dataclass(frozen=True)
class StatsRecord:
    input_name: str
    orig_bytes: int
    chars_uncompressed: int
    chars_compressed: int
    segs_uncompressed: int
    segs_compressed: int
    compression_ratio: float
    duration_s: Optional[float] = None


FIELDS = [f.name for f in fields(StatsRecord)]


def measure(clip: PcmClip, name: str) -> StatsRecord:
    plain = build_envelope(clip.bytes, Mode.UNCOMPRESSED).char_count
    packed = build_envelope(clip.bytes, Mode.COMPRESSED).char_count
    return StatsRecord(
        input_name=name,
        orig_bytes=len(clip.bytes),
        chars_uncompressed=plain,
        chars_compressed=packed,
        segs_uncompressed=segment_count(plain),
        segs_compressed=segment_count(packed),
        compression_ratio=packed / plain,
        duration_s=clip.duration,
    )


def write_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(FIELDS)
        for rec in records:
            row = list(astuple(rec))
            row[6] = f"{rec.compression_ratio:.6f}"
            row[7] = "" if rec.duration_s is None else f"{rec.duration_s:.6f}"
            writer.writerow(row)


def read_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
