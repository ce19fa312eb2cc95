"""Seeded stand-in for the network path between two handsets.

The channel drops, repeats and reorders whole segments; it never alters a
segment's text. Randomness comes from ``random.Random`` (MT19937) and only
its ``random()`` stream is used, whose output for a given seed is stable
across Python versions:

* duplicates: ``floor(random() * n)`` picks a segment, ``duplicate_count`` times
* shuffle: Fisher-Yates from the end, swap ``i`` with ``floor(random() * (i + 1))``
"""

import random
from dataclasses import dataclass, field

from .errors import CodecError


class UnknownDropIndex(CodecError, ValueError):
    pass


@dataclass(frozen=True)
class ChannelScript:
    seed: int = 0
    shuffle: bool = False
    duplicate_count: int = 0
    drop_indices: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.duplicate_count < 0:
            raise ValueError("duplicate_count must be non-negative")
        object.__setattr__(self, "drop_indices", frozenset(self.drop_indices))


def apply_channel(segs, script: ChannelScript) -> list:
    """Drop, then append duplicates, then optionally shuffle."""
    present = {seg.index for seg in segs}
    unknown = sorted(script.drop_indices - present)
    if unknown:
        raise UnknownDropIndex(f"cannot drop absent segment(s): {unknown}")

    out = [seg for seg in segs if seg.index not in script.drop_indices]
    rng = random.Random(script.seed)
    if out:
        n = len(out)
        out.extend(out[int(rng.random() * n)] for _ in range(script.duplicate_count))
    if script.shuffle:
        for i in range(len(out) - 1, 0, -1):
            j = int(rng.random() * (i + 1))
            out[i], out[j] = out[j], out[i]
    return out
