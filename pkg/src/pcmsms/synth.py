"""Deterministic speech-like 8-bit PCM for trend experiments.

A voiced source (fundamental plus a few formant-range partials) is gated by
a syllable-rate envelope, lightly dithered and quantised to unsigned 8-bit
samples centred on 128.
"""

import math
import random

from .pcm import wav_bytes


def speech_like_samples(seconds: float, sample_rate: int = 8000, seed: int = 0) -> bytes:
    rng = random.Random(seed)
    f0 = rng.uniform(100.0, 180.0)
    partials = [
        (f0, 1.0, rng.uniform(0, 2 * math.pi)),
        (rng.uniform(400, 800), 0.6, rng.uniform(0, 2 * math.pi)),
        (rng.uniform(1000, 1800), 0.3, rng.uniform(0, 2 * math.pi)),
        (rng.uniform(2200, 3000), 0.15, rng.uniform(0, 2 * math.pi)),
    ]
    norm = sum(a for _, a, _ in partials)
    syllable_hz = rng.uniform(3.0, 5.0)
    peak = 60.0

    out = bytearray()
    for n in range(int(round(seconds * sample_rate))):
        t = n / sample_rate
        gate = abs(math.sin(math.pi * syllable_hz * t)) ** 1.5
        v = sum(a * math.sin(2 * math.pi * f * t + ph) for f, a, ph in partials) / norm
        s = 128 + peak * gate * v + rng.gauss(0.0, 1.0)
        out.append(min(255, max(0, int(round(s)))))
    return bytes(out)


def speech_like_wav(seconds: float, sample_rate: int = 8000, seed: int = 0) -> bytes:
    return wav_bytes(speech_like_samples(seconds, sample_rate, seed), sample_rate, 8, 1)
