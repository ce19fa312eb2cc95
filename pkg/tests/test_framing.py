import math
import os
import random

import pytest
from hypothesis import given, settings, strategies as st

from pcmsms.errors import EmptyInput
from pcmsms.framing import (
    BadMagic,
    ConflictingDuplicate,
    CountMismatch,
    MalformedHeaderField,
    MalformedSegment,
    MessageTooLarge,
    MissingSegments,
    Mode,
    SmsSegment,
    UnsupportedVersion,
    build_envelope,
    decode,
    decode_message,
    encode,
    parse_envelope,
    read_segments,
    reassemble_segments,
    segment_message,
    segment_text,
    write_segments,
)
from pcmsms.huffman import serialize_codebook
from pcmsms.symbols import ALPHABET

U, C = Mode.UNCOMPRESSED, Mode.COMPRESSED


def test_single_byte_uncompressed_envelope():
    env = build_envelope([0x00], U)
    text = env.render()
    assert text == "VS10" + "000" + "00000001" + "0" + chr(256)
    assert env.char_count == 17
    segs = segment_message(env)
    # index "000", then the full 17-character envelope including the pad digit
    assert [s.render() for s in segs] == ["000" + "VS10" + "000" + "00000001" + "0" + "\u0100"]
    assert len(segs[0].render()) == 3 + 17
    assert decode_message(parse_envelope(text)) == b"\x00"


def test_two_segment_boundary():
    env = build_envelope(bytes(157 * 2 - 16), U)
    assert env.char_count == 314
    assert env.render()[4:7] == "001"
    assert len(segment_message(env)) == 2
    env = build_envelope(bytes(157 * 2 - 15), U)
    assert env.render()[4:7] == "002"


def test_compressed_example():
    env = build_envelope([97, 97, 98], C)
    text = env.render()
    assert text[3] == "1" and text[15] == "5"
    field = text[16:528]
    assert field[2 * 97:2 * 97 + 2] == "01" and field[2 * 98:2 * 98 + 2] == "01"
    assert field.count("1") == 2
    assert field == serialize_codebook(env.codebook)
    assert text[528:] == chr(32)
    assert env.char_count == 529
    assert decode_message(parse_envelope(text)) == b"aab"


@pytest.mark.parametrize("m, sizes", [(157, [157]), (158, [157, 1]), (17, [17])])
def test_segment_sizes(m, sizes):
    segs = segment_text("x" * m)
    assert [len(s.payload) for s in segs] == sizes
    assert [s.index for s in segs] == list(range(len(sizes)))
    assert all(len(s.render()) <= 160 for s in segs)


def test_too_large():
    with pytest.raises(MessageTooLarge):
        build_envelope(bytes(157 * 1000 - 15), U)
    assert len(encode(bytes(157 * 1000 - 16), U)) == 1000
    with pytest.raises(EmptyInput):
        build_envelope(b"", U)


def _three_segments():
    return encode(os.urandom(400), U)


def test_reassembly_permutation_and_duplicates():
    segs = _three_segments()
    expected = reassemble_segments(segs)
    assert reassemble_segments(list(reversed(segs))) == expected
    assert reassemble_segments(segs + [segs[0]]) == expected
    assert reassemble_segments([s.render() for s in segs]) == expected


def test_missing_segments():
    segs = _three_segments()
    with pytest.raises(MissingSegments) as info:
        reassemble_segments([segs[0], segs[2]])
    assert info.value.indices == [1]
    with pytest.raises(MissingSegments) as info:
        reassemble_segments(segs[1:])
    assert info.value.indices == [0]
    with pytest.raises(MissingSegments) as info:
        reassemble_segments([])
    assert info.value.indices == [0]


def test_conflicting_duplicate():
    segs = _three_segments()
    forged = SmsSegment(1, "A" + segs[1].payload[1:])
    if forged.payload == segs[1].payload:
        forged = SmsSegment(1, "B" + segs[1].payload[1:])
    with pytest.raises(ConflictingDuplicate) as info:
        reassemble_segments(segs + [forged])
    assert info.value.index == 1


def test_count_mismatch():
    segs = _three_segments()
    with pytest.raises(CountMismatch):
        reassemble_segments(segs + [SmsSegment(3, "zz")])


@pytest.mark.parametrize("line", ["12", "0a1xyz", "000" + "x" * 158, "000ab\x01"])
def test_malformed_segments(line):
    with pytest.raises(MalformedSegment):
        SmsSegment.parse(line)


def test_header_errors():
    text = build_envelope(b"hello", U).render()
    with pytest.raises(BadMagic):
        parse_envelope("XS" + text[2:])
    with pytest.raises(UnsupportedVersion):
        parse_envelope("VS2" + text[3:])
    with pytest.raises(MalformedHeaderField):
        parse_envelope(text[:7] + "0000000x" + text[15:])
    with pytest.raises(MalformedHeaderField):
        parse_envelope(text[:-1])  # body shorter than declared length
    with pytest.raises(MalformedHeaderField):
        parse_envelope(text[:4] + "001" + text[7:])  # wrong segment total
    with pytest.raises(MalformedHeaderField):
        parse_envelope(text[:15] + "3" + text[16:])  # padding in uncompressed mode


def test_segments_file_format(tmp_path):
    data = bytes(range(256)) * 3
    segs = encode(data, C)
    path = tmp_path / "m.sms"
    write_segments(segs, path)
    raw = path.read_bytes()
    assert raw.endswith(b"\n") and b"\r" not in raw
    lines = raw.decode("utf-8").split("\n")[:-1]
    assert lines == [s.render() for s in segs]
    assert decode(read_segments(path)) == data


@settings(max_examples=60, deadline=None)
@given(st.binary(min_size=1, max_size=5000), st.sampled_from([U, C]), st.randoms())
def test_end_to_end_identity(data, mode, rnd):
    segs = encode(data, mode)
    jumbled = segs + [rnd.choice(segs) for _ in range(3)]
    rnd.shuffle(jumbled)
    assert decode(jumbled) == data


@settings(max_examples=60, deadline=None)
@given(st.binary(min_size=1, max_size=3000), st.sampled_from([U, C]))
def test_character_safety_and_segment_law(data, mode):
    env = build_envelope(data, mode)
    body = len(env.body)
    assert env.char_count == 16 + (512 if mode is C else 0) + body
    if mode is U:
        assert body == len(data)
    segs = segment_message(env)
    assert len(segs) == math.ceil(env.char_count / 157) == env.segment_total
    allowed = ALPHABET | set(range(48, 58))
    for seg in segs:
        rendered = seg.render()
        assert len(rendered) <= 160
        assert all(ord(ch) in allowed for ch in rendered)
    assert [s.render() for s in encode(data, mode)] == [s.render() for s in segs]


def test_large_compressed_roundtrip():
    data = os.urandom(10_000)
    assert decode_message(parse_envelope(build_envelope(data, C).render())) == data
    text = random.Random(1).sample(encode(data, C), k=len(encode(data, C)))
    assert decode(text) == data
