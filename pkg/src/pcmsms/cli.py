"""Command line entry point.

    pcmsms encode INPUT -o SEGMENTS [--raw] [--no-compress]
    pcmsms decode SEGMENTS -o OUTPUT
    pcmsms channel SEGMENTS -o OUTPUT [--seed N] [--shuffle] [--dup N] [--drop I[,I...]]
    pcmsms stats INPUT [INPUT ...] -o CSV [--raw]
    pcmsms synth OUTPUT [--seconds S] [--rate HZ] [--seed N]

Exit status: 0 success, 1 usage error, 2 pipeline or data error.
"""

import argparse
import sys
from pathlib import Path

from . import framing
from .channel import ChannelScript, apply_channel
from .errors import CodecError
from .pcm import MalformedWav, load_input, write_output
from .stats import measure, write_csv
from .synth import speech_like_wav

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _diagnose(exc) -> str:
    if isinstance(exc, FileNotFoundError):
        return f"FileNotFound: {exc.filename}"
    return f"{type(exc).__name__}: {exc}"


def _drop_list(text):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid drop list {text!r}") from None


def cmd_encode(args) -> int:
    clip = load_input(args.input, raw=args.raw)
    mode = framing.Mode.UNCOMPRESSED if args.no_compress else framing.Mode.COMPRESSED
    env = framing.build_envelope(clip.bytes, mode)
    segs = framing.segment_message(env)
    framing.write_segments(segs, args.output)
    plain = framing.envelope_size(len(clip.bytes), framing.Mode.UNCOMPRESSED)
    print(
        f"segments={len(segs)} characters={env.char_count} "
        f"ratio={env.char_count / plain:.4f}"
    )
    return EXIT_OK


def cmd_decode(args) -> int:
    segs = framing.read_segments(args.segments)
    data = framing.decode(segs)
    write_output(data, args.output)
    print(f"bytes={len(data)}")
    return EXIT_OK


def cmd_channel(args) -> int:
    segs = framing.read_segments(args.segments)
    drops = frozenset(i for group in args.drop for i in group)
    script = ChannelScript(args.seed, args.shuffle, args.dup, drops)
    out = apply_channel(segs, script)
    framing.write_segments(out, args.output)
    print(f"segments_in={len(segs)} segments_out={len(out)}")
    return EXIT_OK


def cmd_stats(args) -> int:
    records, status = [], EXIT_OK
    for path in args.inputs:
        try:
            try:
                clip = load_input(path, raw=args.raw)
            except MalformedWav:
                clip = load_input(path, raw=True)
            records.append(measure(clip, Path(path).name))
        except (CodecError, OSError) as exc:
            print(f"{path}: {_diagnose(exc)}", file=sys.stderr)
            status = EXIT_DATA
    write_csv(records, args.output)
    return status


def cmd_synth(args) -> int:
    write_output(speech_like_wav(args.seconds, args.rate, args.seed), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcmsms", description="Send PCM audio as SMS-sized text segments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encode", help="audio/binary file -> segments file")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--raw", action="store_true", help="treat input as opaque bytes, skip WAV parsing")
    p.add_argument("--no-compress", action="store_true", help="skip Huffman compression")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="segments file -> original bytes")
    p.add_argument("segments")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("channel", help="reorder/duplicate/drop segments deterministically")
    p.add_argument("segments")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shuffle", action="store_true")
    p.add_argument("--dup", type=int, default=0, metavar="COUNT")
    p.add_argument("--drop", type=_drop_list, action="append", default=[], metavar="INDICES")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("stats", help="character and SMS counts with and without compression")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--raw", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("synth", help="write a speech-like 8-bit PCM WAV clip")
    p.add_argument("output")
    p.add_argument("--seconds", type=float, default=1.0)
    p.add_argument("--rate", type=int, default=8000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except framing.MissingSegments as exc:
        print(f"MissingSegments: {', '.join(map(str, exc.indices))}", file=sys.stderr)
    except ValueError as exc:
        if not isinstance(exc, CodecError):
            print(f"usage error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(_diagnose(exc), file=sys.stderr)
    except (CodecError, OSError) as exc:
        print(_diagnose(exc), file=sys.stderr)
    return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
