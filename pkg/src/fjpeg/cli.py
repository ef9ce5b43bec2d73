"""Command-line interface.

Exit status: 0 on success, 1 on a runtime or data error, 2 on bad usage.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import worked_example
from .codec import CodecConfig, Mode, decode, encode, inspect
from .errors import FJPEGError
from .image_io import read_image, write_image
from .metrics import (
    KIB,
    compare,
    compression_ratio,
    mse_psnr,
    reports_to_csv,
    reports_to_markdown,
    std_dev,
)
from .quant import DEFAULT_QUALITY


def _quality(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid quality {text!r}") from None
    if not 1 <= value <= 100:
        raise argparse.ArgumentTypeError(f"quality must be in 1..100, got {value}")
    return value


def _fmt_psnr(value: float) -> str:
    return "inf" if value == float("inf") else f"{value:.4f}"


def cmd_encode(args) -> int:
    image = read_image(args.input)
    config = CodecConfig(mode=args.mode, quality=args.quality, gray=args.gray)
    data = encode(image, config)
    Path(args.output).write_bytes(data)
    channels = 1 if args.gray else image.channels
    raw = image.width * image.height * channels
    cr = compression_ratio(image.width, image.height, channels, len(data))
    print(f"mode: {config.mode}  quality: {config.quality}")
    print(f"raw size: {raw} bytes ({raw / KIB:.1f} KB)")
    print(f"coded size: {len(data)} bytes ({len(data) / KIB:.1f} KB)")
    print(f"CR = {cr:.1f}:1")
    return 0


def cmd_decode(args) -> int:
    image = decode(Path(args.input).read_bytes())
    write_image(args.output, image)
    print(f"decoded {image.width}x{image.height}x{image.channels} -> {args.output}")
    if args.reference:
        mse, psnr = mse_psnr(read_image(args.reference), image)
        print(f"MSE = {mse:.4f}")
        print(f"PSNR = {_fmt_psnr(psnr)} dB")
    return 0


def cmd_inspect(args) -> int:
    info = inspect(Path(args.input).read_bytes())
    print(f"version: {info.version}")
    print(f"mode: {info.mode}")
    print(f"size: {info.width}x{info.height}")
    print(f"channels: {info.channels}")
    print(f"quality: {info.quality}")
    for i, n in enumerate(info.payload_sizes):
        print(f"channel {i} payload: {n} bytes")
    print(f"total: {info.total_size} bytes")
    return 0


def cmd_metrics(args) -> int:
    mse, psnr = mse_psnr(read_image(args.reference), read_image(args.test))
    print(f"MSE = {mse:.4f}")
    print(f"PSNR = {_fmt_psnr(psnr)} dB")
    return 0


def _print_block(title, block, fmt="{:5d}"):
    print(title)
    for row in np.asarray(block):
        print(" ".join(fmt.format(v) for v in row))
    print()


def cmd_demo(args) -> int:
    ex = worked_example.compute()
    _print_block("Original block", worked_example.ORIGINAL_BLOCK)
    _print_block("FMM rounded to multiples of 5", ex.rounded)
    _print_block("FMM block divided by 5", ex.divided)
    _print_block("DCT of original block", ex.dct_original, "{:8.2f}")
    _print_block("DCT of FMM block", ex.dct_fmm, "{:8.2f}")
    print(f"STD original block = {std_dev(worked_example.ORIGINAL_BLOCK):.2f}")
    print(f"STD FMM block = {std_dev(ex.divided):.2f}")
    print(f"STD DCT original = {std_dev(ex.dct_original):.2f}")
    print(f"STD DCT FMM = {std_dev(ex.dct_fmm):.2f}")
    print(f"non-zero DCT (truncated) original = {np.count_nonzero(np.trunc(ex.dct_original))}")
    print(f"non-zero DCT (truncated) FMM = {np.count_nonzero(np.trunc(ex.dct_fmm))}")
    print()
    failed = 0
    for check in worked_example.run_checks(ex):
        status = "PASS" if check.passed else "FAIL"
        failed += not check.passed
        print(f"[{status}] {check.name}: {check.detail}")
    return 1 if failed else 0


def _report_one(path, quality):
    try:
        return compare(read_image(path), quality=quality, name=Path(path).stem), None
    except (OSError, FJPEGError) as exc:
        return None, f"{path}: {exc}"


def cmd_report(args) -> int:
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda p: _report_one(p, args.quality), args.inputs))
    reports = [r for r, _ in results if r is not None]
    errors = [e for _, e in results if e is not None]
    for e in errors:
        print(f"error: {e}", file=sys.stderr)
    if args.format == "csv":
        sys.stdout.write(reports_to_csv(reports))
    else:
        sys.stdout.write(reports_to_markdown(reports))
    return 1 if errors else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fjpeg", description="Baseline and five-modulus block-DCT image codec."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="compress a PGM/PPM file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mode", choices=[str(m) for m in Mode], default="fmm")
    p.add_argument("--quality", type=_quality, default=DEFAULT_QUALITY)
    p.add_argument("--gray", action="store_true", help="code luma only")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decompress an .fjpg file to PGM/PPM")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--reference", help="original image; prints PSNR against it")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("inspect", help="print container header fields")
    p.add_argument("input")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("metrics", help="MSE and PSNR between two images")
    p.add_argument("reference")
    p.add_argument("test")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("demo", help="recompute the worked 8x8 example and check it")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("report", help="baseline vs FMM size/CR/PSNR table")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--quality", type=_quality, default=DEFAULT_QUALITY)
    p.add_argument("--format", choices=["csv", "md"], default="md")
    p.add_argument("--jobs", type=int, default=4)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, FJPEGError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
