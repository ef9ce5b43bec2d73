"""Distortion, rate and sparsity measures, and the per-image A/B report."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .codec import CodecConfig, Mode, decode, encode, quantized_blocks
from .fmm import fmm_forward
from .image_io import Image
from .quant import DEFAULT_QUALITY
from .transform import split_blocks

__all__ = [
    "KIB",
    "mse_psnr",
    "psnr_from_mse",
    "compression_ratio",
    "std_dev",
    "nonzero_count",
    "MetricsReport",
    "compare",
    "reports_to_csv",
    "reports_from_csv",
    "reports_to_markdown",
]

KIB = 1024
PEAK = 255.0


def _samples(x) -> np.ndarray:
    if isinstance(x, Image):
        return x.planes
    return np.asarray(x)


def psnr_from_mse(mse: float) -> float:
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / mse)


def mse_psnr(a, b) -> tuple[float, float]:
    """Mean squared error and PSNR (peak 255) between two images or arrays."""
    a = _samples(a)
    b = _samples(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a.astype(np.float64) - b.astype(np.float64)
    mse = float(np.mean(diff * diff))
    return mse, psnr_from_mse(mse)


def compression_ratio(width: int, height: int, channels: int, coded_bytes: float) -> float:
    """Raw 8-bit size over coded size, the ``N`` in ``N:1``."""
    if coded_bytes <= 0:
        raise ValueError("coded size must be positive")
    if min(width, height, channels) <= 0:
        raise ValueError("dimensions must be positive")
    return width * height * channels / coded_bytes


def std_dev(values) -> float:
    """Sample standard deviation (``N - 1`` denominator).

    The ``N - 1`` estimator reproduces the reference block statistics
    (3.84 and 0.85); dividing by ``N`` gives 3.81 and 0.84 instead.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size < 2:
        raise ValueError("need at least two values")
    return float(np.std(values, ddof=1))


def nonzero_count(blocks) -> int:
    return int(np.count_nonzero(blocks))


@dataclass
class MetricsReport:
    """Baseline versus FMM results for one image at one quality."""

    name: str
    width: int
    height: int
    channels: int
    quality: int
    raw_bytes: int
    baseline_bytes: int
    fmm_bytes: int
    baseline_mse: float
    fmm_mse: float
    baseline_psnr: float
    fmm_psnr: float
    baseline_nonzeros: int
    fmm_nonzeros: int
    # share of blocks whose FMM-path non-zero count is <= the baseline count
    sparser_block_fraction: float
    baseline_block_std: float
    fmm_block_std: float

    @property
    def baseline_cr(self) -> float:
        return self.raw_bytes / self.baseline_bytes

    @property
    def fmm_cr(self) -> float:
        return self.raw_bytes / self.fmm_bytes

    @property
    def size_ratio(self) -> float:
        return self.baseline_bytes / self.fmm_bytes


def _mean_block_std(plane) -> float:
    blocks = split_blocks(plane).reshape(-1, 64).astype(np.float64)
    return float(np.mean(np.std(blocks, axis=1, ddof=1)))


def compare(image: Image, quality: int = DEFAULT_QUALITY, name: str = "") -> MetricsReport:
    """Encode ``image`` in both modes and collect size, distortion and sparsity."""
    results = {}
    for mode in Mode:
        coded = encode(image, CodecConfig(mode=mode, quality=quality))
        mse, psnr = mse_psnr(image, decode(coded))
        results[mode] = (len(coded), mse, psnr)

    nz_base = []
    nz_fmm = []
    for plane in image.planes:
        nz_base.append(np.count_nonzero(quantized_blocks(plane, Mode.BASELINE, quality), axis=(1, 2)))
        nz_fmm.append(np.count_nonzero(quantized_blocks(plane, Mode.FMM, quality), axis=(1, 2)))
    nz_base = np.concatenate(nz_base)
    nz_fmm = np.concatenate(nz_fmm)

    return MetricsReport(
        name=name,
        width=image.width,
        height=image.height,
        channels=image.channels,
        quality=quality,
        raw_bytes=image.raw_size,
        baseline_bytes=results[Mode.BASELINE][0],
        fmm_bytes=results[Mode.FMM][0],
        baseline_mse=results[Mode.BASELINE][1],
        fmm_mse=results[Mode.FMM][1],
        baseline_psnr=results[Mode.BASELINE][2],
        fmm_psnr=results[Mode.FMM][2],
        baseline_nonzeros=int(nz_base.sum()),
        fmm_nonzeros=int(nz_fmm.sum()),
        sparser_block_fraction=float(np.mean(nz_fmm <= nz_base)),
        baseline_block_std=float(np.mean([_mean_block_std(p) for p in image.planes])),
        fmm_block_std=float(np.mean([_mean_block_std(fmm_forward(p)) for p in image.planes])),
    )


_FIELD_TYPES = {f.name: f.type for f in fields(MetricsReport)}
_CASTS = {"str": str, "int": int, "float": float}


def reports_to_csv(reports) -> str:
    """All report fields plus the derived ratios; floats at full precision."""
    out = io.StringIO()
    names = [f.name for f in fields(MetricsReport)] + ["baseline_cr", "fmm_cr"]
    writer = csv.DictWriter(out, fieldnames=names, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        row = asdict(r)
        row["baseline_cr"] = r.baseline_cr
        row["fmm_cr"] = r.fmm_cr
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return out.getvalue()


def reports_from_csv(text: str) -> list[MetricsReport]:
    reports = []
    for row in csv.DictReader(io.StringIO(text)):
        kwargs = {k: _CASTS[_FIELD_TYPES[k]](row[k]) for k in _FIELD_TYPES}
        reports.append(MetricsReport(**kwargs))
    return reports


def _fmt_psnr(value: float) -> str:
    return "Inf" if math.isinf(value) else f"{value:.4f}"


def reports_to_markdown(reports) -> str:
    lines = [
        "| Image | Baseline size | FMM size | Baseline CR | FMM CR | Baseline PSNR | FMM PSNR |",
        "|---|---:|---:|---:|---:|---:|---:|",
    ]
    for r in reports:
        lines.append(
            f"| {r.name} "
            f"| {r.baseline_bytes} B ({r.baseline_bytes / KIB:.1f} KB) "
            f"| {r.fmm_bytes} B ({r.fmm_bytes / KIB:.1f} KB) "
            f"| {r.baseline_cr:.1f}:1 | {r.fmm_cr:.1f}:1 "
            f"| {_fmt_psnr(r.baseline_psnr)} | {_fmt_psnr(r.fmm_psnr)} |"
        )
    return "\n".join(lines) + "\n"
