"""Baseline and five-modulus (FMM) block-DCT image codec."""
from .codec import CodecConfig, Mode, StreamInfo, decode, encode, inspect
from .errors import FJPEGError
from .estimators import FiveModulusTransformer, FJPEGCodec
from .fmm import fmm_forward, fmm_inverse, fmm_round
from .image_io import Image, read_image, read_pnm, to_grayscale, write_image, write_pnm
from .metrics import MetricsReport, compare, compression_ratio, mse_psnr, std_dev

__version__ = "0.1.0"

__all__ = [
    "CodecConfig",
    "FJPEGCodec",
    "FJPEGError",
    "FiveModulusTransformer",
    "Image",
    "MetricsReport",
    "Mode",
    "StreamInfo",
    "compare",
    "compression_ratio",
    "decode",
    "encode",
    "fmm_forward",
    "fmm_inverse",
    "fmm_round",
    "inspect",
    "mse_psnr",
    "read_image",
    "read_pnm",
    "std_dev",
    "to_grayscale",
    "write_image",
    "write_pnm",
]
