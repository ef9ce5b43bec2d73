"""scikit-learn compatible wrappers around the FMM map and the full codec."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, validate_data

from .codec import CodecConfig, decode, encode
from .fmm import FMM_MAX, fmm_forward, fmm_inverse
from .image_io import Image, to_grayscale
from .metrics import mse_psnr

__all__ = ["FiveModulusTransformer", "FJPEGCodec"]


def _as_samples(X, high):
    X = np.asarray(X)
    if not np.all(np.isfinite(X)) or not np.array_equal(X, np.round(X)):
        raise ValueError("samples must be integers")
    if X.size and (X.min() < 0 or X.max() > high):
        raise ValueError(f"samples must lie in [0, {high}]")
    return X.astype(np.int64)


class FiveModulusTransformer(TransformerMixin, BaseEstimator):
    """Map 8-bit intensities to ``[0, 51]`` and back, feature-wise.

    Stateless: ``fit`` only validates input and records ``n_features_in_``.
    Works on any 2-D array of integer intensities, so it can sit in a
    :class:`~sklearn.pipeline.Pipeline` in front of pixel-feature models.

    >>> FiveModulusTransformer().fit_transform([[106, 98, 97]])
    array([[21, 20, 19]], dtype=uint8)
    """

    def fit(self, X, y=None):
        X = validate_data(self, X, dtype=None, reset=True)
        _as_samples(X, 255)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = validate_data(self, X, dtype=None, reset=False)
        return fmm_forward(_as_samples(X, 255))

    def inverse_transform(self, X):
        X = check_array(X, dtype=None)
        return fmm_inverse(_as_samples(X, FMM_MAX))


class FJPEGCodec(TransformerMixin, BaseEstimator):
    """Lossy round trip through the codec as a transformer.

    ``X`` is a single image: ``(height, width)`` gray or
    ``(height, width, 3)`` RGB.  ``transform`` returns the decoded
    reconstruction; :meth:`encode` and :meth:`decode` expose the bytes.

    Parameters
    ----------
    mode : {"fmm", "baseline"}
    quality : int in 1..100
    gray : bool
        Convert RGB input to luma before coding.
    """

    def __init__(self, mode="fmm", quality=75, gray=False):
        self.mode = mode
        self.quality = quality
        self.gray = gray

    def _image(self, X) -> Image:
        X = check_array(X, dtype=None, allow_nd=True, ensure_min_samples=1)
        if X.ndim == 3 and X.shape[2] != 3:
            raise ValueError(f"expected 1 or 3 channels, got array of shape {X.shape}")
        return Image.from_array(_as_samples(X, 255).astype(np.uint8))

    def fit(self, X, y=None):
        self.config_ = CodecConfig(mode=self.mode, quality=self.quality, gray=self.gray)
        self._image(X)
        return self

    def encode(self, X) -> bytes:
        check_is_fitted(self, "config_")
        return encode(self._image(X), self.config_)

    def decode(self, data: bytes) -> np.ndarray:
        return decode(data).to_array()

    def transform(self, X):
        return self.decode(self.encode(X))

    def score(self, X, y=None) -> float:
        """PSNR of the reconstruction in dB (higher is better)."""
        image = self._image(X)
        if self.config_.gray:
            image = to_grayscale(image)
        return mse_psnr(image, Image.from_array(self.transform(X)))[1]
