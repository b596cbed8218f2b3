"""Image quality metrics: MSE, PSNR, SSIM, PCQI, blur, and UIQM.

Full-reference metrics (mse, psnr, ssim, pcqi) take two images; the
no-reference ones (blur_metric, uiqm) take a single image. All inputs
are (H, W, 3) float arrays in [0, 1]; squared-error metrics are
reported on the 0..255 intensity scale and window-based metrics operate
on the Rec.601 luminance.

The combined underwater quality measure is the weighted sum

    uiqm = 0.3282 * uicm + 0.2953 * uism + 3.5753 * uiconm

of a colorfulness term (trimmed statistics of the RG / YB opponent
channels), a sharpness term (edge-weighted block contrast) and a
contrast term (entropy-weighted block contrast).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import cv2
import numpy as np
from scipy import ndimage

from .errors import ShapeMismatchError
from .formation import as_image

PEAK = 255.0

# Stable column order for reports.
METRIC_NAMES = ("mse", "psnr", "ssim", "pcqi", "blur", "uicm", "uism", "uiconm", "uiqm")
FULL_REFERENCE = ("mse", "psnr", "ssim", "pcqi")
NO_REFERENCE = ("blur", "uicm", "uism", "uiconm", "uiqm")

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03

PCQI_WINDOW = 11
PCQI_C = 3.0
PCQI_L = 256.0

BLUR_FILTER_LEN = 9

UIQM_BLOCK = 8
UIQM_TRIM = 0.1
UIQM_WEIGHT_COLORFULNESS = 0.3282
UIQM_WEIGHT_SHARPNESS = 0.2953
UIQM_WEIGHT_CONTRAST = 3.5753


def _check_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"image shapes disagree: {a.shape} vs {b.shape}")


def _luma255(img: np.ndarray) -> np.ndarray:
    """Rec.601 luminance on the 0..255 scale."""
    return PEAK * (0.299 * img[:, :, 0] + 0.587 * img[:, :, 1] + 0.114 * img[:, :, 2])


def _gaussian_window(size: int, sigma: float) -> np.ndarray:
    k = cv2.getGaussianKernel(size, sigma)
    w = k @ k.T
    return w / w.sum()


def _filter_valid(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Correlate with the kernel, keeping only fully-overlapping pixels."""
    r = kernel.shape[0] // 2
    out = cv2.filter2D(img, -1, kernel, borderType=cv2.BORDER_CONSTANT)
    return out[r:-r, r:-r]


def mse(a, b) -> float:
    """Mean squared error on the 0..255 intensity scale."""
    x = as_image(a)
    y = as_image(b)
    _check_pair(x, y)
    d = PEAK * (x - y)
    return float(np.mean(d * d))


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB; identical images give inf."""
    err = mse(a, b)
    return psnr_from_mse(err)


def psnr_from_mse(err: float) -> float:
    """PSNR implied by an MSE on the 0..255 scale."""
    if err < 0:
        raise ValueError("mse must be >= 0")
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / err)


def ssim(a, b) -> float:
    """Mean structural similarity over 11x11 Gaussian windows on luminance."""
    x = as_image(a)
    y = as_image(b)
    _check_pair(x, y)
    if min(x.shape[:2]) < SSIM_WINDOW:
        raise ValueError(f"image must be at least {SSIM_WINDOW}x{SSIM_WINDOW} for ssim")
    lx = _luma255(x)
    ly = _luma255(y)
    window = _gaussian_window(SSIM_WINDOW, SSIM_SIGMA)
    c1 = (SSIM_K1 * PEAK) ** 2
    c2 = (SSIM_K2 * PEAK) ** 2

    mu1 = _filter_valid(lx, window)
    mu2 = _filter_valid(ly, window)
    mu1_sq = mu1 * mu1
    mu2_sq = mu2 * mu2
    mu1_mu2 = mu1 * mu2
    sigma1_sq = _filter_valid(lx * lx, window) - mu1_sq
    sigma2_sq = _filter_valid(ly * ly, window) - mu2_sq
    sigma12 = _filter_valid(lx * ly, window) - mu1_mu2

    num = (2.0 * mu1_mu2 + c1) * (2.0 * sigma12 + c2)
    den = (mu1_sq + mu2_sq + c1) * (sigma1_sq + sigma2_sq + c2)
    return float(np.mean(num / den))


def pcqi(a, b) -> float:
    """Patch-based contrast quality index of b against reference a.

    Per 11x11 patch the score is the product of a mean-intensity term
    exp(-|mu1 - mu2| / L), a contrast-change term (4/pi) * atan of the
    covariance-to-variance ratio, and a structural-distortion term;
    values above 1 indicate contrast gain.
    """
    x = as_image(a)
    y = as_image(b)
    _check_pair(x, y)
    if min(x.shape[:2]) < PCQI_WINDOW:
        raise ValueError(f"image must be at least {PCQI_WINDOW}x{PCQI_WINDOW} for pcqi")
    lx = _luma255(x)
    ly = _luma255(y)
    window = _gaussian_window(PCQI_WINDOW, SSIM_SIGMA)

    mu1 = _filter_valid(lx, window)
    mu2 = _filter_valid(ly, window)
    sigma1_sq = np.maximum(_filter_valid(lx * lx, window) - mu1 * mu1, 0.0)
    sigma2_sq = np.maximum(_filter_valid(ly * ly, window) - mu2 * mu2, 0.0)
    sigma12 = _filter_valid(lx * ly, window) - mu1 * mu2

    pcqi_map = (4.0 / math.pi) * np.arctan((sigma12 + PCQI_C) / (sigma1_sq + PCQI_C))
    pcqi_map = pcqi_map * (sigma12 + PCQI_C) / (np.sqrt(sigma1_sq) * np.sqrt(sigma2_sq) + PCQI_C)
    pcqi_map = pcqi_map * np.exp(-np.abs(mu1 - mu2) / PCQI_L)
    return float(np.mean(pcqi_map))


def blur_metric(a) -> float:
    """Perceptual blur in [0, 1]; 0 is sharpest, 1 most blurred.

    The image is re-blurred with a 9-tap uniform low-pass in each
    direction and the drop in neighbor-difference energy is compared;
    the larger of the horizontal and vertical scores is returned. A
    constant image has no detail to lose and scores 0.
    """
    x = as_image(a)
    if min(x.shape[:2]) < BLUR_FILTER_LEN:
        raise ValueError(f"image must be at least {BLUR_FILTER_LEN}x{BLUR_FILTER_LEN} for blur")
    lum = _luma255(x)
    taps = np.full(BLUR_FILTER_LEN, 1.0 / BLUR_FILTER_LEN)

    def directional(axis: int) -> float:
        blurred = ndimage.convolve1d(lum, taps, axis=axis, mode="constant", cval=0.0)
        if axis == 1:
            d_orig = np.abs(np.diff(lum, axis=1))
            d_blur = np.abs(np.diff(blurred, axis=1))
            region = np.s_[1:-1, 1:]
        else:
            d_orig = np.abs(np.diff(lum, axis=0))
            d_blur = np.abs(np.diff(blurred, axis=0))
            region = np.s_[1:, 1:-1]
        variation = np.maximum(0.0, d_orig - d_blur)
        s_orig = float(np.sum(d_orig[region]))
        s_var = float(np.sum(variation[region]))
        if s_orig == 0.0:
            return 0.0
        return (s_orig - s_var) / s_orig

    return max(directional(1), directional(0))


def _trimmed_mean(values: np.ndarray, trim: float = UIQM_TRIM) -> float:
    v = np.sort(values, axis=None)
    k = v.size
    t_left = math.ceil(trim * k)
    t_right = math.floor(trim * k)
    kept = v[t_left : k - t_right]
    return float(kept.mean())


def _block_minmax(plane: np.ndarray, block: int) -> tuple[np.ndarray, np.ndarray]:
    k1 = plane.shape[0] // block
    k2 = plane.shape[1] // block
    tiles = plane[: k1 * block, : k2 * block].reshape(k1, block, k2, block)
    return tiles.max(axis=(1, 3)), tiles.min(axis=(1, 3))


def _eme(plane: np.ndarray, block: int = UIQM_BLOCK) -> float:
    """Block contrast measure 2/(k1 k2) * sum(log(max/min))."""
    mx, mn = _block_minmax(plane, block)
    mask = mn > 0.0
    total = float(np.sum(np.log(mx[mask] / mn[mask])))
    return 2.0 * total / mx.size


def _colorfulness(img255: np.ndarray) -> float:
    r = img255[:, :, 0].ravel()
    g = img255[:, :, 1].ravel()
    b = img255[:, :, 2].ravel()
    rg = r - g
    yb = 0.5 * (r + g) - b
    mu_rg = _trimmed_mean(rg)
    mu_yb = _trimmed_mean(yb)
    var_rg = float(np.mean((rg - mu_rg) ** 2))
    var_yb = float(np.mean((yb - mu_yb) ** 2))
    return -0.0268 * math.hypot(mu_rg, mu_yb) + 0.1586 * math.sqrt(var_rg + var_yb)


def _sharpness(img255: np.ndarray) -> float:
    weights = (0.299, 0.587, 0.114)
    total = 0.0
    for ch, w in enumerate(weights):
        plane = img255[:, :, ch]
        gx = cv2.Sobel(plane, cv2.CV_64F, 1, 0, ksize=3)
        gy = cv2.Sobel(plane, cv2.CV_64F, 0, 1, ksize=3)
        edges = np.hypot(gx, gy) * plane
        total += w * _eme(edges)
    return total


def _contrast(img255: np.ndarray) -> float:
    lum = 0.299 * img255[:, :, 0] + 0.587 * img255[:, :, 1] + 0.114 * img255[:, :, 2]
    mx, mn = _block_minmax(lum, UIQM_BLOCK)
    top = mx - mn
    bot = mx + mn
    mask = (bot > 0.0) & (top > 0.0)
    c = top[mask] / bot[mask]
    return -float(np.sum(c * np.log(c))) / mx.size


def uiqm(a) -> tuple[float, float, float, float]:
    """Underwater image quality: (uicm, uism, uiconm, uiqm)."""
    x = as_image(a)
    if min(x.shape[:2]) < UIQM_BLOCK:
        raise ValueError(f"image must be at least {UIQM_BLOCK}x{UIQM_BLOCK} for uiqm")
    img255 = PEAK * x
    uicm = _colorfulness(img255)
    uism = _sharpness(img255)
    uiconm = _contrast(img255)
    combined = (
        UIQM_WEIGHT_COLORFULNESS * uicm
        + UIQM_WEIGHT_SHARPNESS * uism
        + UIQM_WEIGHT_CONTRAST * uiconm
    )
    return uicm, uism, uiconm, combined


@dataclass
class MetricReport:
    """Named scores for one image or image pair."""

    entries: dict[str, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, object]:
        """JSON-safe mapping in stable column order; inf becomes "inf"."""
        out: dict[str, object] = {}
        for name in METRIC_NAMES:
            if name not in self.entries:
                continue
            value = self.entries[name]
            out[name] = "inf" if math.isinf(value) else value
        return out


def compute_report(test, reference=None, metrics=None) -> MetricReport:
    """Score an image, against a reference when one is given.

    metrics selects a subset of METRIC_NAMES; full-reference names
    require a reference. Requesting any uiqm component computes all
    four.
    """
    selected = tuple(metrics) if metrics is not None else METRIC_NAMES
    unknown = [m for m in selected if m not in METRIC_NAMES]
    if unknown:
        raise ValueError(f"unknown metrics: {unknown}; valid names are {METRIC_NAMES}")
    if reference is None:
        needs_ref = [m for m in selected if m in FULL_REFERENCE]
        if metrics is None:
            selected = NO_REFERENCE
        elif needs_ref:
            raise ValueError(f"metrics {needs_ref} require a reference image")

    entries: dict[str, float] = {}
    if "mse" in selected or "psnr" in selected:
        err = mse(reference, test)
        if "mse" in selected:
            entries["mse"] = err
        if "psnr" in selected:
            entries["psnr"] = psnr_from_mse(err)
    if "ssim" in selected:
        entries["ssim"] = ssim(reference, test)
    if "pcqi" in selected:
        entries["pcqi"] = pcqi(reference, test)
    if "blur" in selected:
        entries["blur"] = blur_metric(test)
    if any(m in selected for m in ("uicm", "uism", "uiconm", "uiqm")):
        uicm, uism, uiconm, combined = uiqm(test)
        entries.update(uicm=uicm, uism=uism, uiconm=uiconm, uiqm=combined)
    return MetricReport(entries)
