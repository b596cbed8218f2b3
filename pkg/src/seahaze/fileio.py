"""File formats: 8/16-bit PNG images, PFM depth maps, and JSON metadata.

Images are exchanged as (H, W, 3) float arrays in [0, 1] with RGB
channel order; quantization to 8 or 16 bits happens only here. Depth
maps come from 16-bit grayscale PNGs interpreted as millimeters, or
from single-channel PFM files already in meters.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import cv2
import numpy as np

from .errors import DataError

TRANS_SCALE = 65535.0


def read_image(path) -> np.ndarray:
    """Load an 8-bit RGB image as (H, W, 3) float in [0, 1]."""
    data = cv2.imread(str(path), cv2.IMREAD_COLOR)
    if data is None:
        raise FileNotFoundError(f"cannot read image: {path}")
    return cv2.cvtColor(data, cv2.COLOR_BGR2RGB).astype(np.float64) / 255.0


def write_image(path, img: np.ndarray) -> None:
    """Quantize a [0, 1] RGB image to 8 bits and write it as PNG."""
    q = np.rint(np.clip(img, 0.0, 1.0) * 255.0).astype(np.uint8)
    _imwrite(path, cv2.cvtColor(q, cv2.COLOR_RGB2BGR))


def quantize8(img: np.ndarray) -> np.ndarray:
    """One 8-bit quantization round trip of a [0, 1] image."""
    return np.rint(np.clip(img, 0.0, 1.0) * 255.0) / 255.0


def read_transmission(path) -> np.ndarray:
    """Load a 16-bit RGB transmission map as float in (0, 1].

    Stored zeros (transmission below half a quantization step) are
    bumped to one step so the map stays strictly positive.
    """
    data = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if data is None:
        raise FileNotFoundError(f"cannot read transmission map: {path}")
    if data.ndim != 3 or data.shape[2] < 3 or data.dtype != np.uint16:
        raise DataError(f"transmission map must be a 16-bit RGB PNG: {path}")
    t = cv2.cvtColor(data[:, :, :3], cv2.COLOR_BGR2RGB).astype(np.float64) / TRANS_SCALE
    return np.maximum(t, 1.0 / TRANS_SCALE)


def write_transmission(path, t: np.ndarray) -> None:
    """Write a (0, 1] transmission map as 16-bit RGB PNG."""
    q = np.rint(np.clip(t, 0.0, 1.0) * TRANS_SCALE).astype(np.uint16)
    _imwrite(path, cv2.cvtColor(q, cv2.COLOR_RGB2BGR))


def read_depth(path) -> np.ndarray:
    """Load a depth map in meters from a 16-bit PNG (mm) or a PFM file."""
    p = Path(path)
    if p.suffix.lower() == ".pfm":
        return read_pfm(p)
    data = cv2.imread(str(p), cv2.IMREAD_UNCHANGED)
    if data is None:
        raise FileNotFoundError(f"cannot read depth map: {path}")
    if data.ndim != 2:
        raise DataError(f"depth PNG must be single-channel grayscale: {path}")
    if data.dtype != np.uint16:
        raise DataError(f"depth PNG must be 16-bit (millimeters): {path}")
    return data.astype(np.float64) / 1000.0


def write_depth_png(path, depth_m: np.ndarray) -> None:
    """Write a depth map in meters as a 16-bit millimeter PNG."""
    mm = np.rint(np.asarray(depth_m, dtype=np.float64) * 1000.0)
    if mm.min() < 0 or mm.max() > 65535:
        raise DataError("depth out of range for 16-bit millimeter PNG (0..65.535 m)")
    _imwrite(path, mm.astype(np.uint16))


def read_pfm(path) -> np.ndarray:
    """Read a single-channel PFM file (meters, float32 on disk)."""
    raw = Path(path).read_bytes()
    header = re.match(rb"(P[fF])\s+(\d+)\s+(\d+)\s+([-+0-9.eE]+)\s", raw)
    if header is None:
        raise DataError(f"not a valid PFM file: {path}")
    kind, width, height = header.group(1), int(header.group(2)), int(header.group(3))
    if kind != b"Pf":
        raise DataError(f"depth PFM must be single-channel (Pf): {path}")
    scale = float(header.group(4))
    endian = "<" if scale < 0 else ">"
    body = raw[header.end() :]
    expected = width * height * 4
    if len(body) < expected:
        raise DataError(f"PFM payload truncated: {path}")
    data = np.frombuffer(body[:expected], dtype=endian + "f4").reshape(height, width)
    # PFM scanlines run bottom-to-top.
    return data[::-1].astype(np.float64)


def write_pfm(path, depth_m: np.ndarray) -> None:
    """Write a single-channel, little-endian PFM file."""
    d = np.asarray(depth_m, dtype=np.float32)
    if d.ndim != 2:
        raise DataError(f"PFM depth must be 2-D, got shape {d.shape}")
    with open(path, "wb") as fh:
        fh.write(b"Pf\n")
        fh.write(f"{d.shape[1]} {d.shape[0]}\n".encode())
        fh.write(b"-1.0\n")
        fh.write(d[::-1].astype("<f4").tobytes())


def write_json(path, payload: dict) -> None:
    """Write JSON with sorted keys so identical content gives identical bytes."""
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text)


def read_json(path) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError:
        raise FileNotFoundError(f"cannot read JSON file: {path}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON in {path}: {exc}") from exc


def _imwrite(path, data: np.ndarray) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if not cv2.imwrite(str(path), data):
        raise OSError(f"cannot write image: {path}")
