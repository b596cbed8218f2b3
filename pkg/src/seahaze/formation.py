"""Simplified underwater image formation model and its closed-form inverse.

Light reaching an underwater scene point first attenuates over the
vertical surface-object path (per-channel factor C = exp(-alpha * D) for
water depth D), then the reflected light is scattered over the
object-camera path of length d(x), surviving with transmission
T(x) = exp(-beta * d(x)) while homogeneous background light B fills in
the remainder:

    observed = (clean * C) * T + (1 - T) * B

All images are numpy float64 arrays of shape (H, W, 3) with intensities
in [0, 1] and channel order R, G, B; depth maps are (H, W) in meters.
Reflectance is taken as 1 and wavelength attenuation along the
object-camera path is ignored, so the model stays invertible in closed
form. Everything here is a pure function; arrays are never modified in
place.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatchError

log = logging.getLogger(__name__)

# Transmission floor applied before the division in restore(); the
# formation model itself is singular at T = 0.
DEFAULT_T_MIN = 1e-3


def as_image(arr) -> np.ndarray:
    """Validate an (H, W, 3) image with finite intensities in [0, 1]."""
    a = np.asarray(arr, dtype=np.float64)
    if a.ndim != 3 or a.shape[2] != 3 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeMismatchError(f"expected (H, W, 3) image, got shape {a.shape}")
    if not np.all(np.isfinite(a)) or a.min() < 0.0 or a.max() > 1.0:
        raise ValueError("image intensities must be finite and within [0, 1]")
    return a


def as_depth(arr) -> np.ndarray:
    """Validate an (H, W) depth map with finite, non-negative distances."""
    d = np.asarray(arr, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] < 1 or d.shape[1] < 1:
        raise ShapeMismatchError(f"expected (H, W) depth map, got shape {d.shape}")
    if not np.all(np.isfinite(d)) or d.min() < 0.0:
        raise ValueError("depths must be finite and >= 0")
    return d


def as_triple(value, name: str = "triple") -> np.ndarray:
    """Coerce a scalar or length-3 sequence to an (r, g, b) float triple."""
    a = np.asarray(value, dtype=np.float64)
    if a.ndim == 0:
        a = np.full(3, float(a))
    if a.shape != (3,):
        raise ShapeMismatchError(f"{name} must be a scalar or length-3 vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} components must be finite")
    return a


@dataclass(frozen=True)
class RestorationParams:
    """The three quantities needed to invert the formation model.

    attenuation: per-channel surface-object factor C, each in (0, 1].
    background:  per-channel veiling light B, each in [0, 1].
    transmission: (H, W, 3) object-camera transmission map in (0, 1].
    """

    attenuation: np.ndarray
    background: np.ndarray
    transmission: np.ndarray

    def __post_init__(self):
        attenuation = as_triple(self.attenuation, "attenuation")
        if attenuation.min() <= 0.0 or attenuation.max() > 1.0:
            raise ValueError("attenuation components must lie in (0, 1]")
        background = as_triple(self.background, "background")
        if background.min() < 0.0 or background.max() > 1.0:
            raise ValueError("background components must lie in [0, 1]")
        object.__setattr__(self, "attenuation", attenuation)
        object.__setattr__(self, "background", background)
        t = np.asarray(self.transmission, dtype=np.float64)
        if t.ndim != 3 or t.shape[2] != 3:
            raise ShapeMismatchError(f"transmission must be (H, W, 3), got shape {t.shape}")
        if not np.all(np.isfinite(t)) or t.min() <= 0.0 or t.max() > 1.0:
            raise ValueError("transmission values must lie in (0, 1]")
        object.__setattr__(self, "transmission", t)


def wavelength_attenuation(alpha, water_depth: float) -> np.ndarray:
    """Per-channel color-cast factor C = exp(-alpha * D) for water depth D.

    alpha is the (r, g, b) absorption triple in 1/m, water_depth the
    vertical surface-object distance in meters. Components of the result
    lie in (0, 1].
    """
    alpha = as_triple(alpha, "alpha")
    if alpha.min() < 0.0:
        raise ValueError("absorption coefficients must be >= 0")
    if not np.isfinite(water_depth) or water_depth < 0.0:
        raise ValueError(f"water depth must be >= 0, got {water_depth}")
    return np.exp(-alpha * float(water_depth))


def transmission_from_depth(beta, depth) -> np.ndarray:
    """Transmission map T(x) = exp(-beta * d(x)), shape (H, W, 3).

    beta is the (r, g, b) scattering triple in 1/m and depth an (H, W)
    map of object-camera distances in meters.
    """
    beta = as_triple(beta, "beta")
    if beta.min() < 0.0:
        raise ValueError("scattering coefficients must be >= 0")
    d = as_depth(depth)
    return np.exp(-d[:, :, None] * beta[None, None, :])


def object_irradiance(e_in, attenuation) -> np.ndarray:
    """Irradiance of the scene after the surface-object path: E * C."""
    e = as_image(e_in)
    c = as_triple(attenuation, "attenuation")
    return e * c[None, None, :]


def degrade(e_in, params: RestorationParams) -> np.ndarray:
    """Forward model: observed = (E * C) * T + (1 - T) * B.

    Output stays in [0, 1] without clamping because every factor does.
    """
    e = as_image(e_in)
    t = params.transmission
    if t.shape[:2] != e.shape[:2]:
        raise ShapeMismatchError(
            f"image {e.shape[:2]} and transmission {t.shape[:2]} dimensions disagree"
        )
    c = params.attenuation[None, None, :]
    b = params.background[None, None, :]
    return (e * c) * t + (1.0 - t) * b


def restore(
    observed,
    params: RestorationParams,
    *,
    t_min: float = DEFAULT_T_MIN,
    clamp: bool = True,
) -> np.ndarray:
    """Invert the formation model: E = (I - B * (1 - T)) / (C * T).

    T is floored at t_min before the division (the model is singular at
    T = 0); the number of floored entries is logged. By default the
    result is clamped to [0, 1]; pass clamp=False for the raw values.
    """
    i = as_image(observed)
    t = params.transmission
    if t.shape[:2] != i.shape[:2]:
        raise ShapeMismatchError(
            f"image {i.shape[:2]} and transmission {t.shape[:2]} dimensions disagree"
        )
    c = params.attenuation
    if c.min() <= 0.0:
        raise ValueError("attenuation components must be > 0 to invert")
    floored = int(np.count_nonzero(t < t_min))
    if floored:
        log.info("restore: floored %d transmission entries below %g", floored, t_min)
    t = np.maximum(t, t_min)
    b = params.background[None, None, :]
    e_hat = (i - b * (1.0 - t)) / (c[None, None, :] * t)
    if clamp:
        e_hat = np.clip(e_hat, 0.0, 1.0)
    return e_hat
