"""Reconstruction losses shared with the training side.

All functions are plain reductions over numpy arrays: a pixel L1 term,
forward-difference image gradients with a gradient-matching loss, the
combined transmission objective, and the L1 loss over concatenated
(attenuation, background) parameter vectors.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatchError

# Readings of the per-pixel norm in the gradient loss: "squared" sums
# squared gradient differences, "abs" sums their absolute values.
GRADIENT_NORMS = ("squared", "abs")


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes disagree: {a.shape} vs {b.shape}")


def gradients(field) -> tuple[np.ndarray, np.ndarray]:
    """Forward-difference gradients (gx, gy) of a single-channel field.

    gx[r, c] = field[r, c+1] - field[r, c] with zeros in the last
    column; gy analogously along rows with zeros in the last row.
    """
    m = np.asarray(field, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeMismatchError(f"expected a 2-D field, got shape {m.shape}")
    gx = np.zeros_like(m)
    gy = np.zeros_like(m)
    gx[:, :-1] = m[:, 1:] - m[:, :-1]
    gy[:-1, :] = m[1:, :] - m[:-1, :]
    return gx, gy


def gradient_loss(t_hat, t, norm: str = "squared") -> float:
    """Sum over pixels (and channels) of gradient differences.

    With the default "squared" norm this is the sum of squared
    differences of gx plus gy between the two maps; "abs" sums absolute
    differences instead. Accepts 2-D fields or (H, W, C) stacks.
    """
    if norm not in GRADIENT_NORMS:
        raise ValueError(f"norm must be one of {GRADIENT_NORMS}, got {norm!r}")
    a = np.asarray(t_hat, dtype=np.float64)
    b = np.asarray(t, dtype=np.float64)
    _check_same_shape(a, b)
    if a.ndim == 2:
        a = a[:, :, None]
        b = b[:, :, None]
    elif a.ndim != 3:
        raise ShapeMismatchError(f"expected 2-D or 3-D arrays, got shape {a.shape}")
    total = 0.0
    for ch in range(a.shape[2]):
        gxa, gya = gradients(a[:, :, ch])
        gxb, gyb = gradients(b[:, :, ch])
        dx = gxa - gxb
        dy = gya - gyb
        if norm == "squared":
            total += float(np.sum(dx * dx) + np.sum(dy * dy))
        else:
            total += float(np.sum(np.abs(dx)) + np.sum(np.abs(dy)))
    return total


def l1_pixel(a, b) -> float:
    """Mean absolute difference over all pixels and channels."""
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    _check_same_shape(x, y)
    return float(np.mean(np.abs(x - y)))


def transmission_objective(t_hat, t, norm: str = "squared") -> float:
    """Gradient loss plus mean absolute error of the transmission map."""
    return gradient_loss(t_hat, t, norm=norm) + l1_pixel(t_hat, t)


def cb_loss(pred, truth) -> float:
    """Mean absolute error over the 6-vector (attenuation ++ background)."""
    p = np.asarray(pred, dtype=np.float64)
    q = np.asarray(truth, dtype=np.float64)
    _check_same_shape(p, q)
    if p.shape != (6,):
        raise ShapeMismatchError(f"expected 6-vectors, got shape {p.shape}")
    return float(np.mean(np.abs(p - q)))
