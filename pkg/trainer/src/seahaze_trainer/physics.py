"""Differentiable evaluation of the closed-form restoration.

Shares the formula and the transmission floor with the primary
package's restore(): E = (I - B * (1 - T)) / (C * T) with T floored at
t_min, evaluated here on torch tensors so parameter estimators can be
trained end-to-end through the model. Output is intentionally left
unclamped; downstream squashing belongs to the refinement stage.
"""

from __future__ import annotations

import torch

from seahaze.formation import DEFAULT_T_MIN


def restore_images(
    observed: torch.Tensor,
    transmission: torch.Tensor,
    attenuation: torch.Tensor,
    background: torch.Tensor,
    t_min: float = DEFAULT_T_MIN,
) -> torch.Tensor:
    """Invert the formation model on (B, 3, H, W) batches.

    attenuation and background are (B, 3) per-channel vectors; the
    transmission map matches the observed batch shape.
    """
    if observed.shape != transmission.shape:
        raise ValueError(
            f"observed {tuple(observed.shape)} and transmission "
            f"{tuple(transmission.shape)} shapes disagree"
        )
    t = transmission.clamp(min=t_min)
    c = attenuation[:, :, None, None]
    b = background[:, :, None, None]
    return (observed - b * (1.0 - t)) / (c * t)
