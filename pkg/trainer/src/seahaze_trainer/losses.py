"""Torch counterparts of the reconstruction losses plus adversarial terms.

The transmission and parameter losses mirror the primary package's
numpy implementations (sum of squared forward-difference gradients plus
mean absolute error; mean absolute error over the 6-vector) so values
agree across the two on identical inputs.
"""

from __future__ import annotations

import torch
from torch.nn import functional as F


def forward_gradients(m: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
    """Forward differences along width and height, zero at the far edge.

    Works on (..., H, W) tensors.
    """
    gx = torch.zeros_like(m)
    gy = torch.zeros_like(m)
    gx[..., :, :-1] = m[..., :, 1:] - m[..., :, :-1]
    gy[..., :-1, :] = m[..., 1:, :] - m[..., :-1, :]
    return gx, gy


def gradient_loss(t_hat: torch.Tensor, t: torch.Tensor) -> torch.Tensor:
    """Sum of squared gradient differences over all pixels and channels."""
    gx_hat, gy_hat = forward_gradients(t_hat)
    gx, gy = forward_gradients(t)
    return ((gx_hat - gx) ** 2).sum() + ((gy_hat - gy) ** 2).sum()


def l1_mean(a: torch.Tensor, b: torch.Tensor) -> torch.Tensor:
    return (a - b).abs().mean()


def transmission_objective(t_hat: torch.Tensor, t: torch.Tensor) -> torch.Tensor:
    return gradient_loss(t_hat, t) + l1_mean(t_hat, t)


def cb_loss(pred: torch.Tensor, truth: torch.Tensor) -> torch.Tensor:
    """Mean absolute error over the (attenuation ++ background) vector."""
    return (pred - truth).abs().mean()


def discriminator_loss(real_logits: torch.Tensor, fake_logits: torch.Tensor) -> torch.Tensor:
    real = F.binary_cross_entropy_with_logits(real_logits, torch.ones_like(real_logits))
    fake = F.binary_cross_entropy_with_logits(fake_logits, torch.zeros_like(fake_logits))
    return real + fake


def generator_adversarial_loss(fake_logits: torch.Tensor) -> torch.Tensor:
    """Non-saturating generator objective: fool the discriminator."""
    return F.binary_cross_entropy_with_logits(fake_logits, torch.ones_like(fake_logits))
