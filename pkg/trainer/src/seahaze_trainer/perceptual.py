"""Frozen feature extractor for the perceptual content loss.

Uses the first two VGG16 stages (the layers before the first and
second pooling layers). Pretrained weights are loaded when available;
otherwise a deterministically seeded random initialization of the same
topology is used, which still provides a fixed multi-scale projection
for the toy-training regime.
"""

from __future__ import annotations

import logging

import torch
from torch import nn

log = logging.getLogger(__name__)

IMAGENET_MEAN = (0.485, 0.456, 0.406)
IMAGENET_STD = (0.229, 0.224, 0.225)


class FeatureExtractor(nn.Module):
    """Feature maps from before VGG16's first and second pooling layers."""

    def __init__(self, weights: str = "auto", seed: int = 0):
        super().__init__()
        self.stage1 = nn.Sequential(
            nn.Conv2d(3, 64, 3, padding=1), nn.ReLU(inplace=True),
            nn.Conv2d(64, 64, 3, padding=1), nn.ReLU(inplace=True),
        )
        self.stage2 = nn.Sequential(
            nn.MaxPool2d(2),
            nn.Conv2d(64, 128, 3, padding=1), nn.ReLU(inplace=True),
            nn.Conv2d(128, 128, 3, padding=1), nn.ReLU(inplace=True),
        )
        self.pretrained = False
        if weights in ("auto", "pretrained"):
            try:
                self._load_pretrained()
                self.pretrained = True
            except Exception as exc:
                if weights == "pretrained":
                    raise RuntimeError(f"cannot load pretrained weights: {exc}") from exc
                log.info("pretrained features unavailable (%s); using seeded random", exc)
        if not self.pretrained:
            generator = torch.Generator().manual_seed(seed)
            for m in self.modules():
                if isinstance(m, nn.Conv2d):
                    nn.init.kaiming_normal_(m.weight, generator=generator)
                    nn.init.zeros_(m.bias)
        for p in self.parameters():
            p.requires_grad_(False)
        self.eval()

    def _load_pretrained(self):
        from torchvision import models

        vgg = models.vgg16(weights=models.VGG16_Weights.IMAGENET1K_V1).features
        ours = [self.stage1[0], self.stage1[2], self.stage2[1], self.stage2[3]]
        theirs = [vgg[0], vgg[2], vgg[5], vgg[7]]
        with torch.no_grad():
            for dst, src in zip(ours, theirs):
                dst.weight.copy_(src.weight)
                dst.bias.copy_(src.bias)

    def forward(self, x01: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        mean = x01.new_tensor(IMAGENET_MEAN)[:, None, None]
        std = x01.new_tensor(IMAGENET_STD)[:, None, None]
        f1 = self.stage1((x01 - mean) / std)
        f2 = self.stage2(f1)
        return f1, f2

    def distance(self, a01: torch.Tensor, b01: torch.Tensor) -> torch.Tensor:
        """Mean absolute feature difference, averaged over the two stages."""
        fa1, fa2 = self(a01)
        fb1, fb2 = self(b01)
        return 0.5 * ((fa1 - fb1).abs().mean() + (fa2 - fb2).abs().mean())
