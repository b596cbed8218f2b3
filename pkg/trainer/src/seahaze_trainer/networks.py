"""Generator and discriminator networks.

The generator has four stages: a densely connected encoder-decoder
with pyramid pooling that estimates the 3-channel transmission map, a
small convolutional regressor for the 6-vector of (attenuation ++
background), the differentiable restoration formula, and a residual
edge-refinement stage. The discriminator is a patch classifier over
four stride-2 convolution blocks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import torch
from torch import nn
from torch.nn import functional as F

from .blocks import Bottleneck, TransitionDown, TransitionUp, init_weights
from .config import ConfigurationError
from .physics import restore_images

log = logging.getLogger(__name__)

PYRAMID_FRACTIONS = (32, 16, 8, 4)


def _stage_count(input_size: int) -> int:
    """Downsampling stages: 7 halvings reduce the input by 128.

    Inputs divisible by 64 but not 128 (the 64x64 toy setting) use 6
    stages instead; anything else is rejected.
    """
    if input_size % 128 == 0:
        return 7
    if input_size % 64 == 0:
        log.info("toy input size %d: using 6 downsampling stages", input_size)
        return 6
    raise ConfigurationError(f"input size {input_size} must be divisible by 64")


class TransmissionNet(nn.Module):
    """Multi-scale densely connected encoder-decoder with pyramid pooling."""

    def __init__(self, input_size: int = 256, base: int = 12, growth: int = 8):
        super().__init__()
        self.n_down = _stage_count(input_size)
        self.downsample_factor = 2**self.n_down
        self.stem = nn.Conv2d(3, base, kernel_size=3, stride=2, padding=1, bias=False)

        self.enc_bottlenecks = nn.ModuleList()
        self.enc_transitions = nn.ModuleList()
        for _ in range(self.n_down - 1):
            bottleneck = Bottleneck(base, growth)
            self.enc_bottlenecks.append(bottleneck)
            self.enc_transitions.append(TransitionDown(bottleneck.out_channels, base))

        # Decoder stage j upsamples, concatenates the encoder feature at
        # the same scale (the input image at full resolution), and runs
        # one bottleneck.
        self.dec_transitions = nn.ModuleList()
        self.dec_bottlenecks = nn.ModuleList()
        skip_channels = [base + growth] * (self.n_down - 1) + [3]
        in_ch = base
        for skip in skip_channels:
            self.dec_transitions.append(TransitionUp(in_ch, base))
            bottleneck = Bottleneck(base + skip, growth)
            self.dec_bottlenecks.append(bottleneck)
            in_ch = bottleneck.out_channels

        self.pyramid = nn.ModuleList(
            nn.Conv2d(in_ch, 2, kernel_size=1, bias=False) for _ in PYRAMID_FRACTIONS
        )
        self.head = nn.Conv2d(
            in_ch + 2 * len(PYRAMID_FRACTIONS), 3, kernel_size=3, padding=1
        )
        init_weights(self)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        h, w = x.shape[-2:]
        if h % self.downsample_factor or w % self.downsample_factor:
            raise ConfigurationError(
                f"input {h}x{w} not divisible by {self.downsample_factor}"
            )
        skips = []
        y = self.stem(x)
        for bottleneck, transition in zip(self.enc_bottlenecks, self.enc_transitions):
            y = bottleneck(y)
            skips.append(y)
            y = transition(y)

        for transition, bottleneck, skip in zip(
            self.dec_transitions, self.dec_bottlenecks, [*reversed(skips), x]
        ):
            y = transition(y)
            y = bottleneck(torch.cat([y, skip], dim=1))

        pooled = [y]
        for frac, conv in zip(PYRAMID_FRACTIONS, self.pyramid):
            p = F.adaptive_avg_pool2d(y, (max(1, h // frac), max(1, w // frac)))
            p = F.interpolate(conv(p), size=(h, w), mode="bilinear", align_corners=False)
            pooled.append(p)
        return torch.sigmoid(self.head(torch.cat(pooled, dim=1)))


class ParamNet(nn.Module):
    """Regresses the 6-vector (attenuation ++ background), each in (0, 1).

    One stem convolution, five ReLU-Conv(3x3)-BN blocks and two
    fully-connected layers. Blocks stride by 2 only while the feature
    map stays at least 4x4, so batch-norm always sees enough values;
    at 256 input all five blocks stride.
    """

    def __init__(self, input_size: int = 256, channels: int = 16):
        super().__init__()
        self.stem = nn.Conv2d(3, channels, kernel_size=3, stride=2, padding=1)
        size = max(1, input_size // 2)
        stages = []
        for _ in range(5):
            stride = 2 if size >= 8 else 1
            size //= stride
            stages += [
                nn.ReLU(inplace=True),
                nn.Conv2d(channels, channels, kernel_size=3, stride=stride,
                          padding=1, bias=False),
                nn.BatchNorm2d(channels),
            ]
        self.stages = nn.Sequential(*stages)
        self.fc1 = nn.Linear(channels * 4, 32)
        self.fc2 = nn.Linear(32, 6)
        init_weights(self)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        y = self.stages(self.stem(x))
        y = F.adaptive_avg_pool2d(y, 2).flatten(1)
        y = F.relu(self.fc1(y))
        return torch.sigmoid(self.fc2(y))


class EdgeNet(nn.Module):
    """Residual refinement of the coarse restoration, kept in [0, 1].

    The trunk is a convolution, a bottleneck, a 1x1 transition (no
    pooling, to preserve resolution) and two Conv(3x3)-Tanh blocks; the
    last convolution starts at zero so the stage is the identity at
    initialization. The residual is added in the pre-squash domain of a
    scaled tanh, which keeps the output inside [0, 1].
    """

    EPS = 1e-4

    def __init__(self, base: int = 12, growth: int = 8):
        super().__init__()
        self.stem = nn.Conv2d(3, base, kernel_size=3, padding=1)
        self.bottleneck = Bottleneck(base, growth)
        self.transition = nn.Conv2d(self.bottleneck.out_channels, base, kernel_size=1, bias=False)
        self.refine1 = nn.Conv2d(base, base, kernel_size=3, padding=1)
        self.refine2 = nn.Conv2d(base, 3, kernel_size=3, padding=1)
        init_weights(self)
        nn.init.zeros_(self.refine2.weight)
        nn.init.zeros_(self.refine2.bias)

    def forward(self, e_coarse: torch.Tensor) -> torch.Tensor:
        y = self.stem(e_coarse.clamp(0.0, 1.0))
        y = self.transition(self.bottleneck(y))
        y = torch.tanh(self.refine1(y))
        residual = torch.tanh(self.refine2(y))
        pinned = e_coarse.clamp(self.EPS, 1.0 - self.EPS)
        z = torch.atanh(2.0 * pinned - 1.0)
        return 0.5 * (torch.tanh(z + residual) + 1.0)


@dataclass
class GeneratorOutputs:
    """Estimates for one batch: transmission map, parameter vector, the
    raw physics inversion, and the refined result."""

    t_hat: torch.Tensor
    cb_hat: torch.Tensor
    e_coarse: torch.Tensor
    e_final: torch.Tensor


class Generator(nn.Module):
    """Transmission + parameter estimation, physics inversion, refinement."""

    def __init__(self, input_size: int = 256, base: int = 12, growth: int = 8):
        super().__init__()
        self.transmission_net = TransmissionNet(input_size, base=base, growth=growth)
        self.param_net = ParamNet(input_size)
        self.edge_net = EdgeNet(base=base, growth=growth)

    def forward(self, degraded: torch.Tensor) -> GeneratorOutputs:
        t_hat = self.transmission_net(degraded)
        cb_hat = self.param_net(degraded)
        e_coarse = restore_images(degraded, t_hat, cb_hat[:, :3], cb_hat[:, 3:])
        e_final = self.edge_net(e_coarse)
        return GeneratorOutputs(t_hat=t_hat, cb_hat=cb_hat, e_coarse=e_coarse, e_final=e_final)


class PatchDiscriminator(nn.Module):
    """Patch-level real/fake logits from four stride-2 conv blocks."""

    def __init__(self, base: int = 16):
        super().__init__()
        layers = [
            nn.Conv2d(3, base, kernel_size=4, stride=2, padding=1),
            nn.LeakyReLU(0.2, inplace=True),
        ]
        channels = base
        for _ in range(3):
            layers += [
                nn.Conv2d(channels, channels * 2, kernel_size=4, stride=2, padding=1, bias=False),
                nn.BatchNorm2d(channels * 2),
                nn.LeakyReLU(0.2, inplace=True),
            ]
            channels *= 2
        layers.append(nn.Conv2d(channels, 1, kernel_size=3, padding=1))
        self.net = nn.Sequential(*layers)
        init_weights(self)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.net(x)
