"""Underwater image synthesis, restoration and quality assessment.

The package models underwater degradation with per-channel wavelength
attenuation over the surface-object path and scattering over the
object-camera path, using tabulated optical coefficients for the ten
Jerlov water classes. It synthesizes degraded/clean training tuples
from RGB-D input, inverts the degradation in closed form, and scores
images with a full- and no-reference metric suite.
"""

from .formation import (
    DEFAULT_T_MIN,
    RestorationParams,
    degrade,
    object_irradiance,
    restore,
    transmission_from_depth,
    wavelength_attenuation,
)
from .jerlov import WaterType, iop_lookup
from .losses import cb_loss, gradient_loss, gradients, l1_pixel, transmission_objective
from .metrics import (
    MetricReport,
    blur_metric,
    compute_report,
    mse,
    pcqi,
    psnr,
    ssim,
    uiqm,
)
from .synth import (
    SceneSample,
    SynthesisConfig,
    generate_dataset,
    procedural_depth,
    sample_scene_params,
    synthesize_sample,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_T_MIN",
    "MetricReport",
    "RestorationParams",
    "SceneSample",
    "SynthesisConfig",
    "WaterType",
    "blur_metric",
    "cb_loss",
    "compute_report",
    "degrade",
    "generate_dataset",
    "gradient_loss",
    "gradients",
    "iop_lookup",
    "l1_pixel",
    "mse",
    "object_irradiance",
    "pcqi",
    "procedural_depth",
    "psnr",
    "restore",
    "sample_scene_params",
    "ssim",
    "synthesize_sample",
    "transmission_from_depth",
    "transmission_objective",
    "uiqm",
    "wavelength_attenuation",
]
