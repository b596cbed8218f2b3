"""Underwater scene synthesis from RGB-D sources.

Each sample draws a water type, a water depth D and a background light
B, derives the per-channel attenuation and the transmission map from
the type's optical coefficients, and degrades the clean image through
the formation model. Samples land on disk as one directory each:

    sample_00000/
        clean.png       8-bit RGB
        degraded.png    8-bit RGB
        trans.png       16-bit RGB transmission, scaled by 65535
        meta.json       water_type, water_depth_m, attenuation,
                        background, seed, source_image, source_depth

Generation is deterministic: sample i is produced from a child seed
mixed from (master seed, i), so parallel and serial runs emit identical
bytes.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from pathlib import Path

import cv2
import numpy as np

from . import fileio
from .errors import DataError
from .formation import RestorationParams, degrade, transmission_from_depth, wavelength_attenuation
from .jerlov import WaterType, iop_lookup

DEFAULT_WATER_TYPES = (WaterType.II, WaterType.III, WaterType.C1, WaterType.C3)

META_KEYS = (
    "water_type",
    "water_depth_m",
    "attenuation",
    "background",
    "seed",
    "source_image",
    "source_depth",
)


@dataclass(frozen=True)
class SynthesisConfig:
    """Sampling ranges and output geometry for dataset generation."""

    water_types: tuple[WaterType, ...] = DEFAULT_WATER_TYPES
    depth_range: tuple[float, float] = (2.0, 10.0)
    background_range: tuple[float, float] = (0.5, 1.0)
    output_size: int = 256
    seed: int = 0
    # One background level shared by all channels instead of three
    # independent draws.
    shared_background: bool = False

    def __post_init__(self):
        if not self.water_types:
            raise ValueError("water_types must be non-empty")
        d_lo, d_hi = self.depth_range
        if not (0.0 <= d_lo <= d_hi):
            raise ValueError(f"invalid depth range {self.depth_range}")
        b_lo, b_hi = self.background_range
        if not (0.0 <= b_lo <= b_hi <= 1.0):
            raise ValueError(f"invalid background range {self.background_range}")
        if self.output_size < 1:
            raise ValueError("output_size must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "water_types": [wt.value for wt in self.water_types],
            "depth_range": list(self.depth_range),
            "background_range": list(self.background_range),
            "output_size": self.output_size,
            "seed": self.seed,
            "shared_background": self.shared_background,
        }


@dataclass
class SceneSample:
    """One synthesized tuple plus the parameters that produced it."""

    clean: np.ndarray
    degraded: np.ndarray
    transmission: np.ndarray
    attenuation: np.ndarray
    background: np.ndarray
    water_type: WaterType
    water_depth: float
    seed: int = 0
    source_image: str = ""
    source_depth: str = ""

    @property
    def params(self) -> RestorationParams:
        return RestorationParams(self.attenuation, self.background, self.transmission)

    def meta_dict(self) -> dict:
        return {
            "water_type": self.water_type.value,
            "water_depth_m": float(self.water_depth),
            "attenuation": [float(v) for v in self.attenuation],
            "background": [float(v) for v in self.background],
            "seed": int(self.seed),
            "source_image": self.source_image,
            "source_depth": self.source_depth,
        }


def sample_scene_params(
    rng: np.random.Generator, config: SynthesisConfig
) -> tuple[WaterType, float, np.ndarray]:
    """Draw (water type, water depth, background light) for one sample.

    The water type is uniform over config.water_types, the depth uniform
    in depth_range, and each background channel independently uniform in
    background_range (or one shared draw when configured). Draw order is
    fixed, so a given generator state always yields the same triple.
    """
    idx = int(rng.integers(0, len(config.water_types)))
    water_type = config.water_types[idx]
    depth = float(rng.uniform(*config.depth_range))
    lo, hi = config.background_range
    if config.shared_background:
        background = np.full(3, float(rng.uniform(lo, hi)))
    else:
        background = rng.uniform(lo, hi, size=3).astype(np.float64)
    return water_type, depth, background


def procedural_depth(kind: str, height: int, width: int, params) -> np.ndarray:
    """Deterministic depth field: "constant", "hramp" or "vramp".

    For a constant field params is the depth in meters; for ramps it is
    (near, far), swept left-to-right (hramp) or top-to-bottom (vramp).
    """
    if height < 1 or width < 1:
        raise ValueError("depth field dimensions must be >= 1")
    if kind == "constant":
        value = float(params)
        if value < 0:
            raise ValueError(f"constant depth must be >= 0, got {value}")
        return np.full((height, width), value, dtype=np.float64)
    if kind in ("hramp", "vramp"):
        a, b = (float(v) for v in params)
        if a < 0 or b < 0:
            raise ValueError(f"ramp endpoints must be >= 0, got ({a}, {b})")
        if a > b:
            raise ValueError(f"ramp endpoints must satisfy near <= far, got ({a}, {b})")
        if kind == "hramp":
            row = np.linspace(a, b, width)
            return np.tile(row, (height, 1))
        col = np.linspace(a, b, height)
        return np.tile(col[:, None], (1, width))
    raise ValueError(f"unknown depth kind {kind!r}; expected constant, hramp or vramp")


def synthesize_sample(
    clean: np.ndarray,
    depth: np.ndarray,
    water_type: WaterType,
    water_depth: float,
    background,
    *,
    seed: int = 0,
    source_image: str = "",
    source_depth: str = "",
) -> SceneSample:
    """Degrade one clean/depth pair with the given scene parameters."""
    alpha, beta = iop_lookup(water_type)
    attenuation = wavelength_attenuation(alpha, water_depth)
    transmission = transmission_from_depth(beta, depth)
    params = RestorationParams(attenuation, np.asarray(background, dtype=np.float64), transmission)
    degraded = degrade(clean, params)
    return SceneSample(
        clean=np.asarray(clean, dtype=np.float64),
        degraded=degraded,
        transmission=transmission,
        attenuation=params.attenuation,
        background=params.background,
        water_type=water_type,
        water_depth=float(water_depth),
        seed=seed,
        source_image=source_image,
        source_depth=source_depth,
    )


def save_sample(directory, sample: SceneSample) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    fileio.write_image(d / "clean.png", sample.clean)
    fileio.write_image(d / "degraded.png", sample.degraded)
    fileio.write_transmission(d / "trans.png", sample.transmission)
    fileio.write_json(d / "meta.json", sample.meta_dict())


def load_sample_params(meta_path, trans_path=None) -> tuple[RestorationParams, dict]:
    """Rebuild RestorationParams from a sample's meta.json and trans.png."""
    meta = fileio.read_json(meta_path)
    missing = [k for k in ("attenuation", "background") if k not in meta]
    if missing:
        raise DataError(f"meta file {meta_path} lacks keys: {missing}")
    if trans_path is None:
        trans_path = Path(meta_path).parent / "trans.png"
    transmission = fileio.read_transmission(trans_path)
    return RestorationParams(meta["attenuation"], meta["background"], transmission), meta


def child_seed(master_seed: int, index: int) -> int:
    """Deterministic per-sample seed mixed from (master seed, index)."""
    seq = np.random.SeedSequence(entropy=(int(master_seed), int(index)))
    return int(seq.generate_state(1, np.uint64)[0])


def find_source_pairs(source_dir) -> list[tuple[Path, Path]]:
    """Discover name.png + (name.depth.png | name.pfm) pairs in a directory."""
    src = Path(source_dir)
    if not src.is_dir():
        raise FileNotFoundError(f"source directory not found: {source_dir}")
    pairs = []
    for img in sorted(src.glob("*.png")):
        if img.name.endswith(".depth.png"):
            continue
        depth_png = img.with_name(img.stem + ".depth.png")
        depth_pfm = img.with_suffix(".pfm")
        if depth_png.exists():
            pairs.append((img, depth_png))
        elif depth_pfm.exists():
            pairs.append((img, depth_pfm))
    return pairs


def _resize_image(img: np.ndarray, size: int) -> np.ndarray:
    return cv2.resize(img, (size, size), interpolation=cv2.INTER_LINEAR)


def _resize_depth(depth: np.ndarray, size: int) -> np.ndarray:
    out = cv2.resize(depth.astype(np.float32), (size, size), interpolation=cv2.INTER_LINEAR)
    return out.astype(np.float64)


def generate_one(
    index: int, image_path, depth_path, out_dir, config: SynthesisConfig
) -> dict:
    """Generate and save sample #index; returns its manifest entry."""
    seed = child_seed(config.seed, index)
    rng = np.random.default_rng(seed)
    water_type, water_depth, background = sample_scene_params(rng, config)

    clean = _resize_image(fileio.read_image(image_path), config.output_size)
    depth = _resize_depth(fileio.read_depth(depth_path), config.output_size)
    if depth.min() < 0:
        raise DataError(f"negative depths in {depth_path}")

    sample = synthesize_sample(
        clean,
        depth,
        water_type,
        water_depth,
        background,
        seed=seed,
        source_image=Path(image_path).name,
        source_depth=Path(depth_path).name,
    )
    name = f"sample_{index:05d}"
    save_sample(Path(out_dir) / name, sample)
    return {
        "dir": name,
        "seed": seed,
        "source_image": sample.source_image,
        "water_depth_m": water_depth,
        "water_type": water_type.value,
    }


def generate_dataset(
    sources: list[tuple], n: int, config: SynthesisConfig, out_dir, jobs: int = 1
) -> dict:
    """Write n samples (round-robin over sources) plus manifest.json.

    Returns the manifest. Output is a pure function of (source bytes,
    config, seed) regardless of jobs: every sample derives its own child
    seed and writes only to its own directory.
    """
    if n < 1:
        raise ValueError("sample count must be >= 1")
    if not sources:
        raise ValueError("no source image/depth pairs given")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    tasks = [(i, *sources[i % len(sources)]) for i in range(n)]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(
                pool.map(_generate_star, [(i, img, dep, out, config) for i, img, dep in tasks])
            )
    else:
        entries = [generate_one(i, img, dep, out, config) for i, img, dep in tasks]

    manifest = {"config": config.to_json_dict(), "count": n, "samples": entries}
    fileio.write_json(out / "manifest.json", manifest)
    return manifest


def _generate_star(args) -> dict:
    return generate_one(*args)
