import numpy as np
import pytest

from seahaze import fileio
from seahaze.cli import main as seahaze_main


def make_clean_image(size, seed):
    """Smooth procedural test scene: colored waves plus a bright square."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size] / float(size)
    img = np.zeros((size, size, 3))
    for c in range(3):
        fx, fy = rng.uniform(1.0, 4.0, 2)
        px, py = rng.uniform(0.0, 2.0 * np.pi, 2)
        img[:, :, c] = 0.5 + 0.25 * np.sin(2 * np.pi * fx * xx + px) * np.cos(
            2 * np.pi * fy * yy + py
        )
    quarter = size // 4
    img[quarter : 2 * quarter, quarter : 2 * quarter] = rng.uniform(0.6, 0.9, 3)
    return np.clip(img, 0.0, 1.0)


def make_depth_field(size, seed):
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size] / float(size)
    tilt = rng.uniform(0.0, 1.0)
    return 0.5 + 2.0 * (tilt * xx + (1.0 - tilt) * yy)


def build_sources(directory, size, n_pairs=2):
    directory.mkdir(parents=True, exist_ok=True)
    for i in range(n_pairs):
        fileio.write_image(directory / f"scene{i}.png", make_clean_image(size, 100 + i))
        fileio.write_depth_png(directory / f"scene{i}.depth.png", make_depth_field(size, 200 + i))
    return directory


def build_dataset(root, size, count, seed=7):
    """Synthesize a dataset through the primary CLI."""
    src = build_sources(root / "src", size)
    out = root / "dataset"
    code = seahaze_main(
        ["synth", str(src), "--out", str(out), "-n", str(count),
         "--seed", str(seed), "--size", str(size)]
    )
    assert code == 0
    return out


@pytest.fixture(scope="session")
def dataset64(tmp_path_factory):
    return build_dataset(tmp_path_factory.mktemp("data64"), 64, 4)
