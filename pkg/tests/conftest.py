import csv
from pathlib import Path

import numpy as np
import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def golden_iops():
    """Golden coefficient transcription: {(type, nm): (alpha, beta)}."""
    table = {}
    with open(DATA_DIR / "jerlov_golden.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            key = (row["water_type"], int(row["wavelength_nm"]))
            table[key] = (float(row["alpha"]), float(row["beta"]))
    return table


def random_image(rng, height=32, width=32):
    return rng.uniform(0.0, 1.0, size=(height, width, 3))


def checkerboard(height=64, width=64, cell=8):
    rows = (np.arange(height) // cell)[:, None]
    cols = (np.arange(width) // cell)[None, :]
    plane = ((rows + cols) % 2).astype(np.float64)
    return np.repeat(plane[:, :, None], 3, axis=2)
