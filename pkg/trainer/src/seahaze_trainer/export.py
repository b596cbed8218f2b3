"""Export restored images for scoring by the primary CLI."""

from __future__ import annotations

import logging
from pathlib import Path

import torch

from seahaze import fileio

from .data import SampleFolderDataset
from .networks import Generator

log = logging.getLogger(__name__)


def export_restorations(generator: Generator, dataset_dir, out_dir) -> list[Path]:
    """Write one 8-bit PNG restoration per sample; returns the paths."""
    dataset = SampleFolderDataset(dataset_dir)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    generator.eval()
    written = []
    with torch.no_grad():
        for i in range(len(dataset)):
            batch = dataset.batch(i)
            e_final = generator(batch["degraded"]).e_final[0]
            img = e_final.clamp(0.0, 1.0).numpy().transpose(1, 2, 0)
            path = out / f"{batch['name']}.png"
            fileio.write_image(path, img)
            written.append(path)
    log.info("exported %d restorations to %s", len(written), out)
    return written
