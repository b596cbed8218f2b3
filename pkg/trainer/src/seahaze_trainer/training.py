"""Alternating adversarial training over synthesized sample folders.

Each step updates the discriminator on one real/fake pair, then the
generator on the combined objective: adversarial term + content term
(weighted pixel L1 and feature distance) + transmission objective
(gradient + L1) + parameter-vector L1. One loss record per step goes to
a JSONL log with exactly the keys
{adv, cont_pixel, cont_feat, t_grad, t_l1, cb, total}.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import torch

from . import losses
from .config import TrainerConfig
from .data import SampleFolderDataset
from .networks import Generator, PatchDiscriminator
from .perceptual import FeatureExtractor

log = logging.getLogger(__name__)

RECORD_KEYS = ("adv", "cont_pixel", "cont_feat", "t_grad", "t_l1", "cb", "total")


@dataclass
class TrainState:
    config: TrainerConfig
    generator: Generator
    discriminator: PatchDiscriminator
    features: FeatureExtractor
    opt_g: torch.optim.Optimizer
    opt_d: torch.optim.Optimizer
    step: int = 0


def build_state(config: TrainerConfig) -> TrainState:
    torch.manual_seed(config.seed)
    generator = Generator(config.input_size, base=config.base_channels, growth=config.growth)
    discriminator = PatchDiscriminator()
    features = FeatureExtractor(weights=config.feature_weights, seed=config.seed)
    betas = (0.5, 0.999)
    opt_g = torch.optim.Adam(generator.parameters(), lr=config.learning_rate, betas=betas)
    opt_d = torch.optim.Adam(discriminator.parameters(), lr=config.learning_rate, betas=betas)
    return TrainState(config, generator, discriminator, features, opt_g, opt_d)


def training_step(state: TrainState, batch: dict) -> dict:
    """One discriminator update followed by one generator update.

    Returns the generator loss record for the step.
    """
    config = state.config
    degraded = batch["degraded"]
    clean = batch["clean"]
    trans = batch["trans"]
    cb_true = batch["cb"]

    state.generator.train()
    state.discriminator.train()

    # Discriminator on real clean images vs detached restorations.
    with torch.no_grad():
        fake_detached = state.generator(degraded).e_final
    state.opt_d.zero_grad(set_to_none=True)
    d_loss = losses.discriminator_loss(
        state.discriminator(clean), state.discriminator(fake_detached)
    )
    d_loss.backward()
    state.opt_d.step()

    # Generator on the full objective.
    state.opt_g.zero_grad(set_to_none=True)
    outputs = state.generator(degraded)
    adv = losses.generator_adversarial_loss(state.discriminator(outputs.e_final))
    cont_pixel = losses.l1_mean(outputs.e_final, clean)
    cont_feat = state.features.distance(outputs.e_final, clean)
    t_grad = losses.gradient_loss(outputs.t_hat, trans)
    t_l1 = losses.l1_mean(outputs.t_hat, trans)
    cb = losses.cb_loss(outputs.cb_hat, cb_true)
    total = (
        adv
        + config.weight_pixel * cont_pixel
        + config.weight_feature * cont_feat
        + (t_grad + t_l1)
        + cb
    )
    total.backward()
    state.opt_g.step()
    state.step += 1

    record = {
        "adv": adv.item(),
        "cont_pixel": cont_pixel.item(),
        "cont_feat": cont_feat.item(),
        "t_grad": t_grad.item(),
        "t_l1": t_l1.item(),
        "cb": cb.item(),
        "total": total.item(),
    }
    if d_loss is not None and state.step % 50 == 1:
        log.info("step %d: total %.4f, d %.4f", state.step, record["total"], d_loss.item())
    return record


def train(
    config: TrainerConfig,
    dataset_dir,
    out_dir,
    steps: int | None = None,
) -> list[dict]:
    """Run training and write model.pt, config and log.jsonl to out_dir.

    steps overrides the epoch-based count (epochs * dataset size).
    Samples are visited in manifest order, single-threaded, so a given
    (dataset, config) pair always produces the same history.
    """
    dataset = SampleFolderDataset(dataset_dir)
    if steps is None:
        steps = config.epochs * len(dataset)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    state = build_state(config)

    history = []
    with open(out / "log.jsonl", "w") as log_file:
        for i in range(steps):
            batch = dataset.batch(i % len(dataset))
            record = training_step(state, batch)
            history.append(record)
            log_file.write(json.dumps(record, sort_keys=True) + "\n")

    torch.save(
        {
            "generator": state.generator.state_dict(),
            "discriminator": state.discriminator.state_dict(),
            "config": config.to_json_dict(),
            "step": state.step,
        },
        out / "model.pt",
    )
    (out / "trainer_config.json").write_text(
        json.dumps(config.to_json_dict(), indent=2, sort_keys=True) + "\n"
    )
    log.info("trained %d steps; artifacts in %s", steps, out)
    return history


def load_generator(model_path, config: TrainerConfig | None = None) -> Generator:
    """Rebuild a generator from a saved checkpoint."""
    payload = torch.load(model_path, map_location="cpu", weights_only=False)
    saved_config = TrainerConfig(**payload["config"]) if config is None else config
    generator = Generator(
        saved_config.input_size, base=saved_config.base_channels, growth=saved_config.growth
    )
    generator.load_state_dict(payload["generator"])
    return generator
