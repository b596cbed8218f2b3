"""Trainer entry point: train on a synthesized dataset, export results.

Exit codes mirror the primary CLI: 0 success, 1 usage, 2 I/O, 3 data.
"""

from __future__ import annotations

import argparse
import logging
import sys

from seahaze.errors import DataError

from .config import ConfigurationError, TrainerConfig
from .export import export_restorations
from .networks import Generator
from .training import load_generator, train


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="seahaze-train", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p_train = sub.add_parser("train", help="train on a dataset directory")
    p_train.add_argument("data", help="dataset directory (manifest.json + sample_*)")
    p_train.add_argument("--out", required=True, help="output directory for model + log")
    p_train.add_argument("--config", default=None, help="TrainerConfig JSON file")
    p_train.add_argument("--steps", type=int, default=None, help="override epoch-based count")
    p_train.add_argument("--epochs", type=int, default=None)
    p_train.add_argument("--seed", type=int, default=None)
    p_train.add_argument("--input-size", dest="input_size", type=int, default=None)
    p_train.set_defaults(func=cmd_train)

    p_export = sub.add_parser("export", help="export restorations for evaluation")
    p_export.add_argument("data", help="dataset directory")
    p_export.add_argument("--out", required=True, help="directory for restored PNGs")
    p_export.add_argument("--model", default=None, help="model.pt (untrained net if omitted)")
    p_export.add_argument("--config", default=None, help="TrainerConfig JSON file")
    p_export.set_defaults(func=cmd_export)
    return parser


def _load_config(args) -> TrainerConfig:
    config = TrainerConfig.from_json(args.config) if args.config else TrainerConfig()
    overrides = {
        name: getattr(args, name)
        for name in ("steps", "epochs", "seed", "input_size")
        if getattr(args, name, None) is not None and name != "steps"
    }
    if overrides:
        config = TrainerConfig(**{**config.to_json_dict(), **overrides})
    return config


def cmd_train(args) -> int:
    config = _load_config(args)
    history = train(config, args.data, args.out, steps=args.steps)
    print(f"steps={len(history)} first_total={history[0]['total']:.4f} "
          f"last_total={history[-1]['total']:.4f}")
    return 0


def cmd_export(args) -> int:
    config = _load_config(args)
    if args.model:
        generator = load_generator(args.model)
    else:
        import torch

        torch.manual_seed(config.seed)
        generator = Generator(config.input_size, base=config.base_channels,
                              growth=config.growth)
    written = export_restorations(generator, args.data, args.out)
    print(f"exported={len(written)}")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        return args.func(args)
    except (UsageError, ConfigurationError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except (DataError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
