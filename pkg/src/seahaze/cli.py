"""Command-line interface: table, degrade, restore, synth and eval.

Every run is deterministic given its flags, seed and input bytes. Logs
go to stderr; data goes to files or stdout. Exit codes: 0 success,
1 usage error, 2 I/O error, 3 data/shape error.

Each flag has a config-file equivalent: pass --config FILE with a JSON
object keyed by the flag's long name (dashes as underscores); explicit
flags win over config values.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import cv2
import numpy as np

from . import fileio, report, synth
from .errors import DataError, ShapeMismatchError
from .formation import DEFAULT_T_MIN, RestorationParams, degrade, restore
from .jerlov import WAVELENGTHS_NM, WaterType, iop_table_rows
from .metrics import FULL_REFERENCE, METRIC_NAMES, compute_report
from .synth import SynthesisConfig, procedural_depth

log = logging.getLogger("seahaze")


class UsageError(Exception):
    """Bad flags or flag values; exits with code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_triple(text: str, flag: str) -> np.ndarray:
    try:
        parts = [float(p) for p in str(text).split(",")]
    except ValueError:
        raise UsageError(f"{flag}: expected a number or R,G,B triple, got {text!r}")
    if len(parts) == 1:
        parts = parts * 3
    if len(parts) != 3:
        raise UsageError(f"{flag}: expected 1 or 3 comma-separated numbers, got {text!r}")
    return np.array(parts, dtype=np.float64)


def _parse_pair(text: str, flag: str) -> tuple[float, float]:
    try:
        parts = [float(p) for p in str(text).split(",")]
    except ValueError:
        parts = []
    if len(parts) != 2:
        raise UsageError(f"{flag}: expected LO,HI, got {text!r}")
    return parts[0], parts[1]


def _parse_water_type(text: str, flag: str) -> WaterType:
    try:
        return WaterType.parse(str(text))
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}")


def _parse_water_types(text: str, flag: str) -> tuple[WaterType, ...]:
    return tuple(_parse_water_type(p, flag) for p in str(text).split(","))


def _merge_config(args: argparse.Namespace, defaults: dict) -> argparse.Namespace:
    """Fill unset flags from --config JSON, then from built-in defaults."""
    cfg = {}
    if getattr(args, "config", None):
        cfg = fileio.read_json(args.config)
        unknown = set(cfg) - set(defaults)
        if unknown:
            raise UsageError(f"--config: unknown keys {sorted(unknown)}")
    for dest, default in defaults.items():
        value = getattr(args, dest, None)
        if value is None or value is False:
            value = cfg.get(dest, default)
        setattr(args, dest, value)
    return args


def build_parser() -> _Parser:
    parser = _Parser(prog="seahaze", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p_table = sub.add_parser("table", help="print the water-type coefficient table")
    p_table.add_argument("--format", choices=("text", "csv"), default=None)
    p_table.add_argument("--plot", metavar="PATH", default=None, help="also render a bar chart")
    p_table.add_argument("--config", default=None)
    p_table.set_defaults(func=cmd_table)

    p_deg = sub.add_parser("degrade", help="apply the forward formation model")
    p_deg.add_argument("clean", help="clean RGB image (8-bit PNG)")
    p_deg.add_argument("--out", required=True, help="output sample directory")
    p_deg.add_argument("--water-type", dest="water_type", default=None)
    p_deg.add_argument("--water-depth", dest="water_depth", type=float, default=None)
    p_deg.add_argument("--background", default=None, help="background light, B or R,G,B")
    p_deg.add_argument("--depth", default=None, help="depth map file (16-bit mm PNG or PFM)")
    p_deg.add_argument("--depth-const", dest="depth_const", type=float, default=None)
    p_deg.add_argument("--depth-hramp", dest="depth_hramp", default=None, metavar="NEAR,FAR")
    p_deg.add_argument("--depth-vramp", dest="depth_vramp", default=None, metavar="NEAR,FAR")
    p_deg.add_argument("--config", default=None)
    p_deg.set_defaults(func=cmd_degrade)

    p_res = sub.add_parser("restore", help="invert the formation model")
    p_res.add_argument("degraded", help="degraded RGB image")
    p_res.add_argument("--out", required=True, help="restored image path (.png or .npy)")
    p_res.add_argument("--meta", default=None, help="meta.json of a synthesized sample")
    p_res.add_argument("--attenuation", default=None, help="C or R,G,B")
    p_res.add_argument("--background", default=None, help="B or R,G,B")
    p_res.add_argument("--trans", default=None, help="transmission map (16-bit PNG)")
    p_res.add_argument("--trans-const", dest="trans_const", type=float, default=None)
    p_res.add_argument("--t-min", dest="t_min", type=float, default=None)
    p_res.add_argument("--no-clamp", dest="no_clamp", action="store_true", default=False)
    p_res.add_argument("--report", default=None, help="write a metric report JSON here")
    p_res.add_argument("--ref", default=None, help="reference image for the report")
    p_res.add_argument("--config", default=None)
    p_res.set_defaults(func=cmd_restore)

    p_syn = sub.add_parser("synth", help="generate a synthetic dataset from RGB-D sources")
    p_syn.add_argument("source", help="directory of name.png + name.depth.png|name.pfm pairs")
    p_syn.add_argument("--out", required=True)
    p_syn.add_argument("-n", "--count", dest="count", type=int, default=None)
    p_syn.add_argument("--seed", type=int, default=None)
    p_syn.add_argument("--water-types", dest="water_types", default=None, metavar="LIST")
    p_syn.add_argument("--depth-range", dest="depth_range", default=None, metavar="LO,HI")
    p_syn.add_argument("--background-range", dest="background_range", default=None, metavar="LO,HI")
    p_syn.add_argument("--size", type=int, default=None)
    p_syn.add_argument(
        "--shared-background",
        dest="shared_background",
        action="store_true",
        default=False,
        help="draw one background level for all channels",
    )
    p_syn.add_argument("--jobs", type=int, default=None)
    p_syn.add_argument("--config", default=None)
    p_syn.set_defaults(func=cmd_synth)

    p_eval = sub.add_parser("eval", help="score images and write a report")
    p_eval.add_argument("test", nargs="+", help="image(s) to score")
    p_eval.add_argument("--ref", nargs="+", default=None, help="reference image(s), one per test")
    p_eval.add_argument("--metrics", default=None, help=f"subset of {','.join(METRIC_NAMES)}")
    p_eval.add_argument("--format", choices=("csv", "json"), default=None)
    p_eval.add_argument("--out", default=None, help="report file (default stdout)")
    p_eval.add_argument("--figures", default=None, metavar="DIR", help="render bar charts here")
    p_eval.add_argument("--config", default=None)
    p_eval.set_defaults(func=cmd_eval)

    return parser


def cmd_table(args) -> int:
    _merge_config(args, {"format": "text", "plot": None})
    rows = iop_table_rows()
    if args.format == "csv":
        print("water_type,alpha_r,alpha_g,alpha_b,beta_r,beta_g,beta_b")
        for row in rows:
            print(",".join([row[0]] + [repr(float(v)) for v in row[1:]]))
    else:
        nm = WAVELENGTHS_NM
        print(f"{'type':>5}  " + "  ".join(f"alpha_{w}nm" for w in nm) + "  "
              + "  ".join(f" beta_{w}nm" for w in nm))
        for tag, ar, ag, ab, br, bg, bb in rows:
            print(f"{tag:>5}  {ar:>10.4f}  {ag:>10.4f}  {ab:>10.4f}"
                  f"  {br:>10.4f}  {bg:>10.4f}  {bb:>10.4f}")
    if args.plot:
        path = report.render_iop_chart(args.plot)
        log.info("wrote coefficient chart to %s", path)
    return 0


def _depth_from_flags(args, height: int, width: int) -> tuple[np.ndarray, str]:
    given = [
        flag
        for flag, value in (
            ("--depth", args.depth),
            ("--depth-const", args.depth_const),
            ("--depth-hramp", args.depth_hramp),
            ("--depth-vramp", args.depth_vramp),
        )
        if value is not None
    ]
    if len(given) != 1:
        raise UsageError(
            "exactly one of --depth, --depth-const, --depth-hramp or --depth-vramp is required"
        )
    try:
        if args.depth is not None:
            d = fileio.read_depth(args.depth)
            if d.shape != (height, width):
                d = cv2.resize(
                    d.astype(np.float32), (width, height), interpolation=cv2.INTER_LINEAR
                ).astype(np.float64)
            return d, Path(args.depth).name
        if args.depth_const is not None:
            return procedural_depth("constant", height, width, args.depth_const), (
                f"procedural:constant:{args.depth_const}"
            )
        if args.depth_hramp is not None:
            pair = _parse_pair(args.depth_hramp, "--depth-hramp")
            return procedural_depth("hramp", height, width, pair), (
                f"procedural:hramp:{pair[0]},{pair[1]}"
            )
        pair = _parse_pair(args.depth_vramp, "--depth-vramp")
        return procedural_depth("vramp", height, width, pair), (
            f"procedural:vramp:{pair[0]},{pair[1]}"
        )
    except ValueError as exc:
        raise UsageError(f"invalid depth specification: {exc}")


def cmd_degrade(args) -> int:
    _merge_config(
        args,
        {
            "water_type": "III",
            "water_depth": 5.0,
            "background": "0.8",
            "depth": None,
            "depth_const": None,
            "depth_hramp": None,
            "depth_vramp": None,
        },
    )
    water_type = _parse_water_type(args.water_type, "--water-type")
    if args.water_depth < 0:
        raise UsageError(f"--water-depth: must be >= 0, got {args.water_depth}")
    background = _parse_triple(args.background, "--background")
    if background.min() < 0 or background.max() > 1:
        raise UsageError("--background: components must lie in [0, 1]")

    clean = fileio.read_image(args.clean)
    height, width = clean.shape[:2]
    depth, depth_id = _depth_from_flags(args, height, width)

    sample = synth.synthesize_sample(
        clean,
        depth,
        water_type,
        args.water_depth,
        background,
        source_image=Path(args.clean).name,
        source_depth=depth_id,
    )
    synth.save_sample(args.out, sample)
    log.info("wrote sample to %s", args.out)
    return 0


def cmd_restore(args) -> int:
    _merge_config(
        args,
        {
            "meta": None,
            "attenuation": None,
            "background": None,
            "trans": None,
            "trans_const": None,
            "t_min": DEFAULT_T_MIN,
            "no_clamp": False,
            "report": None,
            "ref": None,
        },
    )
    degraded = fileio.read_image(args.degraded)
    height, width = degraded.shape[:2]

    if args.meta is not None:
        params, _ = synth.load_sample_params(args.meta)
    else:
        missing = [
            flag
            for flag, value in (("--attenuation", args.attenuation), ("--background", args.background))
            if value is None
        ]
        if missing:
            raise UsageError(f"without --meta, {' and '.join(missing)} must be given")
        if (args.trans is None) == (args.trans_const is None):
            raise UsageError("exactly one of --trans or --trans-const is required without --meta")
        attenuation = _parse_triple(args.attenuation, "--attenuation")
        background = _parse_triple(args.background, "--background")
        if args.trans is not None:
            transmission = fileio.read_transmission(args.trans)
        else:
            if not 0.0 < args.trans_const <= 1.0:
                raise UsageError(f"--trans-const: must lie in (0, 1], got {args.trans_const}")
            transmission = np.full((height, width, 3), float(args.trans_const))
        try:
            params = RestorationParams(attenuation, background, transmission)
        except ValueError as exc:
            raise UsageError(str(exc))

    restored = restore(degraded, params, t_min=args.t_min, clamp=not args.no_clamp)
    out = Path(args.out)
    if out.suffix == ".npy":
        out.parent.mkdir(parents=True, exist_ok=True)
        np.save(out, restored)
    else:
        fileio.write_image(out, np.clip(restored, 0.0, 1.0))
    log.info("wrote restored image to %s", out)

    if args.report is not None:
        clipped = np.clip(restored, 0.0, 1.0)
        reference = fileio.read_image(args.ref) if args.ref else None
        rep = compute_report(clipped, reference)
        fileio.write_json(args.report, rep.to_json_dict())
        log.info("wrote metric report to %s", args.report)
    return 0


def cmd_synth(args) -> int:
    _merge_config(
        args,
        {
            "count": 1,
            "seed": 0,
            "water_types": "II,III,1C,3C",
            "depth_range": "2,10",
            "background_range": "0.5,1",
            "size": 256,
            "shared_background": False,
            "jobs": 1,
        },
    )
    if args.count < 1:
        raise UsageError(f"--count: must be >= 1, got {args.count}")
    if args.jobs < 1:
        raise UsageError(f"--jobs: must be >= 1, got {args.jobs}")
    try:
        config = SynthesisConfig(
            water_types=_parse_water_types(args.water_types, "--water-types"),
            depth_range=_parse_pair(str(args.depth_range), "--depth-range"),
            background_range=_parse_pair(str(args.background_range), "--background-range"),
            output_size=args.size,
            seed=args.seed,
            shared_background=bool(args.shared_background),
        )
    except ValueError as exc:
        raise UsageError(str(exc))

    pairs = synth.find_source_pairs(args.source)
    if not pairs:
        raise UsageError(f"no image/depth pairs found in {args.source}")
    manifest = synth.generate_dataset(pairs, args.count, config, args.out, jobs=args.jobs)
    log.info("wrote %d samples to %s", manifest["count"], args.out)
    return 0


def cmd_eval(args) -> int:
    _merge_config(args, {"ref": None, "metrics": None, "format": "csv", "out": None, "figures": None})
    refs = args.ref
    if refs is not None and len(refs) != len(args.test):
        raise UsageError(
            f"--ref: expected {len(args.test)} reference image(s), got {len(refs)}"
        )
    selected = None
    if args.metrics is not None:
        selected = tuple(m.strip() for m in str(args.metrics).split(","))
        unknown = [m for m in selected if m not in METRIC_NAMES]
        if unknown:
            raise UsageError(f"--metrics: unknown names {unknown}; valid: {','.join(METRIC_NAMES)}")
        if refs is None and any(m in FULL_REFERENCE for m in selected):
            raise UsageError("--metrics: full-reference metrics require --ref")

    rows = []
    failures = 0
    for idx, test_path in enumerate(args.test):
        row: dict = {"name": Path(test_path).name}
        try:
            test_img = fileio.read_image(test_path)
            ref_img = fileio.read_image(refs[idx]) if refs is not None else None
            rep = compute_report(test_img, ref_img, selected)
            row.update(rep.entries)
        except (OSError, ValueError) as exc:
            row["error"] = str(exc)
            failures += 1
            log.error("%s: %s", test_path, exc)
        rows.append(row)

    text = report.rows_to_json(rows) if args.format == "json" else report.rows_to_csv(rows)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
        log.info("wrote report to %s", args.out)
    else:
        sys.stdout.write(text)

    if args.figures:
        written = report.render_figures(rows, args.figures)
        log.info("wrote %d figure(s) to %s", len(written), args.figures)

    return 3 if failures else 0


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except (DataError, ShapeMismatchError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
