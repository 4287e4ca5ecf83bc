"""Command-line interface.

Subcommands: build, boundary, features, match, retrieve, noise, plot.
Flags may also come from a TOML config file (--config) whose keys mirror the
flag names with underscores; explicit flags win over the file.

Exit codes: 0 success, 2 input/validation error, 3 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from .boundary import extract_outer_boundary
from .errors import InputError
from .features import ScaleConfig, build_feature_matrix
from .gng import GngParams, largest_component, prune_background_edges, train
from .image import load_image, perturb_gaussian
from .matching import cyclic_dissimilarity
from .retrieval import (
    PipelineConfig,
    load_dataset,
    run_noise_experiment,
    run_retrieval,
    shape_features,
)

_DEFAULTS = {
    "threshold": 128,
    "invert": False,
    "noise_sigma": 0.0,
    "seed": 0,
    "neurons": 350,
    "lam": 50,
    "max_age": 50,
    "alpha": 0.5,
    "decay": 0.995,
    "eps_b": 0.05,
    "eps_n": 0.005,
    "scales": "10,10,10,10",
    "gap_cost": None,
    "max_rank": 10,
    "jobs": 1,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="TOML file with flag defaults")
    p.add_argument("--threshold", type=int)
    p.add_argument("--invert", action="store_const", const=True)
    p.add_argument("--noise-sigma", type=float, dest="noise_sigma")
    p.add_argument("--seed", type=int)
    p.add_argument("--neurons", type=int)
    p.add_argument("--lambda", type=int, dest="lam")
    p.add_argument("--max-age", type=int, dest="max_age")
    p.add_argument("--alpha", type=float)
    p.add_argument("--decay", type=float)
    p.add_argument("--eps-b", type=float, dest="eps_b")
    p.add_argument("--eps-n", type=float, dest="eps_n")
    p.add_argument("--scales", help="m1,m2,m3,m4 scale counts")
    p.add_argument("--gap-cost", type=float, dest="gap_cost")


def _resolve(args: argparse.Namespace) -> dict:
    fromfile = {}
    if getattr(args, "config", None):
        with open(args.config, "rb") as fh:
            fromfile = {k.replace("-", "_"): v for k, v in tomllib.load(fh).items()}
    out = {}
    for key, default in _DEFAULTS.items():
        value = getattr(args, key, None)
        if value is None:
            value = fromfile.get(key, default)
        out[key] = value
    return out


def _pipeline_config(opts: dict) -> PipelineConfig:
    m1, m2, m3, m4 = (int(x) for x in str(opts["scales"]).split(","))
    return PipelineConfig(
        threshold=opts["threshold"],
        invert=bool(opts["invert"]),
        gng=GngParams(
            neurons=opts["neurons"],
            insertion_period=opts["lam"],
            max_edge_age=opts["max_age"],
            error_split=opts["alpha"],
            error_decay=opts["decay"],
            winner_rate=opts["eps_b"],
            neighbor_rate=opts["eps_n"],
            seed=opts["seed"],
        ),
        scales=ScaleConfig(m1, m2, m3, m4),
        gap_cost=opts["gap_cost"],
        seed=opts["seed"],
    )


def _load_single(path: Path, opts: dict, cfg: PipelineConfig):
    img = load_image(path.read_bytes(), cfg.threshold, cfg.invert)
    if opts["noise_sigma"] > 0:
        img = perturb_gaussian(
            img, opts["noise_sigma"], np.random.default_rng([cfg.seed, 7919])
        )
    return img


def _corrected_graph(img, cfg: PipelineConfig):
    return largest_component(prune_background_edges(train(img, cfg.gng), img))


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text)


def _cmd_build(args) -> int:
    opts = _resolve(args)
    cfg = _pipeline_config(opts)
    g = _corrected_graph(_load_single(args.image, opts, cfg), cfg)
    _emit(json.dumps(g.to_json_dict()), args.output)
    return 0


def _cmd_boundary(args) -> int:
    opts = _resolve(args)
    cfg = _pipeline_config(opts)
    g = _corrected_graph(_load_single(args.image, opts, cfg), cfg)
    cycle = extract_outer_boundary(g)
    _emit(json.dumps(list(cycle.vertex_ids)), args.output)
    return 0


def _cmd_features(args) -> int:
    opts = _resolve(args)
    cfg = _pipeline_config(opts)
    img = _load_single(args.image, opts, cfg)
    feats = shape_features(img, cfg, cfg.gng.seed)
    if args.format == "json":
        _emit(json.dumps(feats.to_json_dict()), args.output)
    else:
        _emit(feats.to_csv(), args.output)
    return 0


def _cmd_match(args) -> int:
    opts = _resolve(args)
    cfg = _pipeline_config(opts)
    fa = shape_features(_load_single(args.image_a, opts, cfg), cfg, cfg.gng.seed)
    fb = shape_features(_load_single(args.image_b, opts, cfg), cfg, cfg.gng.seed)
    cost, matching = cyclic_dissimilarity(fa, fb, cfg.gap_cost)
    _emit(
        json.dumps(
            {
                "cost": cost,
                "shift": matching.shift,
                "swapped": matching.swapped,
                "pairs": [[i, j - 1] for i, j in matching.matched_pairs],
            }
        ),
        args.output,
    )
    return 0


def _cmd_retrieve(args) -> int:
    opts = _resolve(args)
    cfg = _pipeline_config(opts)
    dataset = load_dataset(args.root)
    max_rank = min(opts["max_rank"], len(dataset))
    report = run_retrieval(dataset, cfg, max_rank, opts["jobs"], args.cache)
    if args.report:
        args.report.write_text(report.to_json())
    sys.stdout.write(report.counts_csv())
    return 0


def _cmd_noise(args) -> int:
    opts = _resolve(args)
    cfg = _pipeline_config(opts)
    dataset = load_dataset(args.root)
    sigmas = [float(s) for s in args.sigmas.split(",")]
    max_rank = min(opts["max_rank"], len(dataset))
    reports = run_noise_experiment(dataset, cfg, sigmas, max_rank, opts["jobs"])
    for sigma, report in zip(sigmas, reports):
        sys.stdout.write(f"sigma={sigma}\n{report.counts_csv()}")
    if args.report:
        args.report.write_text(
            json.dumps([r.to_json_dict() for r in reports], indent=2)
        )
    return 0


def _cmd_plot(args) -> int:
    opts = _resolve(args)
    cfg = _pipeline_config(opts)
    img = _load_single(args.image, opts, cfg)
    g = _corrected_graph(img, cfg)
    cycle = extract_outer_boundary(g)
    if args.boundary_csv:
        lines = ["x,y"] + [f"{x},{y}" for x, y in cycle.positions(g)]
        args.boundary_csv.write_text("\n".join(lines) + "\n")
    if args.features_csv:
        feats = build_feature_matrix(g, cycle, cfg.scales)
        series = feats.scale_averages()
        lines = ["position,P,B,CH,C"]
        for i in range(series.shape[1]):
            lines.append(f"{i}," + ",".join(repr(v) for v in series[:, i]))
        args.features_csv.write_text("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gngshape",
        description="GNG-graph shape recognition and retrieval",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="train the corrected GNG graph of an image")
    p.add_argument("image", type=Path)
    p.add_argument("-o", "--output", type=Path)
    _add_common(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("boundary", help="outer-boundary vertex ids of an image")
    p.add_argument("image", type=Path)
    p.add_argument("-o", "--output", type=Path)
    _add_common(p)
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("features", help="feature matrix of an image")
    p.add_argument("image", type=Path)
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(p)
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("match", help="match two images and print the correspondence")
    p.add_argument("image_a", type=Path)
    p.add_argument("image_b", type=Path)
    p.add_argument("-o", "--output", type=Path)
    _add_common(p)
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("retrieve", help="bull's-eye retrieval over a dataset")
    p.add_argument("root", type=Path)
    p.add_argument("--max-rank", type=int, dest="max_rank")
    p.add_argument("--report", type=Path)
    p.add_argument("--jobs", type=int)
    p.add_argument("--cache", type=Path)
    _add_common(p)
    p.set_defaults(func=_cmd_retrieve)

    p = sub.add_parser("noise", help="noise-robustness retrieval experiment")
    p.add_argument("root", type=Path)
    p.add_argument("--sigmas", required=True, help="comma-separated noise levels")
    p.add_argument("--max-rank", type=int, dest="max_rank")
    p.add_argument("--report", type=Path)
    p.add_argument("--jobs", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_noise)

    p = sub.add_parser("plot", help="CSV series for boundary and feature diagrams")
    p.add_argument("image", type=Path)
    p.add_argument("--boundary-csv", type=Path, dest="boundary_csv")
    p.add_argument("--features-csv", type=Path, dest="features_csv")
    _add_common(p)
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
