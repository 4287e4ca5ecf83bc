"""Dataset loading, the end-to-end pipeline, and bull's-eye retrieval.

Per-item randomness is derived from (master seed, item index) with numpy's
SeedSequence, so reports are fully determined by (dataset, parameters, seed)
and adding noise streams never disturbs the GNG streams.
"""

from __future__ import annotations

import csv as _csv
import hashlib
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .boundary import extract_outer_boundary
from .errors import (
    MissingRootError,
    NoImagesError,
    RankOutOfRangeError,
    UnlabeledItemError,
)
from .features import FeatureMatrix, ScaleConfig, build_feature_matrix
from .gng import GngParams, largest_component, prune_background_edges, train
from .image import BinaryImage, load_image, perturb_gaussian
from .matching import cyclic_dissimilarity

__all__ = [
    "PipelineConfig",
    "Dataset",
    "DatasetItem",
    "RetrievalReport",
    "load_dataset",
    "shape_features",
    "dataset_features",
    "pairwise_dissimilarity",
    "bulls_eye_counts",
    "run_retrieval",
    "run_noise_experiment",
]

_IMAGE_SUFFIXES = (".pgm", ".png")


@dataclass(frozen=True)
class PipelineConfig:
    threshold: int = 128
    invert: bool = False
    gng: GngParams = field(default_factory=GngParams)
    scales: ScaleConfig = field(default_factory=ScaleConfig)
    gap_cost: float | None = None
    seed: int = 0

    def describe(self) -> dict:
        return {
            "threshold": self.threshold,
            "invert": self.invert,
            "gng": vars(self.gng).copy(),
            "scales": vars(self.scales).copy(),
            "gap_cost": self.gap_cost,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class DatasetItem:
    id: int
    label: str
    path: Path


@dataclass(frozen=True)
class Dataset:
    items: tuple

    def labels(self) -> list:
        return [it.label for it in self.items]

    def class_sizes(self) -> dict:
        sizes: dict = {}
        for it in self.items:
            sizes[it.label] = sizes.get(it.label, 0) + 1
        return sizes

    def __len__(self) -> int:
        return len(self.items)


def _items_from_manifest(manifest: Path, base: Path) -> list:
    rows = []
    with open(manifest, newline="") as fh:
        for row in _csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            if len(row) < 2 or not row[1].strip():
                raise UnlabeledItemError(f"manifest row without label: {row!r}")
            rows.append((row[0].strip(), row[1].strip()))
    seen = set()
    for path, _ in rows:
        if path in seen:
            raise UnlabeledItemError(f"duplicate path in manifest: {path}")
        seen.add(path)
    return [(base / p, label) for p, label in sorted(rows)]


def load_dataset(root: str | Path) -> Dataset:
    """Items from class subdirectories or from a manifest CSV (path,label)."""
    root = Path(root)
    if not root.exists():
        raise MissingRootError(f"dataset root {root} does not exist")
    if root.is_file():
        pairs = _items_from_manifest(root, root.parent)
    elif (root / "manifest.csv").is_file():
        pairs = _items_from_manifest(root / "manifest.csv", root)
    else:
        pairs = sorted(
            (p, p.parent.name)
            for p in root.rglob("*")
            if p.is_file() and p.suffix.lower() in _IMAGE_SUFFIXES and p.parent != root
        )
    if not pairs:
        raise NoImagesError(f"no labeled images under {root}")
    items = tuple(
        DatasetItem(i, label, Path(path)) for i, (path, label) in enumerate(pairs)
    )
    return Dataset(items)


def _item_seed(master_seed: int, item_index: int) -> int:
    return int(np.random.SeedSequence([master_seed, item_index]).generate_state(1, np.uint64)[0])


def shape_features(
    img: BinaryImage, config: PipelineConfig, gng_seed: int | None = None
) -> FeatureMatrix:
    """image -> trained GNG -> corrections -> boundary -> feature matrix."""
    params = config.gng if gng_seed is None else replace(config.gng, seed=gng_seed)
    g = largest_component(prune_background_edges(train(img, params), img))
    cycle = extract_outer_boundary(g)
    return build_feature_matrix(g, cycle, config.scales)


def _load_item_image(item: DatasetItem, config: PipelineConfig) -> BinaryImage:
    return load_image(item.path.read_bytes(), config.threshold, config.invert)


def _noise_rng(config: PipelineConfig, sigma_index: int, item_index: int):
    return np.random.default_rng([config.seed, 7919, sigma_index, item_index])


def _features_one(args):
    img, config, seed, cache_dir = args
    if cache_dir is None:
        return shape_features(img, config, seed)
    key = hashlib.sha256(
        img.mask.tobytes()
        + repr((img.mask.shape, sorted(config.describe().items()), seed)).encode()
    ).hexdigest()
    path = Path(cache_dir) / f"{key}.npz"
    if path.is_file():
        with np.load(path) as data:
            return FeatureMatrix(
                data["values"], tuple(data["layout"]), tuple(data["boundary"])
            )
    feats = shape_features(img, config, seed)
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    np.savez(
        path,
        values=feats.values,
        layout=np.array(feats.block_layout),
        boundary=np.array(feats.boundary_ids),
    )
    return feats


def dataset_features(
    images: list,
    config: PipelineConfig,
    jobs: int = 1,
    cache_dir: str | None = None,
) -> list:
    """Feature matrices for a list of BinaryImages, one derived seed per item."""
    tasks = [
        (img, config, _item_seed(config.seed, i), cache_dir)
        for i, img in enumerate(images)
    ]
    if jobs <= 1:
        return [_features_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_features_one, tasks))


def _pair_dissimilarity(args):
    fa, fb, gap = args
    return cyclic_dissimilarity(fa, fb, gap)[0]


def pairwise_dissimilarity(
    features: list, gap_cost: float | None = None, jobs: int = 1
) -> np.ndarray:
    """Symmetric dissimilarity matrix; each unordered pair computed once."""
    n = len(features)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    tasks = [(features[i], features[j], gap_cost) for i, j in pairs]
    if jobs <= 1:
        values = [_pair_dissimilarity(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_pair_dissimilarity, tasks, chunksize=16))
    matrix = np.zeros((n, n))
    for (i, j), v in zip(pairs, values):
        matrix[i, j] = matrix[j, i] = v
    return matrix


def bulls_eye_counts(matrix: np.ndarray, labels: list, max_rank: int) -> list:
    """counts[k-1] = queries whose k-th nearest item (query included) shares its class."""
    n = len(labels)
    if matrix.shape != (n, n):
        raise ValueError("matrix and labels disagree")
    if not 1 <= max_rank <= n:
        raise RankOutOfRangeError(f"max_rank must be in [1, {n}]")
    counts = [0] * max_rank
    ids = np.arange(n)
    for i in range(n):
        order = np.lexsort((ids, matrix[i]))
        for k in range(max_rank):
            if labels[order[k]] == labels[i]:
                counts[k] += 1
    return counts


@dataclass(frozen=True)
class RetrievalReport:
    matrix: np.ndarray
    per_rank_counts: list
    metadata: dict

    def to_json_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "per_rank_counts": list(self.per_rank_counts),
            "matrix": self.matrix.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def counts_csv(self) -> str:
        buf = io.StringIO()
        writer = _csv.writer(buf)
        writer.writerow([f"rank_{k + 1}" for k in range(len(self.per_rank_counts))])
        writer.writerow(self.per_rank_counts)
        return buf.getvalue()


def _report(images, labels, config, max_rank, jobs, cache_dir, extra_meta):
    features = dataset_features(images, config, jobs, cache_dir)
    matrix = pairwise_dissimilarity(features, config.gap_cost, jobs)
    counts = bulls_eye_counts(matrix, labels, max_rank)
    meta = {"parameters": config.describe(), "n_items": len(images), **extra_meta}
    return RetrievalReport(matrix, counts, meta)


def run_retrieval(
    dataset: Dataset,
    config: PipelineConfig,
    max_rank: int,
    jobs: int = 1,
    cache_dir: str | None = None,
) -> RetrievalReport:
    images = [_load_item_image(it, config) for it in dataset.items]
    return _report(
        images, dataset.labels(), config, max_rank, jobs, cache_dir, {"noise_sigma": 0.0}
    )


def run_noise_experiment(
    dataset: Dataset,
    config: PipelineConfig,
    sigmas: list,
    max_rank: int,
    jobs: int = 1,
) -> list:
    """One full retrieval report per noise level; sigma=0 matches the clean run."""
    clean = [_load_item_image(it, config) for it in dataset.items]
    reports = []
    for si, sigma in enumerate(sigmas):
        if sigma < 0:
            raise ValueError("sigma must be nonnegative")
        images = [
            perturb_gaussian(img, sigma, _noise_rng(config, si, i))
            for i, img in enumerate(clean)
        ]
        reports.append(
            _report(
                images,
                dataset.labels(),
                config,
                max_rank,
                jobs,
                None,
                {"noise_sigma": float(sigma)},
            )
        )
    return reports
