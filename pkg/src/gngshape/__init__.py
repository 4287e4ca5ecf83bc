"""Shape recognition and retrieval with Growing Neural Gas graphs.

Pipeline: binary image -> GNG graph (+ background-edge pruning, largest
component) -> outer-boundary walk -> multi-scale graph-distance features ->
cyclic DP matching -> bull's-eye retrieval.
"""

from ._kernels import BACKEND
from .boundary import BoundaryCycle, clockwise_angle, extract_outer_boundary
from .features import (
    FeatureMatrix,
    ScaleConfig,
    bfs_distances,
    build_feature_matrix,
    select_scales,
)
from .gng import (
    GngGraph,
    GngParams,
    largest_component,
    prune_background_edges,
    train,
)
from .image import (
    BinaryImage,
    background_majority,
    load_image,
    perturb_gaussian,
    sample_foreground,
)
from .matching import Matching, cyclic_dissimilarity, dp_match
from .retrieval import (
    Dataset,
    PipelineConfig,
    RetrievalReport,
    bulls_eye_counts,
    load_dataset,
    pairwise_dissimilarity,
    run_noise_experiment,
    run_retrieval,
    shape_features,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinaryImage",
    "BoundaryCycle",
    "Dataset",
    "FeatureMatrix",
    "GngGraph",
    "GngParams",
    "Matching",
    "PipelineConfig",
    "RetrievalReport",
    "ScaleConfig",
    "background_majority",
    "bfs_distances",
    "build_feature_matrix",
    "bulls_eye_counts",
    "clockwise_angle",
    "cyclic_dissimilarity",
    "dp_match",
    "extract_outer_boundary",
    "largest_component",
    "load_dataset",
    "load_image",
    "pairwise_dissimilarity",
    "perturb_gaussian",
    "prune_background_edges",
    "run_noise_experiment",
    "run_retrieval",
    "sample_foreground",
    "select_scales",
    "shape_features",
    "train",
]
