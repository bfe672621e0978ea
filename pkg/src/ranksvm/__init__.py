"""Linear RankSVM training in O(ms + m log m) per iteration.

Bundle/cutting-plane optimization of the regularized pairwise hinge loss,
with the loss and subgradient evaluated via order-statistics-tree sweeps
instead of explicit pair enumeration.
"""

from .bmrm import CuttingPlane, CuttingPlaneModel, RankModel, TraceRow, objective, solve_model, train
from .data import Dataset, generate_synthetic, load_svmlight, parse_svmlight, validate, write_svmlight
from .errors import DegenerateDataError, SolverFailureError, SvmlightParseError
from .evaluate import RankingErrorReport, grouped_ranking_error, pairwise_ranking_error, predict
from .model_io import load_model, save_model
from .ostree import OSTree
from .pairloss import (
    FrequencyVectors,
    RiskEvaluation,
    brute_force_frequencies,
    brute_force_loss_and_subgradient,
    compute_frequencies,
    count_preference_pairs,
    group_partition,
    grouped_loss_and_subgradient,
    loss_and_subgradient,
)
from .sparse import SparseMatrix

__version__ = "0.1.0"

__all__ = [
    "CuttingPlane",
    "CuttingPlaneModel",
    "Dataset",
    "DegenerateDataError",
    "FrequencyVectors",
    "OSTree",
    "RankModel",
    "RankingErrorReport",
    "RiskEvaluation",
    "SolverFailureError",
    "SparseMatrix",
    "SvmlightParseError",
    "TraceRow",
    "brute_force_frequencies",
    "brute_force_loss_and_subgradient",
    "compute_frequencies",
    "count_preference_pairs",
    "generate_synthetic",
    "group_partition",
    "grouped_loss_and_subgradient",
    "grouped_ranking_error",
    "load_model",
    "load_svmlight",
    "loss_and_subgradient",
    "objective",
    "pairwise_ranking_error",
    "parse_svmlight",
    "predict",
    "save_model",
    "solve_model",
    "train",
    "validate",
    "write_svmlight",
]
