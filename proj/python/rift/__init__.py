"""Python bindings for the rift rubric diagnostics library.

Numeric functions take and return plain Python values. Functions over
structured records accept and return dicts and lists.
"""

import json

from . import _core
from ._core import (
    DataError,
    ProviderError,
    RiftError,
    UsageError,
    __version__,
    cohen_kappa,
    consolidate_gold,
    f1_threshold_sweep,
    krippendorff_alpha,
    mean_pairwise_kappa,
    pairwise_agreement,
    pearson_r,
    population_variance,
    roc_auc,
    run_cli,
)


def default_taxonomy():
    return json.loads(_core.default_taxonomy())


def validate_taxonomy(taxonomy):
    return json.loads(_core.validate_taxonomy(json.dumps(taxonomy)))


def diff_taxonomies(old, new):
    return json.loads(_core.diff_taxonomies(json.dumps(old), json.dumps(new)))


def build_annotation_prompt(taxonomy, rubric):
    return _core.build_annotation_prompt(json.dumps(taxonomy), json.dumps(rubric))


def majority_vote(verdicts, n_runs):
    return _core.majority_vote(json.dumps(verdicts), n_runs)


def plan_rounds(dataset_config_path):
    return json.loads(_core.plan_rounds(str(dataset_config_path)))


def irr_signal(labels):
    return _core.irr_signal(json.dumps(labels))


def alignment_signal(labels, reference_labeler, weak_labelers):
    return _core.alignment_signal(json.dumps(labels), reference_labeler, list(weak_labelers))


def replay_review_log(log_path):
    return json.loads(_core.replay_review_log(str(log_path)))


__all__ = [
    "DataError",
    "ProviderError",
    "RiftError",
    "UsageError",
    "__version__",
    "alignment_signal",
    "build_annotation_prompt",
    "cohen_kappa",
    "consolidate_gold",
    "default_taxonomy",
    "diff_taxonomies",
    "f1_threshold_sweep",
    "irr_signal",
    "krippendorff_alpha",
    "majority_vote",
    "mean_pairwise_kappa",
    "pairwise_agreement",
    "pearson_r",
    "plan_rounds",
    "population_variance",
    "replay_review_log",
    "roc_auc",
    "run_cli",
    "validate_taxonomy",
]
