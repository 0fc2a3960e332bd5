"""
ROC curves and AUC with exact tie handling.

AUC is the Mann-Whitney statistic computed from midranks, so it equals the
fraction of positive/negative pairs ranked correctly with ties counted half.
"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.stats import rankdata

from common.errors import InsufficientDataError, SchemaMismatchError

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RocResult:
    auc: float
    curve: np.ndarray
    positives: int
    negatives: int


def _validate(scores, labels):
    s = np.asarray(scores, dtype=np.float64).ravel()
    y = np.asarray(labels).ravel()
    if s.shape != y.shape:
        raise SchemaMismatchError(f"{s.shape[0]} scores but {y.shape[0]} labels")
    if not np.isfinite(s).all():
        raise SchemaMismatchError("scores contain non-finite values")
    if not np.isin(y, (0, 1)).all():
        raise SchemaMismatchError("labels must be 0 or 1")
    y = y.astype(bool)
    positives = int(y.sum())
    negatives = int(y.size - positives)
    if positives == 0 or negatives == 0:
        raise InsufficientDataError(
            f"AUC is undefined with {positives} positives and {negatives} negatives",
            positives=positives, negatives=negatives,
        )
    return s, y, positives, negatives


def roc_curve_points(s, y, positives, negatives):
    """(fpr, tpr) after each distinct threshold, from (0, 0) to (1, 1)."""
    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    y_sorted = y[order]
    last_of_group = np.append(np.flatnonzero(np.diff(s_sorted)), s_sorted.size - 1)
    tps = np.cumsum(y_sorted)[last_of_group]
    fps = (last_of_group + 1) - tps
    fpr = np.concatenate([[0.0], fps / negatives])
    tpr = np.concatenate([[0.0], tps / positives])
    return np.column_stack([fpr, tpr])


def trapezoid_area(curve):
    x = curve[:, 0]
    y = curve[:, 1]
    return float(np.sum((x[1:] - x[:-1]) * (y[1:] + y[:-1]) / 2.0))


def auc(scores, labels):
    s, y, positives, negatives = _validate(scores, labels)
    ranks = rankdata(s, method="average")
    u_statistic = ranks[y].sum() - positives * (positives + 1) / 2.0
    value = float(u_statistic / (positives * negatives))
    curve = roc_curve_points(s, y, positives, negatives)
    return RocResult(auc=value, curve=curve, positives=positives, negatives=negatives)


def write_roc_csv(result, path):
    logger.info(f"Writing ROC curve with {len(result.curve)} points to {path}")
    frame = pd.DataFrame(result.curve, columns=["fpr", "tpr"])
    frame.to_csv(path, index=False, lineterminator="\n")
