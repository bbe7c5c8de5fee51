"""Independent reference computations used by the tests.

Deliberately pure Python (statistics/math, explicit loops) so they share no
code path with the numpy implementation they check.
"""
import math
import statistics
from fractions import Fraction

from stance_context.corpus import StanceLabel

CANONICAL = list(StanceLabel)


def gnb_oracle(rows, labels, var_smoothing=1e-9):
    """Return {class: (log_prior, means, variances)} fitted by hand."""
    n_features = len(rows[0])
    columns = [[r[j] for r in rows] for j in range(n_features)]
    max_var = max(statistics.pvariance(c) for c in columns) if n_features else 0.0
    eps = var_smoothing * (max_var if max_var > 0 else 1.0)
    params = {}
    for c in CANONICAL:
        members = [r for r, l in zip(rows, labels) if l is c]
        if not members:
            continue
        means = [statistics.fmean(m[j] for m in members) for j in range(n_features)]
        variances = [statistics.pvariance([m[j] for m in members]) + eps for j in range(n_features)]
        params[c] = (math.log(len(members) / len(rows)), means, variances)
    return params


def log_gaussian(x, mean, var):
    return -0.5 * math.log(2 * math.pi * var) - (x - mean) ** 2 / (2 * var)


def gnb_oracle_predict(params, x):
    joint = {}
    for c, (log_prior, means, variances) in params.items():
        joint[c] = log_prior + sum(log_gaussian(xi, m, v) for xi, m, v in zip(x, means, variances))
    best = None
    for c in CANONICAL:  # first maximum in canonical order
        if c in joint and (best is None or joint[c] > joint[best]):
            best = c
    return best, joint


def f1_oracle(pred, gold, label):
    """F1 in percent from precision and recall, computed exactly."""
    tp = sum(1 for p, g in zip(pred, gold) if p is label and g is label)
    n_pred = sum(1 for p in pred if p is label)
    n_gold = sum(1 for g in gold if g is label)
    precision = Fraction(tp, n_pred) if n_pred else Fraction(0)
    recall = Fraction(tp, n_gold) if n_gold else Fraction(0)
    if precision + recall == 0:
        return 0.0
    return float(100 * 2 * precision * recall / (precision + recall))
