"""Gaussian Naive Bayes over named feature vectors.

Variances are population variances plus a smoothing floor of
``var_smoothing`` times the largest per-feature variance of the whole
training matrix. Everything is computed in log space; ties in the argmax go
to the earliest class in canonical order (AGAINST, FAVOR, NONE).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from stance_context.corpus import StanceLabel
from stance_context.errors import StanceError
from stance_context.features import FeatureGroup, FeatureVector

MODEL_FORMAT = "stance-context-gnb"
MODEL_VERSION = 1
DEFAULT_VAR_SMOOTHING = 1e-9


class SchemaMismatch(StanceError):
    pass


@dataclass(frozen=True, eq=False)
class GnbModel:
    classes: tuple[StanceLabel, ...]
    log_priors: np.ndarray  # (n_classes,)
    means: np.ndarray  # (n_classes, n_features)
    variances: np.ndarray  # (n_classes, n_features), smoothed
    schema: tuple[tuple[FeatureGroup, str], ...]
    epsilon: float = 0.0

    @property
    def priors(self) -> np.ndarray:
        return np.exp(self.log_priors)

    def log_joint(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.means.shape[1]:
            raise SchemaMismatch(f"expected {self.means.shape[1]} features, got {X.shape[1]}")
        norm = -0.5 * np.log(2.0 * np.pi * self.variances).sum(axis=1)  # (k,)
        diff = X[:, None, :] - self.means[None, :, :]  # (n, k, f)
        quad = -0.5 * (diff**2 / self.variances[None, :, :]).sum(axis=2)
        return self.log_priors[None, :] + norm[None, :] + quad

    def predict_matrix(self, X: np.ndarray) -> list[StanceLabel]:
        # np.argmax returns the first maximum, i.e. the canonical tie-break.
        return [self.classes[i] for i in np.argmax(self.log_joint(X), axis=1)]

    def to_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "classes": [c.value for c in self.classes],
            "log_priors": self.log_priors.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
            "epsilon": self.epsilon,
            "schema": [[g.value, name] for g, name in self.schema],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GnbModel":
        if data.get("format") != MODEL_FORMAT:
            raise StanceError("not a stance-context model file")
        if data.get("version") != MODEL_VERSION:
            raise StanceError(f"unsupported model version {data.get('version')}")
        return cls(
            classes=tuple(StanceLabel(c) for c in data["classes"]),
            log_priors=np.array(data["log_priors"], dtype=float),
            means=np.array(data["means"], dtype=float).reshape(len(data["classes"]), -1),
            variances=np.array(data["variances"], dtype=float).reshape(len(data["classes"]), -1),
            schema=tuple((FeatureGroup(g), name) for g, name in data["schema"]),
            epsilon=float(data["epsilon"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def loads(cls, text: str) -> "GnbModel":
        return cls.from_dict(json.loads(text))


def fit_matrix(
    X: np.ndarray,
    labels: Sequence[StanceLabel],
    schema: tuple = (),
    var_smoothing: float = DEFAULT_VAR_SMOOTHING,
) -> GnbModel:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise StanceError("cannot fit on an empty training set")
    if len(labels) != X.shape[0]:
        raise StanceError(f"{X.shape[0]} vectors but {len(labels)} labels")
    if schema and len(schema) != X.shape[1]:
        raise SchemaMismatch("schema length differs from the number of columns")
    y = np.array([StanceLabel(l).value for l in labels])
    classes = tuple(c for c in StanceLabel if np.any(y == c.value))

    max_var = float(X.var(axis=0).max()) if X.shape[1] else 0.0
    epsilon = var_smoothing * (max_var if max_var > 0 else 1.0)

    n = X.shape[0]
    log_priors = np.empty(len(classes))
    means = np.empty((len(classes), X.shape[1]))
    variances = np.empty_like(means)
    for i, c in enumerate(classes):
        rows = X[y == c.value]
        log_priors[i] = np.log(rows.shape[0] / n)
        means[i] = rows.mean(axis=0)
        variances[i] = rows.var(axis=0) + epsilon
    return GnbModel(classes, log_priors, means, variances, tuple(schema), epsilon)


def fit(
    vectors: Sequence[FeatureVector],
    labels: Sequence[StanceLabel],
    var_smoothing: float = DEFAULT_VAR_SMOOTHING,
) -> GnbModel:
    if not vectors:
        raise StanceError("cannot fit on an empty training set")
    schema = vectors[0].schema
    for v in vectors:
        if v.schema != schema:
            raise SchemaMismatch("training vectors do not share one schema")
    X = np.array([v.values for v in vectors], dtype=float).reshape(len(vectors), len(schema))
    return fit_matrix(X, labels, schema, var_smoothing)


def predict(model: GnbModel, vector: FeatureVector) -> tuple[StanceLabel, dict[StanceLabel, float]]:
    if vector.schema != model.schema:
        raise SchemaMismatch("vector schema differs from the model schema")
    joint = model.log_joint(np.array([vector.values], dtype=float).reshape(1, -1))[0]
    label = model.classes[int(np.argmax(joint))]
    return label, {c: float(v) for c, v in zip(model.classes, joint)}


def posteriors(log_joint: np.ndarray) -> np.ndarray:
    shifted = log_joint - log_joint.max(axis=-1, keepdims=True)
    p = np.exp(shifted)
    return p / p.sum(axis=-1, keepdims=True)
