"""Stance evaluation: per-class P/R/F1 and F_avg, the mean of the AGAINST and
FAVOR F1 scores. NONE affects F_avg only through misclassifications."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from stance_context.corpus import StanceLabel
from stance_context.errors import StanceError

LABELS = tuple(StanceLabel)


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalReport:
    confusion: np.ndarray  # gold x predicted, canonical label order
    per_class: dict
    f_against: float
    f_favor: float
    f_avg: float

    @property
    def total(self) -> int:
        return int(self.confusion.sum())

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "labels": [l.value for l in LABELS],
            "confusion": self.confusion.tolist(),
            "per_class": {
                l.value: {"precision": s.precision, "recall": s.recall, "f1": s.f1}
                for l, s in self.per_class.items()
            },
            "f_avg": self.f_avg,
            "f_against": self.f_against,
            "f_favor": self.f_favor,
        }

    def format(self) -> str:
        lines = [f"F_avg {self.f_avg:6.2f}   F_against {self.f_against:6.2f}   F_favor {self.f_favor:6.2f}", ""]
        lines.append(f"{'':10s}{'precision':>11s}{'recall':>9s}{'F1':>9s}")
        for label, s in self.per_class.items():
            lines.append(f"{label.value:10s}{s.precision:11.2f}{s.recall:9.2f}{s.f1:9.2f}")
        lines.append("")
        lines.append("gold \\ pred " + "".join(f"{l.value:>9s}" for l in LABELS))
        for label, row in zip(LABELS, self.confusion):
            lines.append(f"{label.value:12s}" + "".join(f"{int(v):9d}" for v in row))
        return "\n".join(lines)


def evaluate(predictions: Sequence[StanceLabel], gold: Sequence[StanceLabel]) -> EvalReport:
    if len(predictions) != len(gold):
        raise StanceError(f"{len(predictions)} predictions for {len(gold)} gold labels")
    if not gold:
        raise StanceError("nothing to evaluate")
    index = {l: i for i, l in enumerate(LABELS)}
    confusion = np.zeros((3, 3), dtype=np.int64)
    for p, g in zip(predictions, gold):
        confusion[index[StanceLabel(g)], index[StanceLabel(p)]] += 1

    per_class = {}
    for label, i in index.items():
        tp = int(confusion[i, i])
        n_pred = int(confusion[:, i].sum())
        n_gold = int(confusion[i, :].sum())
        # Single integer-ratio divisions: each score is the correctly rounded
        # value of its exact rational.
        precision = 100 * tp / n_pred if n_pred else 0.0
        recall = 100 * tp / n_gold if n_gold else 0.0
        f1 = 200 * tp / (n_pred + n_gold) if tp else 0.0
        per_class[label] = ClassScores(precision, recall, f1)
    f_against = per_class[StanceLabel.AGAINST].f1
    f_favor = per_class[StanceLabel.FAVOR].f1
    return EvalReport(confusion, per_class, f_against, f_favor, (f_against + f_favor) / 2)
