"""Exhaustive feature-group ablation.

Full feature matrices are extracted once per corpus; each subset is evaluated
by slicing their columns, fitting on train and scoring the primary test set
(and, optionally, a transfer test set whose features were extracted with the
transfer target's knowledge base).
"""
from __future__ import annotations

import csv
import enum
import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from stance_context.context_kb import TargetKnowledge
from stance_context.corpus import TweetRecord
from stance_context.errors import ConfigurationError
from stance_context.features import (
    CANONICAL_ORDER,
    EXPERIMENT1_GROUPS,
    EXPERIMENT2_GROUPS,
    FeatureGroup,
    canonical,
    feature_matrix,
)
from stance_context.gnb import DEFAULT_VAR_SMOOTHING, fit_matrix
from stance_context.lexicons import LexiconSet
from stance_context.metrics import EvalReport, evaluate


class Setting(enum.Enum):
    EXPERIMENT1 = "experiment1"
    EXPERIMENT2 = "experiment2"

    @property
    def candidate_groups(self) -> tuple[FeatureGroup, ...]:
        return EXPERIMENT1_GROUPS if self is Setting.EXPERIMENT1 else EXPERIMENT2_GROUPS


@dataclass(frozen=True)
class AblationResult:
    groups: tuple[FeatureGroup, ...]
    report_primary: EvalReport
    report_transfer: EvalReport | None = None

    def __post_init__(self):
        if not self.groups:
            raise ValueError("an ablation result needs at least one feature group")

    @property
    def label(self) -> str:
        return " ".join(g.label for g in self.groups)

    def sort_key(self):
        return (
            -self.report_primary.f_avg,
            len(self.groups),
            tuple(CANONICAL_ORDER.index(g) for g in self.groups),
        )


def all_subsets(groups: Sequence[FeatureGroup]) -> list[tuple[FeatureGroup, ...]]:
    groups = canonical(groups)
    return [c for k in range(1, len(groups) + 1) for c in itertools.combinations(groups, k)]


class _Matrices:
    def __init__(self, schema, X):
        self.X = X
        self.schema = schema
        self.columns = {g: [i for i, (sg, _) in enumerate(schema) if sg is g] for g in CANONICAL_ORDER}

    def select(self, groups):
        cols = [i for g in groups for i in self.columns[g]]
        return self.X[:, cols]

    def schema_of(self, groups):
        return tuple(self.schema[i] for g in groups for i in self.columns[g])


def run_ablation(
    train: Sequence[TweetRecord],
    test_primary: Sequence[TweetRecord],
    test_transfer: Sequence[TweetRecord] | None = None,
    setting: Setting | str = Setting.EXPERIMENT1,
    lexicons: LexiconSet | None = None,
    kb: TargetKnowledge | None = None,
    transfer_kb: TargetKnowledge | None = None,
    groups: Iterable[FeatureGroup] | None = None,
    jobs: int = 1,
    var_smoothing: float = DEFAULT_VAR_SMOOTHING,
) -> list[AblationResult]:
    """Evaluate every non-empty subset of the setting's candidate groups.

    ``groups`` narrows the candidates (it must stay inside the setting).
    Results are ranked by descending primary F_avg, then fewer groups, then
    canonical group order.
    """
    setting = Setting(setting)
    candidates = setting.candidate_groups if groups is None else canonical(groups)
    if not set(candidates) <= set(setting.candidate_groups):
        raise ConfigurationError("labeled_based features require the experiment2 setting")
    if not candidates:
        raise ConfigurationError("no candidate feature groups")
    if test_transfer is not None and transfer_kb is None and FeatureGroup.CONTEXT_BASED in candidates:
        raise ConfigurationError("transfer evaluation needs the transfer target's knowledge base")

    labels = [r.stance for r in train]
    train_m = _Matrices(*feature_matrix(train, candidates, lexicons, kb))
    primary_m = _Matrices(*feature_matrix(test_primary, candidates, lexicons, kb))
    gold_primary = [r.stance for r in test_primary]
    transfer_m = gold_transfer = None
    if test_transfer is not None:
        transfer_m = _Matrices(*feature_matrix(test_transfer, candidates, lexicons, transfer_kb))
        gold_transfer = [r.stance for r in test_transfer]

    def run(subset):
        model = fit_matrix(train_m.select(subset), labels, train_m.schema_of(subset), var_smoothing)
        primary = evaluate(model.predict_matrix(primary_m.select(subset)), gold_primary)
        transfer = None
        if transfer_m is not None:
            transfer = evaluate(model.predict_matrix(transfer_m.select(subset)), gold_transfer)
        return AblationResult(subset, primary, transfer)

    subsets = all_subsets(candidates)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, subsets))
    else:
        results = [run(s) for s in subsets]
    return sorted(results, key=AblationResult.sort_key)


def evaluate_groups(
    train: Sequence[TweetRecord],
    test: Sequence[TweetRecord],
    groups: Iterable[FeatureGroup],
    lexicons: LexiconSet | None = None,
    train_kb: TargetKnowledge | None = None,
    test_kb: TargetKnowledge | None = None,
    var_smoothing: float = DEFAULT_VAR_SMOOTHING,
) -> EvalReport:
    """Fit on ``train`` with one feature-group set and score ``test``."""
    groups = canonical(groups)
    schema, X = feature_matrix(train, groups, lexicons, train_kb)
    model = fit_matrix(X, [r.stance for r in train], schema, var_smoothing)
    _, X_test = feature_matrix(test, groups, lexicons, test_kb if test_kb is not None else train_kb)
    return evaluate(model.predict_matrix(X_test), [r.stance for r in test])


COLUMNS = ("F_avg", "F_against", "F_favor")


def _scores(report: EvalReport | None):
    if report is None:
        return ["", "", ""]
    return [f"{report.f_avg:.2f}", f"{report.f_against:.2f}", f"{report.f_favor:.2f}"]


def write_table_tsv(sink, results: Sequence[AblationResult], primary_name="primary", transfer_name="transfer") -> None:
    has_transfer = any(r.report_transfer is not None for r in results)
    header = ["rank", "groups", *(f"{primary_name}_{c}" for c in COLUMNS)]
    if has_transfer:
        header += [f"{transfer_name}_{c}" for c in COLUMNS]
    writer = csv.writer(sink, delimiter="\t", lineterminator="\n")
    writer.writerow(header)
    for rank, r in enumerate(results, start=1):
        row = [rank, r.label, *_scores(r.report_primary)]
        if has_transfer:
            row += _scores(r.report_transfer)
        writer.writerow(row)


def results_to_json(results: Sequence[AblationResult]) -> str:
    payload = [
        {
            "groups": [g.value for g in r.groups],
            "primary": r.report_primary.to_dict(),
            "transfer": r.report_transfer.to_dict() if r.report_transfer else None,
        }
        for r in results
    ]
    return json.dumps(payload, indent=1) + "\n"


def format_table(results: Sequence[AblationResult], limit: int | None = None,
                 primary_name="primary", transfer_name="transfer") -> str:
    shown = list(results)[:limit] if limit else list(results)
    width = max([len("groups")] + [len(r.label) for r in shown])
    has_transfer = any(r.report_transfer is not None for r in shown)
    head = f"{'groups':<{width}}  " + "".join(f"{c:>10s}" for c in COLUMNS)
    if has_transfer:
        head += "  |" + "".join(f"{c:>10s}" for c in COLUMNS)
    lines = [f"{'':<{width}}  {primary_name:>30s}" + (f"  |{transfer_name:>30s}" if has_transfer else ""), head]
    for r in shown:
        line = f"{r.label:<{width}}  " + "".join(f"{s:>10s}" for s in _scores(r.report_primary))
        if has_transfer:
            line += "  |" + "".join(f"{s:>10s}" for s in _scores(r.report_transfer))
        lines.append(line)
    return "\n".join(lines)
