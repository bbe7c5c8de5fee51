import io

import pytest

from stance_context.ablation import (
    Setting,
    all_subsets,
    evaluate_groups,
    format_table,
    results_to_json,
    run_ablation,
    write_table_tsv,
)
from stance_context.corpus import StanceLabel, TweetRecord
from stance_context.errors import ConfigurationError
from stance_context.features import FeatureGroup as G


@pytest.fixture(scope="module")
def exp1(mini_corpus, mini_transfer, lexicons, clinton_kb, trump_kb):
    return run_ablation(mini_corpus, mini_corpus, mini_transfer, Setting.EXPERIMENT1,
                        lexicons, clinton_kb, trump_kb)


def test_subset_counts():
    assert len(all_subsets(Setting.EXPERIMENT1.candidate_groups)) == 255
    assert len(all_subsets(Setting.EXPERIMENT2.candidate_groups)) == 511


def test_experiment1_exhaustive(exp1):
    assert len(exp1) == 255
    assert len({r.groups for r in exp1}) == 255
    assert all(G.LABELED_BASED not in r.groups for r in exp1)
    assert all(r.report_transfer is not None for r in exp1)


def test_ranking_order(exp1):
    keys = [r.sort_key() for r in exp1]
    assert keys == sorted(keys)
    f = [r.report_primary.f_avg for r in exp1]
    assert f == sorted(f, reverse=True)


def test_best_at_least_every_singleton(exp1):
    singles = [r for r in exp1 if len(r.groups) == 1]
    assert len(singles) == 8
    assert exp1[0].report_primary.f_avg >= max(r.report_primary.f_avg for r in singles)


def test_deterministic_and_parallel_equal(mini_corpus, lexicons, clinton_kb):
    a = run_ablation(mini_corpus, mini_corpus, None, "experiment2", lexicons, clinton_kb)
    b = run_ablation(mini_corpus, mini_corpus, None, "experiment2", lexicons, clinton_kb, jobs=4)
    assert len(a) == 511
    assert results_to_json(a) == results_to_json(b)


def test_experiment2_needs_annotations(lexicons, clinton_kb):
    plain = [TweetRecord(str(i), "Hillary Clinton", "x", label)
             for i, label in enumerate([StanceLabel.AGAINST, StanceLabel.FAVOR] * 2)]
    with pytest.raises(ConfigurationError):
        run_ablation(plain, plain, None, "experiment2", lexicons, clinton_kb)


def test_groups_must_fit_setting(mini_corpus, lexicons, clinton_kb):
    with pytest.raises(ConfigurationError):
        run_ablation(mini_corpus, mini_corpus, None, "experiment1", lexicons, clinton_kb,
                     groups=[G.LABELED_BASED])
    small = run_ablation(mini_corpus, mini_corpus, None, "experiment1", lexicons, clinton_kb,
                         groups=[G.AFINN, G.HL, G.MENTION])
    assert len(small) == 7


def test_transfer_uses_transfer_kb(mini_corpus, mini_transfer, lexicons, clinton_kb, trump_kb, exp1):
    # The transfer column equals a direct fit-on-train, score-on-transfer run with the transfer KB.
    for r in exp1[:5]:
        direct = evaluate_groups(mini_corpus, mini_transfer, r.groups, lexicons, clinton_kb, trump_kb)
        assert direct.f_avg == r.report_transfer.f_avg


def test_transfer_kb_required(mini_corpus, mini_transfer, lexicons, clinton_kb):
    with pytest.raises(ConfigurationError):
        run_ablation(mini_corpus, mini_corpus, mini_transfer, "experiment1", lexicons, clinton_kb)


def test_table_outputs(exp1):
    buf = io.StringIO()
    write_table_tsv(buf, exp1, "HC", "DT")
    lines = buf.getvalue().splitlines()
    assert len(lines) == 256
    assert lines[0].split("\t") == ["rank", "groups", "HC_F_avg", "HC_F_against", "HC_F_favor",
                                    "DT_F_avg", "DT_F_against", "DT_F_favor"]
    text = format_table(exp1, 3, "HC", "DT")
    assert len(text.splitlines()) == 5
