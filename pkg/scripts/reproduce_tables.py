#!/usr/bin/env python
"""Rebuild the stance-distribution and feature-set result tables from the
official SemEval-2016 Task 6 files and print them next to the published
numbers.

    python scripts/reproduce_tables.py \
        --hc-train trainingdata.txt --hc-test testdata.txt --dt-test testdata.txt \
        --lexicon-dir ~/lexica [--ablate] [--jobs 4]

Corpus files may hold every target; rows are filtered by target. Pass the
stance+sentiment release to get the labeled-based rows.
"""
import argparse
import logging
import time

from stance_context.ablation import Setting, evaluate_groups, format_table, run_ablation
from stance_context.context_kb import shipped_knowledge
from stance_context.corpus import corpus_path_schema, corpus_stats, read_corpus
from stance_context.features import FeatureGroup, parse_groups
from stance_context.lexicons import load_lexicons
from stance_context.paths import scan_lexicon_dir

PUBLISHED_DISTRIBUTION = {
    "HC train": (689, 57.1, 17.1, 25.8),
    "HC test": (295, 58.3, 15.3, 26.4),
    "DT test": (707, 42.3, 20.9, 36.8),
}

# feature set -> published (HC F_avg, DT F_avg); None where not reported
PUBLISHED_SETS = [
    ("experiment1", "mention punct_marks AFINN LIWC HL context_based", 63.75, 53.46),
    ("experiment1", "punct_marks AFINN LIWC HL context_based", 62.70, 52.76),
    ("experiment1", "hashtag punct_marks AFINN LIWC HL DAL context_based", 62.3, 50.44),
    ("experiment2", "hashtag mention context_based labeled_based", 71.21, 69.59),
    ("experiment2", "hashtag context_based labeled_based", 71.02, 70.40),
    ("experiment2", "hashtag mention LIWC context_based labeled_based", 70.98, 70.20),
    ("experiment2", "LIWC HL context_based labeled_based", None, 74.49),
    ("experiment1", "mention punct_marks HL context_based", None, 55.51),
]


def load(path, target, encoding):
    return read_corpus(path, corpus_path_schema(path, target=target, encoding=encoding), encoding=encoding)


def fmt(x):
    return "   -  " if x is None else f"{x:6.2f}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--hc-train", required=True)
    ap.add_argument("--hc-test", required=True)
    ap.add_argument("--dt-test", required=True)
    ap.add_argument("--lexicon-dir", required=True)
    ap.add_argument("--encoding", default="utf-8")
    ap.add_argument("--ablate", action="store_true", help="also run the exhaustive ablations")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.WARNING)

    hc_train = load(args.hc_train, "Hillary Clinton", args.encoding)
    hc_test = load(args.hc_test, "Hillary Clinton", args.encoding)
    dt_test = load(args.dt_test, "Donald Trump", args.encoding)
    lex = load_lexicons(scan_lexicon_dir(args.lexicon_dir))
    hc_kb, dt_kb = shipped_knowledge("Hillary Clinton"), shipped_knowledge("Donald Trump")
    annotated = all(r.has_annotations for r in hc_train + hc_test + dt_test)

    print("Stance distribution (ours | published)")
    for name, records in (("HC train", hc_train), ("HC test", hc_test), ("DT test", dt_test)):
        s = corpus_stats(records)
        pub = PUBLISHED_DISTRIBUTION[name]
        print(f"  {name:9s} {s.total:4d} {s.pct_against:5.1f} {s.pct_favor:5.1f} {s.pct_none:5.1f}"
              f"  |  {pub[0]:4d} {pub[1]:5.1f} {pub[2]:5.1f} {pub[3]:5.1f}")

    print("\nFeature sets, trained on HC train (F_avg ours / published)")
    print(f"  {'setting':12s} {'feature set':52s} {'HC':>15s} {'DT':>15s}")
    for setting, groups, pub_hc, pub_dt in PUBLISHED_SETS:
        gs = parse_groups(groups.split())
        if FeatureGroup.LABELED_BASED in gs and not annotated:
            print(f"  {setting:12s} {groups:52s} (needs annotated corpora)")
            continue
        hc = evaluate_groups(hc_train, hc_test, gs, lex, hc_kb, hc_kb)
        dt = evaluate_groups(hc_train, dt_test, gs, lex, hc_kb, dt_kb)
        print(f"  {setting:12s} {groups:52s} {hc.f_avg:6.2f}/{fmt(pub_hc)}  {dt.f_avg:6.2f}/{fmt(pub_dt)}")

    if args.ablate:
        for setting in Setting:
            if setting is Setting.EXPERIMENT2 and not annotated:
                continue
            started = time.perf_counter()
            results = run_ablation(hc_train, hc_test, dt_test, setting, lex, hc_kb, dt_kb, jobs=args.jobs)
            print(f"\n{setting.value}: {len(results)} subsets in {time.perf_counter() - started:.1f}s, top 5")
            print(format_table(results, 5, "Hillary Clinton", "Donald Trump"))


if __name__ == "__main__":
    main()
