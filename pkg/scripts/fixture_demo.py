#!/usr/bin/env python
"""Run the whole pipeline on the bundled synthetic fixtures: corpus stats,
the paper's context examples, and both ablation settings."""
from stance_context.ablation import Setting, format_table, run_ablation
from stance_context.context_kb import extract_context_features, shipped_knowledge
from stance_context.corpus import CorpusSchema, corpus_stats, read_corpus
from stance_context.lexicons import load_lexicons
from stance_context.paths import fixture_dir, fixture_lexicon_config
from stance_context.textproc import tokenize

train = read_corpus(fixture_dir() / "mini_corpus.tsv", CorpusSchema.annotated())
transfer = read_corpus(fixture_dir() / "mini_transfer.tsv", CorpusSchema.annotated())
lex = load_lexicons(fixture_lexicon_config())
hc, dt = shipped_knowledge("Hillary Clinton"), shipped_knowledge("Donald Trump")

print("fixture corpus:", corpus_stats(train))
for text in (
    "#StopHillary2016 @HillaryClinton if there was a woman with integrity",
    "suddenly #Democrats don't mind",
    "#WakeUpAmerica #Rubio2016 #Cruz2016",
):
    print(f"  {text!r:75s} -> {extract_context_features(tokenize(text), hc).as_tuple()}")

for setting in Setting:
    results = run_ablation(train, train, transfer, setting, lex, hc, dt)
    print(f"\n{setting.value}: {len(results)} subsets (resubstitution on the fixture; scores are not meaningful)")
    print(format_table(results, 5, "HC fixture", "DT fixture"))
