"""Stance detection for political tweets with lexicon, structural and
friend/enemy context features, classified with Gaussian Naive Bayes."""

from stance_context.corpus import (
    CorpusSchema,
    DistributionReport,
    OpinionTowards,
    Sentiment,
    StanceLabel,
    TweetRecord,
    corpus_stats,
    parse_corpus,
    read_corpus,
)
from stance_context.textproc import Token, TokenKind, tokenize
from stance_context.lexicons import LexiconSet, load_lexicons
from stance_context.context_kb import (
    ContextFeatures,
    TargetKnowledge,
    TargetSpec,
    build_knowledge,
    extract_context_features,
    load_knowledge,
)
from stance_context.features import FeatureGroup, FeatureVector, assemble_vector
from stance_context.gnb import GnbModel, fit, predict
from stance_context.metrics import EvalReport, evaluate
from stance_context.ablation import AblationResult, run_ablation

__version__ = "0.1.0"
