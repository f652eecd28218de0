"""Lemma-heuristic event coreference: filtering, clustering and scoring."""

from ._core import (
    Corpus,
    LemmacorefError,
    SynPairSet,
    all_pairs,
    categorize_pairs,
    classify_pairs,
    connected_components,
    decide,
    default_stop_lemmas,
    evaluate,
    extract_syn_pairs,
    generate_candidates,
    load_corpus,
    run_pipeline,
    sentence_overlap,
    symmetric_score,
    trigger_match,
)

__all__ = [
    "Corpus",
    "LemmacorefError",
    "SynPairSet",
    "all_pairs",
    "categorize_pairs",
    "classify_pairs",
    "connected_components",
    "decide",
    "default_stop_lemmas",
    "evaluate",
    "extract_syn_pairs",
    "generate_candidates",
    "load_corpus",
    "run_pipeline",
    "sentence_overlap",
    "symmetric_score",
    "trigger_match",
]
