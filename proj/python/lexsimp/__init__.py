"""Ontology-driven lexical simplification."""

from ._core import (
    EvalCounts,
    Error,
    FrequencyTable,
    LmScorer,
    NgramModel,
    ParseError,
    PhraseTable,
    SimplificationResult,
    SimplifierConfig,
    TermScorer,
    bleu,
    default_alpha_grid,
    sari,
    sg_significance,
    simplification_gain,
    simplify,
    simplify_batch,
    tokenize,
    trace_json,
)

__all__ = [
    "EvalCounts",
    "Error",
    "FrequencyTable",
    "LmScorer",
    "NgramModel",
    "ParseError",
    "PhraseTable",
    "SimplificationResult",
    "SimplifierConfig",
    "TermScorer",
    "bleu",
    "default_alpha_grid",
    "sari",
    "sg_significance",
    "simplification_gain",
    "simplify",
    "simplify_batch",
    "tokenize",
    "trace_json",
]
