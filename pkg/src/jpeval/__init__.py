"""Alignment-based evaluation for outputs with mismatched segmentation.

The package aligns a system document to a gold document at the sentence
and word level, then applies the classical metrics unchanged on top of
the alignment: tokenization and sentence-boundary F1, bracket scoring
over constituency trees, and F-beta over m2 edit files.
"""

from .align import (AlignmentError, AlignmentGroup, SimilarityConfig, WordLink,
                    align_sentences, align_token_lists, align_words, length_ratio,
                    reindex, similarity)
from .gec import (Edit, GecScore, M2Entry, M2Error, merge_and_reindex, parse_m2,
                  prf_beta, score_gec, serialize_m2)
from .parseval import ParsevalSummary, SentenceRow, evaluate_parseval, format_report
from .preprocess import PRF, PreprocessCounts, evaluate_basic, evaluate_joint, prf
from .textmodel import (ConlluError, DEFAULT_EXCEPTION_LEXICON, DocumentStream,
                        LexiconError, NormalizationPolicy, SentenceRecord, Token,
                        load_exception_lexicon, normalize_token, read_conllu,
                        read_plain, sentence, serialize_plain, stripped_form)
from .tree import (Constituent, DEFAULT_LEGACY_PARAMS, DUMMY_ROOT_LABEL, LegacyParams,
                   ParseTree, TreeError, WRAPPER_LABELS, apply_legacy_filter,
                   get_constituents, merge_trees, parse_bracketed, read_legacy_params,
                   serialize_tree, strip_wrapper)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError", "AlignmentGroup", "SimilarityConfig", "WordLink",
    "align_sentences", "align_token_lists", "align_words", "length_ratio",
    "reindex", "similarity",
    "Edit", "GecScore", "M2Entry", "M2Error", "merge_and_reindex", "parse_m2",
    "prf_beta", "score_gec", "serialize_m2",
    "ParsevalSummary", "SentenceRow", "evaluate_parseval", "format_report",
    "PRF", "PreprocessCounts", "evaluate_basic", "evaluate_joint", "prf",
    "ConlluError", "DEFAULT_EXCEPTION_LEXICON", "DocumentStream", "LexiconError",
    "NormalizationPolicy", "SentenceRecord", "Token", "load_exception_lexicon",
    "normalize_token", "read_conllu", "read_plain", "sentence", "serialize_plain",
    "stripped_form",
    "Constituent", "DEFAULT_LEGACY_PARAMS", "DUMMY_ROOT_LABEL", "LegacyParams",
    "ParseTree", "TreeError", "WRAPPER_LABELS", "apply_legacy_filter",
    "get_constituents", "merge_trees", "parse_bracketed", "read_legacy_params",
    "serialize_tree", "strip_wrapper",
    "__version__",
]
