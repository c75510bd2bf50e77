"""Tokenization and sentence boundary scoring over aligned documents.

Counting happens inside alignment groups, so a single boundary error no
longer poisons every token downstream of it: tokens are credited
wherever the aligned block pairs them up, and a sentence pair is
credited only when it aligned one to one with equal stripped forms.

Two counting routines are provided.  evaluate_joint interleaves
sentence and token credit in one pass with a fast path for identically
tokenized groups; evaluate_basic recounts from scratch in two separate
passes.  They are required to agree on every input and serve as each
other's oracle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .align import SimilarityConfig, align_sentences, align_token_lists
from .textmodel import DocumentStream, NormalizationPolicy, normalize_token


@dataclass(frozen=True)
class PreprocessCounts:
    """Sentence and token counts for one gold/system document pair."""

    c_sb_gold: int
    c_sb_sys: int
    c_tk_gold: int
    c_tk_sys: int
    tp_sb: int
    tp_tk: int

    def __post_init__(self):
        counts = (self.c_sb_gold, self.c_sb_sys, self.c_tk_gold,
                  self.c_tk_sys, self.tp_sb, self.tp_tk)
        if any(c < 0 for c in counts):
            raise ValueError("counts must be non-negative")
        if self.tp_sb > min(self.c_sb_gold, self.c_sb_sys):
            raise ValueError("tp_sb cannot exceed either sentence count")
        if self.tp_tk > min(self.c_tk_gold, self.c_tk_sys):
            raise ValueError("tp_tk cannot exceed either token count")


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float


def prf(tp: int, retrieved: int, relevant: int) -> PRF:
    """Precision, recall, F1 with the 0/0 convention of 1.0.

    retrieved is the system count, relevant the gold count.
    """
    if tp < 0 or retrieved < 0 or relevant < 0:
        raise ValueError("counts must be non-negative")
    if tp > retrieved or tp > relevant:
        raise ValueError("tp cannot exceed retrieved or relevant")
    p = tp / retrieved if retrieved else 1.0
    r = tp / relevant if relevant else 1.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return PRF(p, r, f1)


def _link_overlap(gold_norm, sys_norm, link) -> int:
    a, b = link.gold_range
    c, d = link.sys_range
    if b - a == 1 and d - c == 1:
        return int(gold_norm[a] == sys_norm[c])
    got = Counter(gold_norm[a:b]) & Counter(sys_norm[c:d])
    return sum(got.values())


def evaluate_joint(gold: DocumentStream, sys: DocumentStream,
                   policy: NormalizationPolicy | None = None,
                   cfg: SimilarityConfig | None = None) -> PreprocessCounts:
    """Single-pass counting: sentence and token credit per aligned group.

    A group earns sentence credit when it is 1:1 with equal stripped
    forms.  Token credit inside a group counts pairs of equal normalized
    tokens joined by the same word link (identically tokenized groups
    short-circuit to their full length).
    """
    groups = align_sentences(gold, sys, policy, cfg)
    tp_sb = 0
    tp_tk = 0
    for g in groups:
        if g.is_one_to_one and g.gold_stripped == g.sys_stripped:
            tp_sb += 1
        gold_norm = [normalize_token(t, policy) for t in g.merged_gold_tokens]
        sys_norm = [normalize_token(t, policy) for t in g.merged_sys_tokens]
        if gold_norm == sys_norm:
            tp_tk += len(gold_norm)
        else:
            for link in align_token_lists(g.merged_gold_tokens, g.merged_sys_tokens, policy):
                tp_tk += _link_overlap(gold_norm, sys_norm, link)
    return PreprocessCounts(
        c_sb_gold=len(gold.sentences), c_sb_sys=len(sys.sentences),
        c_tk_gold=gold.token_count, c_tk_sys=sys.token_count,
        tp_sb=tp_sb, tp_tk=tp_tk)


def evaluate_basic(gold: DocumentStream, sys: DocumentStream,
                   policy: NormalizationPolicy | None = None,
                   cfg: SimilarityConfig | None = None) -> PreprocessCounts:
    """Two-pass counting; must agree with evaluate_joint on every input."""
    groups = align_sentences(gold, sys, policy, cfg)
    tp_sb = sum(1 for g in groups
                if g.is_one_to_one and g.gold_stripped == g.sys_stripped)
    tp_tk = 0
    for g in groups:
        gold_norm = [normalize_token(t, policy) for t in g.merged_gold_tokens]
        sys_norm = [normalize_token(t, policy) for t in g.merged_sys_tokens]
        for link in align_token_lists(g.merged_gold_tokens, g.merged_sys_tokens, policy):
            a, b = link.gold_range
            c, d = link.sys_range
            overlap = Counter(gold_norm[a:b]) & Counter(sys_norm[c:d])
            tp_tk += sum(overlap.values())
    return PreprocessCounts(
        c_sb_gold=len(gold.sentences), c_sb_sys=len(sys.sentences),
        c_tk_gold=gold.token_count, c_tk_sys=sys.token_count,
        tp_sb=tp_sb, tp_tk=tp_tk)
