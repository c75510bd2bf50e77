"""Bracket scoring over word-aligned constituency trees.

Each aligned sentence group is scored as one unit: trees on a side are
merged under a dummy root (excluded from counting and matching), tokens
are word-aligned, and constituent spans are restated in word link
coordinates.  A span covering whole links becomes a plain (start, end)
pair of link indices, so a constituent over ``ca n't`` matches one over
``cannot``; a span ending inside a link keeps its sub-token position and
matches only an identically shaped span.  Matching is by multiset over
(label, start, end).

Legacy mode reproduces classical bracket scoring: parameter-file
filtering (punctuation removal, label deletion and equivalence) runs
first and word alignment operates on the surviving tokens.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .align import SimilarityConfig, WordLink, align_sentences, align_token_lists
from .textmodel import DocumentStream, NormalizationPolicy, sentence
from .tree import (DUMMY_ROOT_LABEL, Constituent, LegacyParams, ParseTree,
                   apply_legacy_filter, get_constituents, merge_trees, strip_wrapper)


@dataclass(frozen=True)
class SentenceRow:
    """One report row per aligned sentence group."""

    id: int
    length: int
    status: int
    recall: float
    precision: float
    matched_brackets: int
    gold_brackets: int
    test_brackets: int
    cross_brackets: int
    words: int
    correct_tags: int
    tag_accuracy: float


@dataclass(frozen=True)
class ParsevalSummary:
    c_gold: int
    c_sys: int
    c_tp: int
    precision: float
    recall: float
    f1: float
    pos_accuracy: float
    complete_match: float
    sentences: int

    def __post_init__(self):
        if self.c_tp > min(self.c_gold, self.c_sys):
            raise ValueError("matched brackets cannot exceed either side's count")


def _token_ids(links: list[WordLink], side: str) -> list:
    ids: list = []
    for k, link in enumerate(links):
        a, b = link.gold_range if side == "gold" else link.sys_range
        if b - a == 1:
            ids.append(k)
        else:
            ids.extend((k, sub) for sub in range(1, b - a + 1))
    return ids


def _span_key(ids: list, link_sizes: list[int], start: int, end: int):
    """Aligned coordinates of a token span, end exclusive.

    Whole-link coverage collapses to plain link indices; partial
    coverage keeps (link, sub-token) pairs and only matches an
    identically shaped span on the other side.
    """
    c0 = ids[start]
    if isinstance(c0, int):
        skey = c0
    else:
        skey = c0[0] if c0[1] == 1 else c0
    c1 = ids[end - 1]
    if isinstance(c1, int):
        ekey = c1 + 1
    else:
        ekey = c1[0] + 1 if c1[1] == link_sizes[c1[0]] else c1
    return skey, ekey


def _order_key(key):
    # A plain link index i sorts at (i, 0); sub-token positions inside
    # link i sort between (i, 0) and (i + 1, 0).
    return (key, 0) if isinstance(key, int) else key


def _cross_count(gold_keys, sys_keys) -> int:
    spans = [( _order_key(s), _order_key(e)) for _, s, e in gold_keys]
    crossing = 0
    for _, s, e in sys_keys:
        a, b = _order_key(s), _order_key(e)
        for c, d in spans:
            if a < c < b < d or c < a < d < b:
                crossing += 1
                break
    return crossing


def pos_accuracy(links: list[WordLink],
                 gold_leaves: list[tuple[str, str]],
                 sys_leaves: list[tuple[str, str]]) -> tuple[int, int]:
    """Correct tags over 1:1 word links; every gold token counts in the
    total, so multi-token links contribute zero correct."""
    correct = 0
    for link in links:
        a, b = link.gold_range
        c, d = link.sys_range
        if b - a == 1 and d - c == 1 and gold_leaves[a][0] == sys_leaves[c][0]:
            correct += 1
    return correct, len(gold_leaves)


def _pct(num: float, den: float) -> float:
    if den == 0:
        return 100.0
    return 100.0 * num / den


def evaluate_parseval(gold_trees: list[ParseTree], sys_trees: list[ParseTree],
                      policy: NormalizationPolicy | None = None,
                      cfg: SimilarityConfig | None = None,
                      legacy: LegacyParams | None = None,
                      dummy_label: str = DUMMY_ROOT_LABEL,
                      ) -> tuple[list[SentenceRow], ParsevalSummary]:
    """Score system trees against gold trees, tolerating boundary and
    tokenization mismatches.  Returns per-group rows and the summary."""
    gt = [strip_wrapper(t) for t in gold_trees]
    st = [strip_wrapper(t) for t in sys_trees]
    gold_stream = DocumentStream(tuple(sentence(t.leaves()) for t in gt), "gold")
    sys_stream = DocumentStream(tuple(sentence(t.leaves()) for t in st), "sys")
    groups = align_sentences(gold_stream, sys_stream, policy, cfg)

    rows: list[SentenceRow] = []
    c_gold = c_sys = c_tp = 0
    tag_correct = tag_total = 0
    complete = 0
    for idx, g in enumerate(groups):
        gmerged = merge_trees(gt[g.gold_sentences[0]:g.gold_sentences[1]], dummy_label)
        smerged = merge_trees(st[g.sys_sentences[0]:g.sys_sentences[1]], dummy_label)
        g_ignore = frozenset({dummy_label}) if g.gold_sentences[1] - g.gold_sentences[0] > 1 else frozenset()
        s_ignore = frozenset({dummy_label}) if g.sys_sentences[1] - g.sys_sentences[0] > 1 else frozenset()
        gconsts = get_constituents(gmerged, 0, g_ignore)
        sconsts = get_constituents(smerged, 0, s_ignore)
        gleaves = gmerged.pos_leaves()
        sleaves = smerged.pos_leaves()
        length = len(gleaves)
        if legacy is not None:
            gconsts, gkept = apply_legacy_filter(gconsts, gleaves, legacy)
            sconsts, skept = apply_legacy_filter(sconsts, sleaves, legacy)
            gleaves = [gleaves[k] for k in gkept]
            sleaves = [sleaves[k] for k in skept]
        links = align_token_lists([s for _, s in gleaves], [s for _, s in sleaves], policy)
        gids = _token_ids(links, "gold")
        sids = _token_ids(links, "sys")
        gsizes = [l.gold_range[1] - l.gold_range[0] for l in links]
        ssizes = [l.sys_range[1] - l.sys_range[0] for l in links]
        gkeys = [(c.label, *_span_key(gids, gsizes, c.start, c.end)) for c in gconsts]
        skeys = [(c.label, *_span_key(sids, ssizes, c.start, c.end)) for c in sconsts]
        remaining = Counter(gkeys)
        matched = 0
        for key in skeys:
            if remaining[key] > 0:
                remaining[key] -= 1
                matched += 1
        crossing = _cross_count(gkeys, skeys)
        correct, words = pos_accuracy(links, gleaves, sleaves)
        rows.append(SentenceRow(
            id=idx + 1, length=length, status=0,
            recall=_pct(matched, len(gkeys)), precision=_pct(matched, len(skeys)),
            matched_brackets=matched, gold_brackets=len(gkeys),
            test_brackets=len(skeys), cross_brackets=crossing,
            words=words, correct_tags=correct, tag_accuracy=_pct(correct, words)))
        c_gold += len(gkeys)
        c_sys += len(skeys)
        c_tp += matched
        tag_correct += correct
        tag_total += words
        if matched == len(gkeys) == len(skeys):
            complete += 1

    if not groups:
        summary = ParsevalSummary(0, 0, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0)
    else:
        p = _pct(c_tp, c_sys)
        r = _pct(c_tp, c_gold)
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        summary = ParsevalSummary(
            c_gold=c_gold, c_sys=c_sys, c_tp=c_tp,
            precision=p, recall=r, f1=f1,
            pos_accuracy=_pct(tag_correct, tag_total),
            complete_match=_pct(complete, len(groups)),
            sentences=len(groups))
    return rows, summary


_HEADER = (f"{'ID':>4} {'Len':>5} {'Stat':>5} {'Recall':>8} {'Prec':>8} "
           f"{'Matched':>8} {'Gold':>6} {'Test':>6} {'Cross':>6} "
           f"{'Words':>6} {'Tags':>6} {'TagAcc':>8}")


def format_report(rows: list[SentenceRow], summary: ParsevalSummary) -> str:
    """Fixed-width per-sentence table followed by a summary block."""
    lines = [_HEADER, "=" * len(_HEADER)]
    for r in rows:
        lines.append(
            f"{r.id:>4} {r.length:>5} {r.status:>5} {r.recall:>8.2f} "
            f"{r.precision:>8.2f} {r.matched_brackets:>8} {r.gold_brackets:>6} "
            f"{r.test_brackets:>6} {r.cross_brackets:>6} {r.words:>6} "
            f"{r.correct_tags:>6} {r.tag_accuracy:>8.2f}")
    lines.append("=" * len(_HEADER))
    lines.append(f"sentences            {summary.sentences:>10}")
    lines.append(f"gold brackets        {summary.c_gold:>10}")
    lines.append(f"test brackets        {summary.c_sys:>10}")
    lines.append(f"matched brackets     {summary.c_tp:>10}")
    lines.append(f"bracketing recall    {summary.recall:>10.2f}")
    lines.append(f"bracketing precision {summary.precision:>10.2f}")
    lines.append(f"bracketing f1        {summary.f1:>10.2f}")
    lines.append(f"pos tag accuracy     {summary.pos_accuracy:>10.2f}")
    lines.append(f"complete match       {summary.complete_match:>10.2f}")
    return "\n".join(lines) + "\n"
