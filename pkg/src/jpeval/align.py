"""Monotone monolingual alignment of sentences and of words.

Gold and system outputs of the same text differ only in where sentence
boundaries fall and how tokens were segmented.  Sentence alignment walks
both documents left to right comparing separator-stripped forms: exactly
equal pairs link 1:1, and on a mismatch the side whose accumulated
stripped text is shorter consumes its next sentence until both sides
agree again.  Because both accumulations read the same character stream
from the same offset, one side is always a prefix of the other, so the
walk converges whenever the documents really are the same text.

A near-match escape hatch handles outputs whose characters genuinely
differ a little (morphological analysis inserting or deleting material):
a pair whose similarity clears a threshold is linked 1:1 provided the
following pair also matches exactly or nearly.  Word alignment then
links tokens inside each sentence group with the same accumulate-on-
mismatch scheme, driven by remaining character length.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .textmodel import DocumentStream, NormalizationPolicy, normalize_token, stripped_form


class AlignmentError(Exception):
    """The two documents cannot be aligned (they are not the same text)."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class SimilarityConfig:
    """Parameters of the near-match test used by sentence alignment.

    threshold_alpha is the minimum similarity for a near match; setting
    it to 1.0 disables near matching entirely (exact matches only).
    With use_length_ratio the cheap length-based dissimilarity replaces
    the character similarity: strings near-match when their length
    ratio dissimilarity stays below 1 - threshold_alpha.
    """

    threshold_alpha: float = 0.9
    prefix_suffix_scale_p: float = 0.1
    max_affix_len: int = 4
    use_length_ratio: bool = False

    def __post_init__(self):
        if not 0.0 <= self.threshold_alpha <= 1.0:
            raise ValueError("threshold_alpha must lie in [0, 1]")
        if self.max_affix_len < 0:
            raise ValueError("max_affix_len must be non-negative")
        if not 0.0 <= self.prefix_suffix_scale_p * self.max_affix_len <= 0.5:
            raise ValueError("prefix_suffix_scale_p * max_affix_len must lie in [0, 0.5]")


@dataclass(frozen=True)
class WordLink:
    """One aligned block of tokens: half-open index ranges on each side."""

    gold_range: tuple[int, int]
    sys_range: tuple[int, int]

    def __post_init__(self):
        for a, b in (self.gold_range, self.sys_range):
            if not 0 <= a < b:
                raise ValueError("word link ranges must be non-empty and ordered")


@dataclass(frozen=True)
class AlignmentGroup:
    """A maximal aligned block of sentences, with merged token views.

    Sentence ranges are half-open indices into the source streams.  The
    merged token tuples concatenate the member sentences' surfaces.
    word_links and the token id tuples are filled in by align_words and
    reindex respectively.
    """

    gold_sentences: tuple[int, int]
    sys_sentences: tuple[int, int]
    merged_gold_tokens: tuple[str, ...]
    merged_sys_tokens: tuple[str, ...]
    gold_stripped: str
    sys_stripped: str
    word_links: tuple[WordLink, ...] = ()
    gold_token_ids: tuple = ()
    sys_token_ids: tuple = ()

    @property
    def is_one_to_one(self) -> bool:
        return (self.gold_sentences[1] - self.gold_sentences[0] == 1
                and self.sys_sentences[1] - self.sys_sentences[0] == 1)


def _jaro(s1: str, s2: str) -> float:
    if s1 == s2:
        return 1.0
    window = max(max(len(s1), len(s2)) // 2 - 1, 0)
    used = [False] * len(s2)
    matched1: list[str] = []
    matched2_at: list[int] = []
    for i, ch in enumerate(s1):
        lo = max(0, i - window)
        hi = min(len(s2), i + window + 1)
        for j in range(lo, hi):
            if not used[j] and s2[j] == ch:
                used[j] = True
                matched1.append(ch)
                matched2_at.append(j)
                break
    m = len(matched1)
    if m == 0:
        return 0.0
    matched2 = [s2[j] for j in sorted(matched2_at)]
    t = sum(a != b for a, b in zip(matched1, matched2)) / 2.0
    return (m / len(s1) + m / len(s2) + (m - t) / m) / 3.0


def _affix_lengths(s1: str, s2: str, cap: int) -> tuple[int, int]:
    pre = 0
    while pre < cap and pre < len(s1) and pre < len(s2) and s1[pre] == s2[pre]:
        pre += 1
    suf = 0
    while suf < cap and suf < len(s1) and suf < len(s2) and s1[-1 - suf] == s2[-1 - suf]:
        suf += 1
    return pre, suf


def similarity(s1: str, s2: str, cfg: SimilarityConfig | None = None) -> float:
    """Jaro similarity with a symmetric prefix and suffix boost.

    The boost adds ((l*p + l'*p) / 2) * (1 - jaro) where l and l' are
    the common prefix and suffix lengths, each capped at max_affix_len.
    The result stays in [0, 1] and equals 1 exactly for equal strings.
    """
    if cfg is None:
        cfg = SimilarityConfig()
    if not s1 or not s2:
        raise ValueError("similarity is undefined for empty strings")
    sim = _jaro(s1, s2)
    pre, suf = _affix_lengths(s1, s2, cfg.max_affix_len)
    p = cfg.prefix_suffix_scale_p
    return min(1.0, sim + ((pre * p + suf * p) / 2.0) * (1.0 - sim))


def length_ratio(s1: str, s2: str) -> float:
    """Length-based dissimilarity: 2*|len1 - len2| / (len1 + len2)."""
    total = len(s1) + len(s2)
    if total == 0:
        raise ValueError("length_ratio is undefined for two empty strings")
    return 2.0 * abs(len(s1) - len(s2)) / total


def _near_match(a: str, b: str, cfg: SimilarityConfig) -> bool:
    if cfg.use_length_ratio:
        return length_ratio(a, b) < (1.0 - cfg.threshold_alpha)
    return similarity(a, b, cfg) >= cfg.threshold_alpha


def _lookahead_ok(gs, ss, i, j, cfg) -> bool:
    # A near match needs the following pair to agree as well; at the very
    # end of both documents there is no following pair to consult.
    if i >= len(gs) and j >= len(ss):
        return True
    if i >= len(gs) or j >= len(ss):
        return False
    return gs[i] == ss[j] or _near_match(gs[i], ss[j], cfg)


def _divergence(gs, ss) -> AlignmentError:
    g = "".join(gs)
    s = "".join(ss)
    limit = min(len(g), len(s))
    offset = limit
    for k in range(limit):
        if g[k] != s[k]:
            offset = k
            break
    return AlignmentError(
        "documents do not contain the same text: stripped forms diverge "
        f"at character offset {offset}", offset)


def align_sentences(gold: DocumentStream, sys: DocumentStream,
                    policy: NormalizationPolicy | None = None,
                    cfg: SimilarityConfig | None = None) -> list[AlignmentGroup]:
    """Partition both documents into monotone aligned sentence groups.

    Every sentence on each side lands in exactly one group.  A group is
    1:1 when the pair matched exactly (or nearly, with the lookahead
    check); otherwise sentences accumulate on the side whose accumulated
    stripped text is shorter until both sides agree, ties consuming the
    system side.  Raises AlignmentError, reporting the first divergent
    character offset, when no exact re-convergence exists.
    """
    if policy is None:
        policy = NormalizationPolicy()
    if cfg is None:
        cfg = SimilarityConfig()
    gs = [stripped_form(s, policy) for s in gold.sentences]
    ss = [stripped_form(s, policy) for s in sys.sentences]
    allow_near = cfg.threshold_alpha < 1.0

    groups: list[AlignmentGroup] = []

    def emit(i0, i1, j0, j1):
        groups.append(AlignmentGroup(
            gold_sentences=(i0, i1),
            sys_sentences=(j0, j1),
            merged_gold_tokens=tuple(t for s in gold.sentences[i0:i1] for t in s.surfaces),
            merged_sys_tokens=tuple(t for s in sys.sentences[j0:j1] for t in s.surfaces),
            gold_stripped="".join(gs[i0:i1]),
            sys_stripped="".join(ss[j0:j1]),
        ))

    i = j = 0
    while i < len(gs) and j < len(ss):
        if gs[i] == ss[j]:
            emit(i, i + 1, j, j + 1)
            i += 1
            j += 1
            continue
        if allow_near and _near_match(gs[i], ss[j], cfg) and _lookahead_ok(gs, ss, i + 1, j + 1, cfg):
            emit(i, i + 1, j, j + 1)
            i += 1
            j += 1
            continue
        i0, j0 = i, j
        glen, slen = len(gs[i]), len(ss[j])
        i += 1
        j += 1
        # When both documents carry the same characters, the shorter
        # accumulation is a strict prefix of the longer one, so growing
        # the shorter side must eventually reach equality.
        while not (glen == slen and "".join(gs[i0:i]) == "".join(ss[j0:j])):
            if glen < slen:
                if i == len(gs):
                    raise _divergence(gs, ss)
                glen += len(gs[i])
                i += 1
            else:
                if j == len(ss):
                    raise _divergence(gs, ss)
                slen += len(ss[j])
                j += 1
        emit(i0, i, j0, j)
    if i < len(gs) or j < len(ss):
        raise _divergence(gs, ss)
    return groups


def _suffix_chars(tokens: list[str]) -> list[int]:
    rem = [0] * (len(tokens) + 1)
    for k in range(len(tokens) - 1, -1, -1):
        rem[k] = rem[k + 1] + len(tokens[k])
    return rem


def align_token_lists(gold_tokens, sys_tokens,
                      policy: NormalizationPolicy | None = None) -> list[WordLink]:
    """Align two token lists of the same underlying text into word links.

    Equal normalized surfaces link 1:1.  On a mismatch the side with
    more remaining characters consumes tokens until the next pair
    matches or a side runs out; the final link absorbs any trailing
    tokens.  Links tile both lists: every token is covered exactly once.
    """
    ln = [normalize_token(t, policy) for t in gold_tokens]
    rn = [normalize_token(t, policy) for t in sys_tokens]
    m, n = len(ln), len(rn)
    if m == 0 and n == 0:
        return []
    if m == 0 or n == 0:
        raise AlignmentError("cannot align words: one side has no tokens")
    lrem = _suffix_chars(ln)
    rrem = _suffix_chars(rn)
    links: list[WordLink] = []
    i = j = 0
    while i < m and j < n:
        if ln[i] == rn[j]:
            links.append(WordLink((i, i + 1), (j, j + 1)))
            i += 1
            j += 1
            continue
        gi, gj = i, j
        i += 1
        j += 1
        while True:
            if i < m and j < n:
                if ln[i] == rn[j]:
                    break
                if lrem[i] > rrem[j]:
                    i += 1
                else:
                    j += 1
            elif i < m:
                i += 1
            elif j < n:
                j += 1
            else:
                break
        links.append(WordLink((gi, i), (gj, j)))
    if i < m or j < n:
        # Trailing tokens after a clean 1:1 match can only appear when
        # the two sides' characters differ; fold them into the last link.
        last = links[-1]
        links[-1] = WordLink((last.gold_range[0], m), (last.sys_range[0], n))
    return links


def align_words(group: AlignmentGroup,
                policy: NormalizationPolicy | None = None) -> AlignmentGroup:
    """Return a copy of the group with word links over its merged tokens."""
    links = align_token_lists(group.merged_gold_tokens, group.merged_sys_tokens, policy)
    return replace(group, word_links=tuple(links))


def _link_ids(links, side: str, total: int) -> tuple:
    ids: list = []
    for k, link in enumerate(links):
        a, b = link.gold_range if side == "gold" else link.sys_range
        if b - a == 1:
            ids.append(k)
        else:
            ids.extend((k, sub) for sub in range(1, b - a + 1))
    if len(ids) != total:
        raise AlignmentError("word links do not tile the merged token lists")
    return tuple(ids)


def reindex(groups: list[AlignmentGroup]) -> list[AlignmentGroup]:
    """Number merged tokens by their word link on each side.

    A token covered by a single-token link gets the plain link index; a
    token inside a multi-token link gets a (link index, k) pair with k
    counting 1, 2, ... within the link.  Token positions map bijectively
    onto ids, and both sides of a link share the same link index.
    """
    out = []
    for g in groups:
        if not g.word_links:
            raise ValueError("reindex requires word links; run align_words first")
        out.append(replace(
            g,
            gold_token_ids=_link_ids(g.word_links, "gold", len(g.merged_gold_tokens)),
            sys_token_ids=_link_ids(g.word_links, "sys", len(g.merged_sys_tokens)),
        ))
    return out
