"""Grammatical error correction scoring over m2 files.

An m2 entry is one source sentence (``S`` line) plus edits (``A``
lines) of the form ``A start end|||type|||correction|||required|||
comment|||annotator`` with token offsets into the source.  When the
gold and system files disagree on sentence boundaries, entries are
merged along the sentence alignment and edit offsets shifted by the
token counts of the preceding sentences in the merged block; after
that the usual edit matching applies unchanged.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace

from .align import SimilarityConfig, align_sentences
from .textmodel import DocumentStream, NormalizationPolicy, sentence


class M2Error(ValueError):
    """Raised for malformed m2 input."""


NOOP_TYPE = "noop"


@dataclass(frozen=True)
class Edit:
    """One annotated edit; (start, end) is a half-open token span and is
    (-1, -1) exactly for noop entries."""

    start: int
    end: int
    type_label: str
    correction: str
    required_field: str = "REQUIRED"
    comment_field: str = "-NONE-"
    annotator: int = 0

    @property
    def is_noop(self) -> bool:
        return self.type_label == NOOP_TYPE

    def __post_init__(self):
        if self.type_label == NOOP_TYPE:
            if (self.start, self.end) != (-1, -1):
                raise ValueError("noop edits must carry the span (-1, -1)")
        else:
            if self.start < 0 or self.end < self.start:
                raise ValueError("edit span must satisfy 0 <= start <= end")


@dataclass(frozen=True)
class M2Entry:
    source_tokens: tuple[str, ...]
    edits: tuple[Edit, ...] = ()

    @property
    def source_text(self) -> str:
        return " ".join(self.source_tokens)

    @property
    def edits_by_annotator(self) -> dict[int, tuple[Edit, ...]]:
        by: dict[int, list[Edit]] = {}
        for e in self.edits:
            by.setdefault(e.annotator, []).append(e)
        return {a: tuple(lst) for a, lst in by.items()}


@dataclass(frozen=True)
class GecScore:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_beta: float
    beta: float
    per_type: dict[str, tuple[int, int, int]]


def _parse_a_line(line: str, lineno: int, entry_index: int, n_tokens: int) -> Edit:
    fields = line[2:].split("|||")
    if len(fields) != 6:
        raise M2Error(f"entry {entry_index}, line {lineno}: expected 6 '|||'-separated fields, "
                      f"got {len(fields)}")
    span = fields[0].split()
    if len(span) != 2:
        raise M2Error(f"entry {entry_index}, line {lineno}: span field must hold two integers")
    try:
        start, end = int(span[0]), int(span[1])
        annotator = int(fields[5])
    except ValueError as exc:
        raise M2Error(f"entry {entry_index}, line {lineno}: {exc}") from None
    type_label = fields[1]
    if (type_label == NOOP_TYPE) != ((start, end) == (-1, -1)):
        raise M2Error(f"entry {entry_index}, line {lineno}: span (-1, -1) is reserved for "
                      f"noop edits and required by them")
    if type_label != NOOP_TYPE and not (0 <= start <= end <= n_tokens):
        raise M2Error(f"entry {entry_index}, line {lineno}: span ({start}, {end}) out of "
                      f"range for a {n_tokens}-token source")
    try:
        return Edit(start, end, type_label, fields[2], fields[3], fields[4], annotator)
    except ValueError as exc:
        raise M2Error(f"entry {entry_index}, line {lineno}: {exc}") from None


def parse_m2(text: str) -> list[M2Entry]:
    """Parse m2 entries; edit order and field contents are kept verbatim."""
    entries: list[M2Entry] = []
    tokens: tuple[str, ...] | None = None
    edits: list[Edit] = []

    def flush():
        nonlocal tokens, edits
        if tokens is not None:
            entries.append(M2Entry(tokens, tuple(edits)))
        tokens, edits = None, []

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("S ") or line == "S":
            if tokens is not None:
                raise M2Error(f"entry {len(entries) + 1}, line {lineno}: second 'S' line "
                              f"before a blank separator")
            toks = tuple(line[2:].split())
            if not toks:
                raise M2Error(f"entry {len(entries) + 1}, line {lineno}: empty source line")
            tokens = toks
        elif line.startswith("A "):
            if tokens is None:
                raise M2Error(f"entry {len(entries) + 1}, line {lineno}: 'A' line before "
                              f"any 'S' line")
            edits.append(_parse_a_line(line, lineno, len(entries) + 1, len(tokens)))
        else:
            raise M2Error(f"entry {len(entries) + 1}, line {lineno}: unrecognized line "
                          f"{line!r}")
    flush()
    return entries


def serialize_edit(e: Edit) -> str:
    return (f"A {e.start} {e.end}|||{e.type_label}|||{e.correction}|||"
            f"{e.required_field}|||{e.comment_field}|||{e.annotator}")


def serialize_m2(entries: list[M2Entry]) -> str:
    """Inverse of parse_m2 on canonically formatted files."""
    blocks = []
    for entry in entries:
        lines = ["S " + entry.source_text]
        lines.extend(serialize_edit(e) for e in entry.edits)
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def _merge_entries(entries: list[M2Entry]) -> M2Entry:
    if len(entries) == 1:
        return entries[0]
    tokens: list[str] = []
    merged: list[Edit] = []
    offset = 0
    for entry in entries:
        for e in entry.edits:
            if e.is_noop:
                merged.append(e)
            else:
                merged.append(replace(e, start=e.start + offset, end=e.end + offset))
        tokens.extend(entry.source_tokens)
        offset += len(entry.source_tokens)
    # Per annotator: noops vanish next to real edits, otherwise one stays.
    has_real = {e.annotator for e in merged if not e.is_noop}
    kept: list[Edit] = []
    seen_noop: set[int] = set()
    for e in merged:
        if e.is_noop:
            if e.annotator in has_real or e.annotator in seen_noop:
                continue
            seen_noop.add(e.annotator)
        kept.append(e)
    return M2Entry(tuple(tokens), tuple(kept))


def merge_and_reindex(gold_entries: list[M2Entry], sys_entries: list[M2Entry],
                      policy: NormalizationPolicy | None = None,
                      cfg: SimilarityConfig | None = None,
                      ) -> list[tuple[M2Entry, M2Entry]]:
    """Merge both files' entries along the sentence alignment of their
    sources, shifting edit offsets by the preceding token counts."""
    gold_stream = DocumentStream(tuple(sentence(e.source_tokens) for e in gold_entries), "gold")
    sys_stream = DocumentStream(tuple(sentence(e.source_tokens) for e in sys_entries), "sys")
    groups = align_sentences(gold_stream, sys_stream, policy, cfg)
    pairs = []
    for g in groups:
        ge = _merge_entries(gold_entries[g.gold_sentences[0]:g.gold_sentences[1]])
        se = _merge_entries(sys_entries[g.sys_sentences[0]:g.sys_sentences[1]])
        pairs.append((ge, se))
    return pairs


def _edit_key(e: Edit, mode: str):
    if mode == "detection":
        return (e.start, e.end)
    return (e.start, e.end, e.correction)


def _compare(sys_edits: list[Edit], gold_edits: list[Edit], mode: str):
    available: dict = defaultdict(list)
    for e in gold_edits:
        available[_edit_key(e, mode)].append(e)
    matched_gold: list[Edit] = []
    unmatched_sys: list[Edit] = []
    for e in sys_edits:
        key = _edit_key(e, mode)
        if available[key]:
            matched_gold.append(available[key].pop(0))
        else:
            unmatched_sys.append(e)
    unmatched_gold = [e for lst in available.values() for e in lst]
    return matched_gold, unmatched_sys, unmatched_gold


def prf_beta(tp: int, fp: int, fn: int, beta: float) -> tuple[float, float, float]:
    """Precision, recall, and F_beta with the 0/0 -> 1.0 convention.

    A system that proposes nothing has perfect precision; a gold side
    that demands nothing is perfectly recalled; F is 0 only when the
    denominator vanishes (both counts zero with beta-weighted p).
    """
    p = tp / (tp + fp) if tp + fp else 1.0
    r = tp / (tp + fn) if tp + fn else 1.0
    denom = beta * beta * p + r
    f = (1 + beta * beta) * p * r / denom if denom > 0 else 0.0
    return p, r, f


def score_gec(pairs: list[tuple[M2Entry, M2Entry]], beta: float = 0.5,
              mode: str = "correction") -> GecScore:
    """Match system edits against the best-scoring gold annotator per
    merged entry and accumulate tp/fp/fn.

    In correction mode edits match on (start, end, correction); in
    detection mode on (start, end) alone.  Noop edits never count.  The
    annotator chosen for an entry is the one maximizing the cumulative
    F_beta, ties going to more true positives, fewer errors, and the
    lowest annotator id, in that order.
    """
    if mode not in ("correction", "detection"):
        raise ValueError(f"unknown mode {mode!r}")
    if beta <= 0:
        raise ValueError("beta must be positive")
    tp = fp = fn = 0
    per_type: dict[str, list[int]] = defaultdict(lambda: [0, 0, 0])
    for gold_e, sys_e in pairs:
        sys_edits = [e for e in sys_e.edits if not e.is_noop]
        by_annot = {a: [e for e in lst if not e.is_noop]
                    for a, lst in gold_e.edits_by_annotator.items()}
        if not by_annot:
            by_annot = {0: []}
        best = None
        for a in sorted(by_annot):
            matched, um_sys, um_gold = _compare(sys_edits, by_annot[a], mode)
            _, _, f = prf_beta(tp + len(matched), fp + len(um_sys), fn + len(um_gold), beta)
            rank = (f, len(matched), -len(um_sys), -len(um_gold), -a)
            if best is None or rank > best[0]:
                best = (rank, matched, um_sys, um_gold)
        _, matched, um_sys, um_gold = best
        tp += len(matched)
        fp += len(um_sys)
        fn += len(um_gold)
        for e in matched:
            per_type[e.type_label][0] += 1
        for e in um_sys:
            per_type[e.type_label][1] += 1
        for e in um_gold:
            per_type[e.type_label][2] += 1
    p, r, f = prf_beta(tp, fp, fn, beta)
    return GecScore(tp=tp, fp=fp, fn=fn, precision=p, recall=r, f_beta=f, beta=beta,
                    per_type={t: tuple(v) for t, v in sorted(per_type.items())})
