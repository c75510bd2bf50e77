"""Tokenized document model shared by every evaluator in the package.

A document is an ordered sequence of sentences; a sentence is an ordered
sequence of tokens.  The separator-stripped character form of a sentence
(all token boundaries removed) is the common currency of comparison: two
systems that disagree on sentence boundaries or tokenization still agree
on it whenever they processed the same text.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field


class ConlluError(ValueError):
    """Raised for malformed CoNLL-U input."""


class LexiconError(ValueError):
    """Raised for malformed or non-idempotent exception lexicon entries."""


@dataclass(frozen=True)
class Token:
    """One surface token and its 0-based position within its sentence."""

    surface: str
    index: int

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if any(ch.isspace() for ch in self.surface):
            raise ValueError(f"token surface must not contain whitespace: {self.surface!r}")
        if self.index < 0:
            raise ValueError("token index must be non-negative")


@dataclass(frozen=True)
class SentenceRecord:
    """An ordered, non-empty sequence of tokens forming one sentence."""

    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence must contain at least one token")
        for pos, tok in enumerate(self.tokens):
            if tok.index != pos:
                raise ValueError("token indices must run 0..n-1 without gaps")

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    @property
    def stripped(self) -> str:
        """Raw surface concatenation with every token separator removed."""
        return "".join(t.surface for t in self.tokens)


@dataclass(frozen=True)
class DocumentStream:
    """An ordered sequence of sentences read from one input source."""

    sentences: tuple[SentenceRecord, ...]
    source_label: str = ""

    @property
    def token_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)


@dataclass(frozen=True)
class NormalizationPolicy:
    """What counts as 'the same text' when comparing two sides.

    The exception lexicon maps variant token sequences to canonical ones
    (for tokenization conventions that change characters, such as
    ``ca n't`` versus ``can not``).  It is applied before lowercasing,
    which is applied before Unicode NFC.  The default policy is the
    identity: stripped forms are exact surface concatenations.
    """

    lowercase: bool = False
    unicode_nfc: bool = False
    exception_lexicon: dict[tuple[str, ...], tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for variant, canonical in self.exception_lexicon.items():
            if not variant or not canonical:
                raise LexiconError("lexicon entries must map non-empty token sequences")
            if _rewrite(canonical, self.exception_lexicon) != list(canonical):
                raise LexiconError(
                    f"lexicon is not idempotent: canonical side {canonical!r} is itself rewritten"
                )


# Small built-in lexicon covering the known character-changing tokenization
# conventions; callers opt in explicitly (the default policy is empty).
DEFAULT_EXCEPTION_LEXICON: dict[tuple[str, ...], tuple[str, ...]] = {
    ("ca", "n't"): ("can", "not"),
    ("``",): ('"',),
    ("''",): ('"',),
}


def sentence(surfaces) -> SentenceRecord:
    """Build a SentenceRecord from an iterable of token surfaces."""
    return SentenceRecord(tuple(Token(s, i) for i, s in enumerate(surfaces)))


def _rewrite(surfaces, lexicon) -> list[str]:
    """One left-to-right pass of longest-match lexicon replacement."""
    if not lexicon:
        return list(surfaces)
    longest = max(len(k) for k in lexicon)
    out: list[str] = []
    i = 0
    while i < len(surfaces):
        for n in range(min(longest, len(surfaces) - i), 0, -1):
            key = tuple(surfaces[i:i + n])
            if key in lexicon:
                out.extend(lexicon[key])
                i += n
                break
        else:
            out.append(surfaces[i])
            i += 1
    return out


def normalize_token(surface: str, policy: NormalizationPolicy | None = None) -> str:
    """Apply the per-token parts of a policy (lowercase, NFC) to one surface."""
    if policy is None:
        return surface
    s = surface
    if policy.lowercase:
        s = s.lower()
    if policy.unicode_nfc:
        s = unicodedata.normalize("NFC", s)
    return s


def stripped_form(sent: SentenceRecord, policy: NormalizationPolicy | None = None) -> str:
    """Separator-stripped character form of a sentence under a policy.

    Lexicon replacement runs first on the raw surfaces, then lowercasing,
    then NFC.  With the empty policy this is exactly ``sent.stripped``.
    """
    if policy is None:
        return sent.stripped
    toks = _rewrite(sent.surfaces, policy.exception_lexicon)
    return "".join(normalize_token(t, policy) for t in toks)


def read_plain(text: str, source_label: str = "") -> DocumentStream:
    """Read whitespace-tokenized text, one sentence per non-blank line."""
    sents = []
    for line in text.splitlines():
        parts = line.split()
        if parts:
            sents.append(sentence(parts))
    return DocumentStream(tuple(sents), source_label)


def serialize_plain(stream: DocumentStream) -> str:
    """Inverse of read_plain: one space-joined line per sentence."""
    return "".join(" ".join(s.surfaces) + "\n" for s in stream.sentences)


def read_conllu(text: str, use_mwt_ranges: bool = False, source_label: str = "") -> DocumentStream:
    """Read CoNLL-U blocks, taking the FORM column as the token surface.

    By default multiword-token range lines (ID like ``3-4``) are skipped
    and the individual word lines are kept; with use_mwt_ranges=True the
    range line's FORM is kept instead and the covered IDs are suppressed.
    Empty-node lines (ID like ``8.1``) are never surface tokens.
    """
    sents: list[SentenceRecord] = []
    current: list[str] = []
    suppress_until = 0

    def flush():
        nonlocal current, suppress_until
        if current:
            sents.append(sentence(current))
        current = []
        suppress_until = 0

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 2:
            raise ConlluError(f"line {lineno}: expected at least 2 tab-separated columns")
        tid, form = cols[0], cols[1]
        # FORM may legitimately contain spaces in some treebanks; token
        # separators carry no information here, so drop them.
        form = "".join(form.split())
        if not form:
            raise ConlluError(f"line {lineno}: empty FORM field")
        if "-" in tid:
            a, _, b = tid.partition("-")
            if not (a.isdigit() and b.isdigit()):
                raise ConlluError(f"line {lineno}: malformed ID field {tid!r}")
            if use_mwt_ranges:
                current.append(form)
                suppress_until = int(b)
            continue
        if "." in tid:
            a, _, b = tid.partition(".")
            if not (a.isdigit() and b.isdigit()):
                raise ConlluError(f"line {lineno}: malformed ID field {tid!r}")
            continue
        if not tid.isdigit():
            raise ConlluError(f"line {lineno}: malformed ID field {tid!r}")
        if use_mwt_ranges and int(tid) <= suppress_until:
            continue
        current.append(form)
    flush()
    return DocumentStream(tuple(sents), source_label)


def load_exception_lexicon(text: str) -> dict[tuple[str, ...], tuple[str, ...]]:
    """Parse a lexicon file: per line, variant tokens TAB canonical tokens."""
    lex: dict[tuple[str, ...], tuple[str, ...]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        if "\t" not in line:
            raise LexiconError(f"line {lineno}: expected a TAB between variant and canonical sides")
        left, right = line.split("\t", 1)
        variant = tuple(left.split())
        canonical = tuple(right.split())
        if not variant or not canonical:
            raise LexiconError(f"line {lineno}: both sides must contain at least one token")
        lex[variant] = canonical
    for canonical in lex.values():
        if _rewrite(canonical, lex) != list(canonical):
            raise LexiconError(
                f"lexicon is not idempotent: canonical side {canonical!r} is itself rewritten"
            )
    return lex
