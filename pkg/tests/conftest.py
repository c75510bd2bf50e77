"""Shared fixtures: worked examples and seeded random generators."""

import random

import pytest

from jpeval import DocumentStream, parse_bracketed, read_plain, sentence
from jpeval.tree import ParseTree

# --- worked examples -------------------------------------------------------

HEBREW_GOLD = "B H CL FL HM H NEIM"
HEBREW_SYS = "B CL FL HM HNEIM"

HEBREW_GOLD_TREE = ("(PP (IN B) (NP (NP (NP (DT H) (NN CL)) (PP (IN FL) (PRP HM))) "
                    "(AdjP (DT H) (JJ NEIM))))")
HEBREW_SYS_TREE = "(PP (IN B) (NP (NP (NN CL) (PP (IN FL) (PRP HM))) (JJ HNEIM)))"

CLICK_GOLD = "Click here To view it ."
CLICK_SYS_1 = "Click here"
CLICK_SYS_2 = "To view it ."

CLICK_GOLD_TREE = ("(S (S (VB Click) (AdvP (RB here)) (S (VP (TO To) (VP (VB view) "
                   "(NP (PRP it)))))) (. .))")
CLICK_SYS_TREES = ("(S (VP (VB Click) (AdvP (RB here))))\n"
                   "(S (S (VP (TO To) (VP (VB view) (NP (PRP it))))) (. .))\n")

CANT_GOLD_TREE = "(S (NP (DT This)) (VP (MD ca) (RB n't) (VP (VB be) (AdjP (JJ right)))))"
CANT_SYS_TREE = "(S (NP (DT this)) (VP (MD can) (RB not) (VP (VB be) (AdjP (JJ right)))))"

BLACK_MONDAY_TREE = ("(TOP (S (INTJ (RB No)) (, ,) (NP (PRP it)) (VP (VBD was) "
                     "(RB n't) (NP (NNP Black) (NNP Monday))) (. .)))")

KATE_GOLD_M2 = """S Kate Ashby ,
A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0

S how are you ? I hope you are fine .
A 0 1|||R:ADV|||How|||REQUIRED|||-NONE-|||0
"""

KATE_SYS_M2 = """S Kate Ashby , how are you ?
A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0

S I hope you are fine .
A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0
"""


@pytest.fixture
def hebrew_docs():
    return (read_plain(HEBREW_GOLD + "\n", source_label="gold"),
            read_plain(HEBREW_SYS + "\n", source_label="sys"))


@pytest.fixture
def hebrew_trees():
    return (parse_bracketed(HEBREW_GOLD_TREE + "\n"),
            parse_bracketed(HEBREW_SYS_TREE + "\n"))


@pytest.fixture
def click_trees():
    return (parse_bracketed(CLICK_GOLD_TREE + "\n"),
            parse_bracketed(CLICK_SYS_TREES))


@pytest.fixture
def cant_trees():
    return (parse_bracketed(CANT_GOLD_TREE + "\n"),
            parse_bracketed(CANT_SYS_TREE + "\n"))


@pytest.fixture
def black_monday_tree():
    return parse_bracketed(BLACK_MONDAY_TREE + "\n")[0]


# --- random generators -----------------------------------------------------

WORD_ALPHABET = "abcdefghij"
EDIT_TYPES = ("R:NOUN", "R:VERB", "M:DET", "U:PREP")


def random_word(rng: random.Random, max_len: int = 6) -> str:
    return "".join(rng.choice(WORD_ALPHABET) for _ in range(rng.randint(1, max_len)))


def random_document_pair(rng: random.Random) -> tuple[DocumentStream, DocumentStream]:
    """A random gold document and a system rendering of the same characters
    with re-drawn token and sentence boundaries."""
    gold_sents = [[random_word(rng) for _ in range(rng.randint(1, 12))]
                  for _ in range(rng.randint(1, 10))]
    stream = "".join(t for s in gold_sents for t in s)
    n = len(stream)
    n_cuts = rng.randint(0, max(0, n - 1)) if n > 1 else 0
    cuts = sorted(rng.sample(range(1, n), n_cuts)) if n_cuts else []
    positions = [0] + cuts + [n]
    sys_tokens = [stream[a:b] for a, b in zip(positions, positions[1:])]
    m = len(sys_tokens)
    n_bounds = rng.randint(0, m - 1) if m > 1 else 0
    bounds = [0] + (sorted(rng.sample(range(1, m), n_bounds)) if n_bounds else []) + [m]
    sys_sents = [sys_tokens[a:b] for a, b in zip(bounds, bounds[1:])]
    gold = DocumentStream(tuple(sentence(s) for s in gold_sents), "gold")
    sysd = DocumentStream(tuple(sentence(s) for s in sys_sents), "sys")
    return gold, sysd


TREE_LABELS = ("S", "NP", "VP", "PP", "ADJP")
POS_LABELS = ("NN", "VB", "DT", "JJ", "IN")


def random_tree(rng: random.Random, tokens: list[str]) -> ParseTree:
    if len(tokens) == 1:
        leaf = ParseTree("", leaf=tokens[0])
        return ParseTree(rng.choice(POS_LABELS), children=(leaf,))
    split = rng.randint(1, len(tokens) - 1)
    left = random_tree(rng, tokens[:split])
    right = random_tree(rng, tokens[split:])
    return ParseTree(rng.choice(TREE_LABELS), children=(left, right))


def random_tree_document(rng: random.Random) -> list[ParseTree]:
    return [random_tree(rng, [random_word(rng) for _ in range(rng.randint(1, 8))])
            for _ in range(rng.randint(1, 6))]


# --- random m2 material ----------------------------------------------------


def random_global_edits(rng: random.Random, n_tokens: int, max_edits: int = 5):
    """Sorted non-overlapping (start, end, type, correction) edits with
    global token offsets; start == end marks an insertion."""
    edits = []
    pos = 0
    for _ in range(rng.randint(0, max_edits)):
        if pos > n_tokens:
            break
        start = rng.randint(pos, n_tokens)
        if start == n_tokens or rng.random() < 0.3:
            end = start
            correction = random_word(rng)
        else:
            end = rng.randint(start + 1, min(n_tokens, start + 3))
            correction = "" if rng.random() < 0.3 else random_word(rng)
        edits.append((start, end, rng.choice(EDIT_TYPES), correction))
        pos = end + 1 if end > start else start + 1
    return edits


def _spans_collide(a, b) -> bool:
    (s1, e1), (s2, e2) = (a[0], a[1]), (b[0], b[1])
    if s1 == e1 and s2 == e2:
        return s1 == s2
    if s1 == e1:
        return s2 < s1 < e2
    if s2 == e2:
        return s1 < s2 < e1
    return s1 < e2 and s2 < e1


def random_sys_edits(rng: random.Random, n_tokens: int, gold_edits):
    """System edits over the same stream: some gold edits copied (true
    positives), some with redrawn corrections, plus a few spurious ones."""
    chosen = []
    for start, end, label, correction in gold_edits:
        roll = rng.random()
        if roll < 0.5:
            chosen.append((start, end, label, correction))
        elif roll < 0.7:
            chosen.append((start, end, label, correction + rng.choice(WORD_ALPHABET)))
    for _ in range(rng.randint(0, 3)):
        start = rng.randint(0, n_tokens)
        if start == n_tokens or rng.random() < 0.4:
            end = start
        else:
            end = rng.randint(start + 1, min(n_tokens, start + 2))
        cand = (start, end, rng.choice(EDIT_TYPES), random_word(rng))
        if all(not _spans_collide(cand, kept) for kept in chosen):
            chosen.append(cand)
    return sorted(chosen, key=lambda e: (e[0], e[1]))


def random_cuts(rng: random.Random, n_tokens: int, edits):
    """Sentence cut positions avoiding the strict interior of every span."""
    forbidden = set()
    for start, end, _, _ in edits:
        forbidden.update(range(start + 1, end))
    candidates = [p for p in range(1, n_tokens) if p not in forbidden]
    return sorted(rng.sample(candidates, rng.randint(0, len(candidates))))


def render_m2(tokens, cuts, edits) -> str:
    """Render global-offset edits over a segmentation as m2 text.

    An insertion sitting exactly on a cut goes to the sentence on its
    left, so any two segmentations of the same stream merge back to the
    same global offsets.
    """
    bounds = [0] + list(cuts) + [len(tokens)]
    blocks = []
    for idx, (a, b) in enumerate(zip(bounds, bounds[1:])):
        lines = ["S " + " ".join(tokens[a:b])]
        for start, end, label, correction in edits:
            if start == end:
                owns = a < start <= b or (start == 0 and idx == 0)
            else:
                owns = a <= start and end <= b
            if owns:
                lines.append(f"A {start - a} {end - a}|||{label}|||{correction}"
                             f"|||REQUIRED|||-NONE-|||0")
        if len(lines) == 1:
            lines.append("A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def random_m2_trial(rng: random.Random):
    """Gold m2 text plus two renderings of one system edit set under
    different sentence segmentations of the same token stream."""
    tokens = [random_word(rng, 4) for _ in range(rng.randint(8, 40))]
    gold_edits = random_global_edits(rng, len(tokens))
    sys_edits = random_sys_edits(rng, len(tokens), gold_edits)
    gold_text = render_m2(tokens, random_cuts(rng, len(tokens), gold_edits), gold_edits)
    sys_a = render_m2(tokens, random_cuts(rng, len(tokens), sys_edits), sys_edits)
    sys_b = render_m2(tokens, random_cuts(rng, len(tokens), sys_edits), sys_edits)
    return gold_text, sys_a, sys_b
