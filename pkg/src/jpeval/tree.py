"""Bracketed constituency trees: parsing, constituents, merging, filtering.

Trees are read one per line in the usual s-expression treebank format.
A constituent is recorded for every internal node of height greater
than 2, i.e. everything above the preterminal layer, as a quadruple of
label, start, end (token indices, end exclusive) and covered tokens.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class TreeError(ValueError):
    """Raised for malformed bracketed tree input."""


# Labels that act as transparent outer wrappers around a whole tree.
WRAPPER_LABELS = frozenset({"", "TOP", "ROOT", "S1", "VROOT"})

DUMMY_ROOT_LABEL = "@S"


@dataclass(frozen=True)
class ParseTree:
    """A node: either an internal node with children or a leaf surface."""

    label: str
    children: tuple["ParseTree", ...] = ()
    leaf: str | None = None

    def __post_init__(self):
        if (self.leaf is None) == (len(self.children) == 0):
            raise ValueError("a node carries either children or a leaf surface")

    @property
    def is_leaf(self) -> bool:
        return self.leaf is not None

    def height(self) -> int:
        if self.leaf is not None:
            return 1
        return 1 + max(c.height() for c in self.children)

    def leaves(self) -> list[str]:
        if self.leaf is not None:
            return [self.leaf]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def pos_leaves(self) -> list[tuple[str, str]]:
        """(preterminal label, surface) for each leaf, left to right."""
        out: list[tuple[str, str]] = []

        def walk(node, parent_label):
            if node.leaf is not None:
                out.append((parent_label, node.leaf))
                return
            for c in node.children:
                walk(c, node.label)

        walk(self, "")
        return out


@dataclass(frozen=True)
class Constituent:
    label: str
    start: int
    end: int
    tokens: tuple[str, ...]

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError("constituent span must be non-empty and ordered")
        if len(self.tokens) != self.end - self.start:
            raise ValueError("token count must equal span width")


@dataclass(frozen=True)
class LegacyParams:
    """Filtering rules of classical bracket scoring parameter files."""

    excluded_pos_labels: frozenset[str] = frozenset()
    excluded_node_labels: frozenset[str] = frozenset()
    label_equivalences: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if DUMMY_ROOT_LABEL in self.excluded_pos_labels | self.excluded_node_labels:
            raise ValueError("the dummy root label cannot appear in exclusion sets")


DEFAULT_LEGACY_PARAMS = LegacyParams(
    excluded_pos_labels=frozenset({"``", "''", ",", ":", ".", "-NONE-"}),
    excluded_node_labels=frozenset({"TOP", "ROOT", "S1", "VROOT", "-NONE-"}),
    label_equivalences={"PRT": "ADVP"},
)


def _parse_line(line: str, lineno: int) -> ParseTree:
    n = len(line)
    pos = 0

    def fail(msg, col):
        raise TreeError(f"line {lineno}, column {col}: {msg}")

    def skip_ws():
        nonlocal pos
        while pos < n and line[pos].isspace():
            pos += 1

    def read_atom():
        nonlocal pos
        start = pos
        while pos < n and not line[pos].isspace() and line[pos] not in "()":
            pos += 1
        return line[start:pos]

    def parse_node():
        nonlocal pos
        open_col = pos + 1
        pos += 1  # consume "("
        skip_ws()
        label = "" if pos < n and line[pos] in "()" else read_atom()
        children: list[ParseTree] = []
        while True:
            skip_ws()
            if pos >= n:
                fail("unbalanced brackets: missing ')'", n + 1)
            if line[pos] == ")":
                pos += 1
                break
            if line[pos] == "(":
                children.append(parse_node())
            else:
                children.append(ParseTree("", (), read_atom()))
        if not children:
            fail("empty node", open_col)
        return ParseTree(label, tuple(children), None)

    skip_ws()
    if pos >= n or line[pos] != "(":
        fail("expected '('", pos + 1)
    tree = parse_node()
    skip_ws()
    if pos < n:
        fail("unexpected content after tree", pos + 1)
    return tree


def parse_bracketed(text: str) -> list[ParseTree]:
    """Parse one tree per non-blank line; labels and leaves kept verbatim."""
    trees = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            trees.append(_parse_line(line, lineno))
    return trees


def serialize_tree(tree: ParseTree) -> str:
    if tree.leaf is not None:
        return tree.leaf
    inner = " ".join(serialize_tree(c) for c in tree.children)
    return f"({tree.label} {inner})"


def get_constituents(tree: ParseTree, start: int = 0,
                     ignore_root: frozenset[str] = WRAPPER_LABELS) -> list[Constituent]:
    """Quadruples for every node above the preterminal layer, preorder.

    A root whose label is in ignore_root (transparent wrappers such as
    TOP, or a dummy merge root) contributes no quadruple of its own but
    its descendants are still walked.
    """
    out: list[Constituent] = []

    def walk(node: ParseTree, offset: int, at_root: bool) -> int:
        if node.leaf is not None:
            return 1
        emit = any(c.leaf is None for c in node.children)
        if emit and not (at_root and node.label in ignore_root):
            lv = node.leaves()
            out.append(Constituent(node.label, offset, offset + len(lv), tuple(lv)))
        off = offset
        for c in node.children:
            off += walk(c, off, False)
        return off - offset

    walk(tree, start, True)
    return out


def merge_trees(trees: list[ParseTree], dummy_label: str = DUMMY_ROOT_LABEL) -> ParseTree:
    """A single tree spanning all inputs: unchanged for one tree, else
    the inputs become children of a fresh dummy root."""
    if not trees:
        raise ValueError("merge_trees requires at least one tree")
    if len(trees) == 1:
        return trees[0]
    return ParseTree(dummy_label, tuple(trees), None)


def strip_wrapper(tree: ParseTree, labels: frozenset[str] = WRAPPER_LABELS) -> ParseTree:
    """Descend through single-child transparent roots such as (TOP ...)."""
    while (tree.leaf is None and tree.label in labels
           and len(tree.children) == 1 and tree.children[0].leaf is None):
        tree = tree.children[0]
    return tree


def read_legacy_params(text: str) -> LegacyParams:
    """Parse a line-oriented parameter file.

    Recognized keys: DELETE_POS <label> removes leaves by preterminal
    label, DELETE_LABEL <label> removes constituents by label, and
    EQ_LABEL <canonical> <alias> treats the alias as the canonical
    label.  ``#`` starts a comment.
    """
    pos: set[str] = set()
    nodes: set[str] = set()
    eq: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "DELETE_POS" and len(parts) == 2:
            pos.add(parts[1])
        elif key == "DELETE_LABEL" and len(parts) == 2:
            nodes.add(parts[1])
        elif key == "EQ_LABEL" and len(parts) == 3:
            eq[parts[2]] = parts[1]
        else:
            raise ValueError(f"parameter file line {lineno}: cannot parse {raw!r}")
    return LegacyParams(frozenset(pos), frozenset(nodes), eq)


def apply_legacy_filter(constituents: list[Constituent],
                        leaves: list[tuple[str, str]],
                        params: LegacyParams) -> tuple[list[Constituent], list[int]]:
    """Classical parameter-file filtering over already extracted quadruples.

    Leaves whose preterminal label is excluded disappear and the
    survivors are renumbered 0..k-1; spans are remapped accordingly and
    span-empty constituents dropped.  Constituents with excluded labels
    are dropped, then label equivalences applied.  Returns the filtered
    quadruples and the surviving original leaf indices.
    """
    survivors = [k for k, (pos, _) in enumerate(leaves)
                 if pos not in params.excluded_pos_labels]
    before = [0] * (len(leaves) + 1)
    kept = 0
    for k in range(len(leaves)):
        before[k] = kept
        if leaves[k][0] not in params.excluded_pos_labels:
            kept += 1
    before[len(leaves)] = kept

    out: list[Constituent] = []
    for c in constituents:
        if c.label in params.excluded_node_labels:
            continue
        label = params.label_equivalences.get(c.label, c.label)
        s, e = before[c.start], before[c.end]
        if s == e:
            continue
        toks = tuple(leaves[k][1] for k in survivors[s:e])
        out.append(Constituent(label, s, e, toks))
    return out, survivors
