"""Labeled planar binary trees and forests.

A tree is either a leaf carrying a positive integer label or an internal
(trivalent) vertex with an ordered pair of subtrees.  Internal vertices are
identified by their path from the tree root, a tuple over {0, 1} with 0
meaning "left child".  The total order on internal vertices is the in-order
traversal: everything over a left edge comes before the vertex, everything
over a right edge after.  Forests are tuples of trees whose leaf labels
partition {1..n}, stored sorted by minimal leaf label.

Tall trees are left combs whose deepest-left leaf is the minimal label;
tall forests are the canonical integral basis in each homological degree.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import ParseError, ValidationError

LEFT, RIGHT = 0, 1


def _walk_leaves(node, out):
    if isinstance(node, int):
        out.append(node)
    else:
        _walk_leaves(node[0], out)
        _walk_leaves(node[1], out)


def _walk_vertices_inorder(node, path, out):
    # in-order: left subtree, this vertex, right subtree
    if isinstance(node, int):
        return
    _walk_vertices_inorder(node[0], path + (LEFT,), out)
    out.append(path)
    _walk_vertices_inorder(node[1], path + (RIGHT,), out)


def _walk_leaf_paths(node, path, out):
    if isinstance(node, int):
        out[node] = path
    else:
        _walk_leaf_paths(node[0], path + (LEFT,), out)
        _walk_leaf_paths(node[1], path + (RIGHT,), out)


@dataclass(frozen=True)
class Tree:
    """Planar rooted binary tree; node is an int leaf or a (left, right) pair."""

    node: object

    def __post_init__(self):
        seq = self.leaf_seq
        if len(set(seq)) != len(seq):
            raise ValidationError(f"duplicate leaf labels in tree: {seq}")
        for lab in seq:
            if not isinstance(lab, int) or lab < 1:
                raise ValidationError(f"leaf labels must be positive ints, got {lab!r}")

    @cached_property
    def leaf_seq(self):
        """Leaf labels in left-to-right planar order."""
        out = []
        _walk_leaves(self.node, out)
        return tuple(out)

    @cached_property
    def labels(self):
        return frozenset(self.leaf_seq)

    @cached_property
    def min_label(self):
        return min(self.leaf_seq)

    @cached_property
    def size(self):
        """Number of internal vertices."""
        return len(self.leaf_seq) - 1

    @cached_property
    def vertex_paths(self):
        """Paths of internal vertices, in the in-order total order."""
        out = []
        _walk_vertices_inorder(self.node, (), out)
        return tuple(out)

    @cached_property
    def leaf_paths(self):
        out = {}
        _walk_leaf_paths(self.node, (), out)
        return out

    @cached_property
    def is_tall(self):
        # left comb with the minimal label at the deepest-left position:
        # every right child is a leaf and the leftmost leaf is the minimum
        node = self.node
        while not isinstance(node, int):
            if not isinstance(node[1], int):
                return False
            node = node[0]
        return node == self.min_label

    def subtree(self, path):
        node = self.node
        for step in path:
            node = node[step]
        return node

    def __repr__(self):
        return f"Tree({render_tree(self)})"


def tree_from_leaf_order(seq):
    """Left comb over seq: [[...[s0, s1], s2], ...]; the tall tree of a block."""
    node = seq[0]
    for lab in seq[1:]:
        node = (node, lab)
    return Tree(node)


def sort_trees_with_parity(trees):
    """Sort trees by minimal leaf label.

    Returns (sorted tuple, parity of the induced permutation on the
    concatenated internal-vertex sequence).  Moving a tree block of a
    vertices past one of b vertices contributes a*b transpositions.
    """
    order = sorted(range(len(trees)), key=lambda idx: trees[idx].min_label)
    inv = 0
    for pos_b, idx_b in enumerate(order):
        for idx_a in order[pos_b + 1:]:
            if idx_a < idx_b:  # originally before, now after
                inv += trees[idx_a].size * trees[idx_b].size
    return tuple(trees[idx] for idx in order), inv % 2


@dataclass(frozen=True)
class Forest:
    """Ordered tuple of trees partitioning {1..n}, sorted by minimal label."""

    trees: tuple
    n: int

    def __post_init__(self):
        seen = set()
        for t in self.trees:
            if seen & t.labels:
                raise ValidationError("forest trees share leaf labels")
            seen |= t.labels
        if seen != set(range(1, self.n + 1)):
            raise ValidationError(
                f"forest labels {sorted(seen)} do not partition 1..{self.n}")
        mins = [t.min_label for t in self.trees]
        if mins != sorted(mins):
            raise ValidationError("forest trees not in canonical (min-label) order")

    @cached_property
    def size(self):
        """Total number of internal vertices."""
        return sum(t.size for t in self.trees)

    @cached_property
    def leaf_info(self):
        """label -> (tree index, root path of the leaf)."""
        out = {}
        for idx, t in enumerate(self.trees):
            for lab, path in t.leaf_paths.items():
                out[lab] = (idx, path)
        return out

    @cached_property
    def vertex_order(self):
        """Global internal-vertex sequence: per-tree in-order, concatenated."""
        out = []
        for idx, t in enumerate(self.trees):
            out.extend((idx, p) for p in t.vertex_paths)
        return tuple(out)

    @cached_property
    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertex_order)}

    @cached_property
    def leaf_order(self):
        """Global left-to-right leaf sequence."""
        return tuple(lab for t in self.trees for lab in t.leaf_seq)

    @cached_property
    def is_tall(self):
        return all(t.is_tall for t in self.trees)

    def __repr__(self):
        return f"Forest({render_forest(self)})"


class PlanarForest(Forest):
    """Forest with an arbitrary planar tree order (commutativity not applied).

    Only the canonical-order invariant is relaxed; used to state the
    commutativity relation, whose two sides differ exactly by tree order.
    """

    def __post_init__(self):
        seen = set()
        for t in self.trees:
            if seen & t.labels:
                raise ValidationError("forest trees share leaf labels")
            seen |= t.labels
        if seen != set(range(1, self.n + 1)):
            raise ValidationError(
                f"forest labels {sorted(seen)} do not partition 1..{self.n}")


def forest(trees, n=None):
    """Build a canonical Forest from trees in any order (no sign tracking)."""
    trees = tuple(trees)
    if n is None:
        n = sum(len(t.leaf_seq) for t in trees)
    ordered, _ = sort_trees_with_parity(trees)
    return Forest(ordered, n)


def single_tree_forest(tree, n=None):
    """The forest of `tree` padded with singleton trees for missing labels."""
    if n is None:
        n = max(tree.labels)
    singles = [Tree(i) for i in range(1, n + 1) if i not in tree.labels]
    return forest([tree] + singles, n)


def vertices_before_leaf(f: Forest, label: int) -> int:
    """Internal vertices strictly preceding the leaf in the global in-order."""
    if label not in f.leaf_info:
        raise ValidationError(f"label {label} out of range 1..{f.n}")
    count = 0
    seen = False

    def walk(node):
        nonlocal count, seen
        if isinstance(node, int):
            if node == label:
                seen = True
            return
        walk(node[0])
        if not seen:
            count += 1
        walk(node[1])

    for t in f.trees:
        if seen:
            break
        walk(t.node)
    return count


def nadir(f: Forest, i: int, j: int):
    """Vertex (tree index, path) at the nadir of the leaf path i--j, or None.

    None when i and j lie in different trees.  The nadir is the deepest
    common ancestor: the vertex at the longest common prefix of the two
    root paths.
    """
    if i == j:
        raise ValidationError("nadir needs two distinct labels")
    try:
        ti, pi = f.leaf_info[i]
        tj, pj = f.leaf_info[j]
    except KeyError as exc:
        raise ValidationError(f"label {exc.args[0]} out of range 1..{f.n}") from exc
    if ti != tj:
        return None
    k = 0
    while k < len(pi) and k < len(pj) and pi[k] == pj[k]:
        k += 1
    return (ti, pi[:k])


# ---------------------------------------------------------------------------
# ordered partitions and the tall basis

@dataclass(frozen=True)
class OrderedPartition:
    """Blocks of {1..n}; each block led by its minimum, blocks sorted by min."""

    blocks: tuple

    def __post_init__(self):
        labs = [x for b in self.blocks for x in b]
        if len(set(labs)) != len(labs):
            raise ValidationError("ordered partition repeats a label")
        for b in self.blocks:
            if b[0] != min(b):
                raise ValidationError(f"block {b} does not start with its minimum")
        mins = [b[0] for b in self.blocks]
        if mins != sorted(mins):
            raise ValidationError("blocks not sorted by minimum")

    @property
    def n(self):
        return sum(len(b) for b in self.blocks)


def ordered_partition_of_forest(f: Forest) -> OrderedPartition:
    """Read the ordered partition off a tall forest (leaf order per tree)."""
    if not f.is_tall:
        raise ValidationError("forest is not tall")
    return OrderedPartition(tuple(t.leaf_seq for t in f.trees))


def forest_of_ordered_partition(p: OrderedPartition, n=None) -> Forest:
    trees = tuple(tree_from_leaf_order(b) for b in p.blocks)
    return Forest(trees, n if n is not None else p.n)


def iter_ordered_partitions(n):
    """All ordered partitions of {1..n}: set partition + per-block orderings.

    Deterministic order: sorted by the tuple-of-blocks key.
    """
    def set_partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for sub in range(1 << len(rest)):
            block = [first] + [rest[b] for b in range(len(rest)) if sub >> b & 1]
            remaining = [rest[b] for b in range(len(rest)) if not sub >> b & 1]
            for tail in set_partitions(remaining):
                yield [tuple(block)] + tail

    out = []
    for blocks in set_partitions(list(range(1, n + 1))):
        choices = [
            [(b[0],) + perm for perm in itertools.permutations(b[1:])]
            for b in blocks
        ]
        for picked in itertools.product(*choices):
            out.append(tuple(sorted(picked)))
    out.sort()
    for blocks in out:
        yield OrderedPartition(blocks)


def enumerate_tall_forests(n, k):
    """All n-forests with k internal vertices in which every tree is tall.

    Canonical order: sorted by the associated ordered partition.  The count
    is the t^k coefficient of prod_{i=1}^{n-1} (1 + i t).
    """
    if not 0 <= k <= max(n - 1, 0):
        raise ValidationError(f"degree k={k} out of range for n={n}")
    out = []
    for p in iter_ordered_partitions(n):
        if p.n - len(p.blocks) == k:
            out.append(forest_of_ordered_partition(p, n))
    return out


# ---------------------------------------------------------------------------
# text grammar
#
#   tree   := INT | "[" tree "," tree "]"
#   forest := tree (";" tree)*

_TOKEN = re.compile(r"\s*(\d+|[\[\],;])")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            break
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def _parse_tree_tokens(tokens, idx, text):
    if idx >= len(tokens):
        raise ParseError("unexpected end of input", text, len(text))
    tok, pos = tokens[idx]
    if tok.isdigit():
        return int(tok), idx + 1
    if tok != "[":
        raise ParseError(f"expected leaf or '[', got {tok!r}", text, pos)
    left, idx = _parse_tree_tokens(tokens, idx + 1, text)
    if idx < len(tokens) and tokens[idx][0] == "]":
        return left, idx + 1  # "[3]": bracketed singleton
    if idx >= len(tokens) or tokens[idx][0] != ",":
        raise ParseError("expected ','", text, tokens[idx][1] if idx < len(tokens) else len(text))
    right, idx = _parse_tree_tokens(tokens, idx + 1, text)
    if idx >= len(tokens) or tokens[idx][0] != "]":
        raise ParseError("expected ']'", text, tokens[idx][1] if idx < len(tokens) else len(text))
    return (left, right), idx + 1


def parse_tree(text) -> Tree:
    tokens = _tokenize(text)
    node, idx = _parse_tree_tokens(tokens, 0, text)
    if idx != len(tokens):
        raise ParseError("trailing input after tree", text, tokens[idx][1])
    return Tree(node)


def parse_forest(text, n=None) -> Forest:
    """Parse ';'-separated trees; storage is canonicalized (min-label sort)."""
    chunks = text.split(";")
    trees = [parse_tree(c) for c in chunks if c.strip()]
    if not trees:
        raise ParseError("empty forest", text, 0)
    labels = set().union(*(t.labels for t in trees))
    return forest(trees, n if n is not None else max(labels))


def render_node(node):
    if isinstance(node, int):
        return str(node)
    return f"[{render_node(node[0])},{render_node(node[1])}]"


def render_tree(t: Tree) -> str:
    return render_node(t.node)


def render_forest(f: Forest) -> str:
    return " ; ".join(render_tree(t) for t in f.trees)


# JSON mirrors: explicit-field dicts, byte-deterministic for canonical forms.

def tree_node_to_json(node):
    if isinstance(node, int):
        return {"leaf": node}
    return {"left": tree_node_to_json(node[0]), "right": tree_node_to_json(node[1])}


def tree_node_from_json(obj):
    if "leaf" in obj:
        return obj["leaf"]
    return (tree_node_from_json(obj["left"]), tree_node_from_json(obj["right"]))


def forest_to_json(f: Forest):
    return {"kind": "forest", "n": f.n,
            "trees": [tree_node_to_json(t.node) for t in f.trees]}


def forest_from_json(obj) -> Forest:
    trees = [Tree(tree_node_from_json(t)) for t in obj["trees"]]
    return forest(trees, obj["n"])
