"""Leveled coupling trees stored as region sequences.

A coupling tree with n leaves is a planar binary tree whose n-1 internal
nodes are numbered by distinct levels 1..n-1, strictly increasing along
every root-to-leaf path (the root is always level 1).  Between consecutive
leaves i and i+1 there is a unique lowest node spanning the gap; recording
its level for each of the n-1 gaps gives a sequence that determines the
tree completely.  Every permutation of {1..n-1} arises this way: the
minimum entry marks the root, and the stretches to its left and right
encode the two subtrees recursively.  Trees are therefore stored as level
sequences ("region sequences"), with the recursive node form derived on
demand.

Two degenerate values round out the type: the leaf tree (one leaf, empty
sequence) and the null tree (no leaves at all), which cut operations
return when asked for a branch that is not there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class NotAPermutation(ValueError):
    """The level sequence is not a permutation of {1..n-1}."""


class TooShort(ValueError):
    """The operation needs a tree with at least one branch node."""


class LevelAbsent(ValueError):
    """No branch node carries the requested level."""


class AllLeavesContracted(ValueError):
    """Contraction must leave at least one leaf standing."""


class NullOperand(ValueError):
    """The null tree cannot be tensored."""


@dataclass(frozen=True)
class CouplingTree:
    """A leveled tree as its tuple of region levels; ``None`` marks the null tree."""

    levels: tuple[int, ...] | None

    def __len__(self) -> int:
        return 0 if self.levels is None else len(self.levels) + 1

    @property
    def is_null(self) -> bool:
        return self.levels is None

    def __repr__(self) -> str:
        if self.levels is None:
            return "CouplingTree(null)"
        return f"CouplingTree({list(self.levels)})"


#: The tree with no leaves at all, returned by cuts that miss.
NULL = CouplingTree(None)

#: The single-leaf tree (empty region sequence).
LEAF = CouplingTree(())


def make_tree(levels: Iterable[int]) -> CouplingTree:
    """Build a tree from its region levels, validating the permutation property."""
    seq = tuple(levels)
    if sorted(seq) != list(range(1, len(seq) + 1)):
        raise NotAPermutation(
            f"levels {list(seq)} are not a permutation of 1..{len(seq)}"
        )
    return CouplingTree(seq)


# --------------------------------------------------------------------------
# Recursive node form


class RecursiveTree:
    """Node form of a coupling tree: either a ``Leaf`` or a leveled ``Node``."""

    __slots__ = ()


@dataclass(frozen=True)
class Leaf(RecursiveTree):
    pass


@dataclass(frozen=True)
class Node(RecursiveTree):
    level: int
    left: RecursiveTree
    right: RecursiveTree


def to_recursive(t: CouplingTree) -> RecursiveTree:
    """Unfold the region sequence into explicit nodes (root = minimum level)."""
    if t.is_null:
        raise TooShort("the null tree has no node form")
    return _build(t.levels)


def _build(seq: tuple[int, ...]) -> RecursiveTree:
    if not seq:
        return Leaf()
    k = seq.index(min(seq))
    return Node(seq[k], _build(seq[:k]), _build(seq[k + 1 :]))


def from_recursive(r: RecursiveTree) -> CouplingTree:
    """Fold a node form back into a region sequence, checking validity."""
    t = make_tree(_inorder(r))
    if to_recursive(t) != r:
        raise ValueError("node levels do not increase away from the root")
    return t


def _inorder(r: RecursiveTree) -> list[int]:
    match r:
        case Leaf():
            return []
        case Node(level, left, right):
            return _inorder(left) + [level] + _inorder(right)
    raise TypeError(f"not a recursive tree: {r!r}")


# --------------------------------------------------------------------------
# Cuts, sides and the subtree order


def _rerank(seq: Sequence[int]) -> tuple[int, ...]:
    """Order-isomorphism onto {1..k}: surviving levels keep their relative order."""
    rank = {v: i for i, v in enumerate(sorted(seq), start=1)}
    return tuple(rank[v] for v in seq)


def left(t: CouplingTree) -> CouplingTree:
    """The subtree hanging left of the root, re-leveled to stand alone."""
    if len(t) < 2:
        raise TooShort("no root branch to cut")
    k = t.levels.index(1)
    return CouplingTree(_rerank(t.levels[:k]))


def right(t: CouplingTree) -> CouplingTree:
    """The subtree hanging right of the root, re-leveled to stand alone."""
    if len(t) < 2:
        raise TooShort("no root branch to cut")
    k = t.levels.index(1)
    return CouplingTree(_rerank(t.levels[k + 1 :]))


def region_of_level(t: CouplingTree, i: int) -> int:
    """1-based region position of the node at level ``i``."""
    if t.is_null or not 1 <= i <= len(t) - 1:
        raise LevelAbsent(f"tree of length {len(t)} has no level {i}")
    return t.levels.index(i) + 1


def region_span(t: CouplingTree, i: int) -> tuple[int, int]:
    """First and last region position (1-based, inclusive) under the level-i node.

    The regions of the subtree rooted at level i form the maximal contiguous
    block around its own region whose levels all exceed or equal i; the
    regions just outside are spanned by proper ancestors, whose levels are
    smaller.
    """
    pos = region_of_level(t, i) - 1
    lo = pos
    while lo > 0 and t.levels[lo - 1] > i:
        lo -= 1
    hi = pos
    while hi < len(t.levels) - 1 and t.levels[hi + 1] > i:
        hi += 1
    return lo + 1, hi + 1


def cut_above(t: CouplingTree, i: int) -> CouplingTree:
    """The subtree at the level-i node as a tree of its own; null if absent."""
    if i < 1:
        raise ValueError("levels are 1-based")
    if t.is_null or i >= len(t):
        return NULL
    lo, hi = region_span(t, i)
    return CouplingTree(_rerank(t.levels[lo - 1 : hi]))


def cut_below(t: CouplingTree, i: int) -> CouplingTree:
    """The tree left standing when the level-i subtree collapses to one leaf."""
    if i < 1:
        raise ValueError("levels are 1-based")
    if t.is_null or i >= len(t):
        return t
    lo, hi = region_span(t, i)
    return CouplingTree(_rerank(t.levels[: lo - 1] + t.levels[hi:]))


def level_leq(t: CouplingTree, i: int, j: int) -> bool:
    """True when the level-j node sits inside the subtree rooted at level i."""
    pos_j = region_of_level(t, j)
    lo, hi = region_span(t, i)
    return lo <= pos_j <= hi


def contract(t: CouplingTree, positions: Iterable[int]) -> CouplingTree:
    """Remove the leaves at the given 1-based positions and close up the tree."""
    drop = set(positions)
    n = len(t)
    if not drop <= set(range(1, n + 1)):
        raise ValueError(f"positions {sorted(drop)} out of range for length {n}")
    if drop == set(range(1, n + 1)):
        raise AllLeavesContracted("cannot contract every leaf")
    if not drop:
        return t
    pruned, _ = _prune(to_recursive(t), drop, 1)
    assert pruned is not None
    return make_tree(_rerank(_inorder(pruned)))


def _prune(
    r: RecursiveTree, drop: set[int], start: int
) -> tuple[RecursiveTree | None, int]:
    """Drop marked leaves; a node losing one side is spliced out with it."""
    match r:
        case Leaf():
            return (None if start in drop else r), start + 1
        case Node(level, l, rt):
            kept_l, mid = _prune(l, drop, start)
            kept_r, end = _prune(rt, drop, mid)
            if kept_l is None:
                return kept_r, end
            if kept_r is None:
                return kept_l, end
            return Node(level, kept_l, kept_r), end
    raise TypeError(f"not a recursive tree: {r!r}")


# --------------------------------------------------------------------------
# Bracketings (shapes), the tree order, and the lifted tensor

# A bracketing is an unleveled shape: () is a leaf, (left, right) a node.
Bracketing = Union[tuple[()], tuple["Bracketing", "Bracketing"]]

LEAF_SHAPE: Bracketing = ()


def graft(b1: Bracketing, b2: Bracketing) -> Bracketing:
    """Join two shapes under a fresh root."""
    return (b1, b2)


def shape_size(b: Bracketing) -> int:
    """Number of leaves of a bracketing."""
    if b == ():
        return 1
    return shape_size(b[0]) + shape_size(b[1])


def forget_levels(t: CouplingTree) -> Bracketing:
    """The underlying shape of a tree, with all levels erased."""
    if t.is_null:
        raise TooShort("the null tree has no bracketing")
    return _shape_of(to_recursive(t))


def _shape_of(r: RecursiveTree) -> Bracketing:
    match r:
        case Leaf():
            return ()
        case Node(_, l, rt):
            return (_shape_of(l), _shape_of(rt))
    raise TypeError(f"not a recursive tree: {r!r}")


def tree_equiv(s: CouplingTree, t: CouplingTree) -> bool:
    """True when the two trees have the same shape (levels ignored)."""
    if s.is_null or t.is_null:
        return s.is_null and t.is_null
    return forget_levels(s) == forget_levels(t)


def tree_less(s: CouplingTree, t: CouplingTree) -> bool:
    """Strict total order: shorter first, then lexicographic on region levels."""
    if len(s) != len(t):
        return len(s) < len(t)
    return (s.levels or ()) < (t.levels or ())


def representative(shape: Bracketing) -> CouplingTree:
    """The largest tree (under ``tree_less``) with the given shape.

    The root is forced to level 1; maximality then sends the largest block
    of the remaining levels into the left subtree and the smallest into the
    right, recursively.
    """
    regions = shape_size(shape) - 1
    return CouplingTree(tuple(_fill(shape, list(range(1, regions + 1)))))


def _fill(shape: Bracketing, pool: list[int]) -> list[int]:
    # pool is ascending; its head becomes this subtree's root level.
    if shape == ():
        return []
    lshape, rshape = shape
    root, rest = pool[0], pool[1:]
    nl = shape_size(lshape) - 1
    right_pool = rest[: len(rest) - nl]
    left_pool = rest[len(rest) - nl :]
    return _fill(lshape, left_pool) + [root] + _fill(rshape, right_pool)


def tensor_M(s: CouplingTree, t: CouplingTree) -> CouplingTree:
    """Graft the two shapes at a new root and take the class representative."""
    if s.is_null or t.is_null:
        raise NullOperand("cannot tensor the null tree")
    return representative(graft(forget_levels(s), forget_levels(t)))


def enumerate_trees(n: int) -> list[CouplingTree]:
    """All (n-1)! trees with n leaves, in lexicographic region-sequence order."""
    if n < 1:
        raise ValueError("need at least one leaf")
    return [CouplingTree(p) for p in itertools.permutations(range(1, n))]


# --------------------------------------------------------------------------
# Text and JSON forms


def format_tree(t: CouplingTree) -> str:
    if t.is_null:
        return "null"
    return "[" + ",".join(str(v) for v in t.levels) + "]"


def parse_tree(text: str) -> CouplingTree:
    """Parse ``[2,1,3]``, a bare digit run like ``213``, or ``null``.

    Sequences that include a 0 are taken to be zero-based and are shifted
    up by one.
    """
    s = text.strip()
    if s == "null":
        return NULL
    if s.startswith("[") and s.endswith("]"):
        body = s[1:-1].strip()
        parts = [p for p in body.split(",") if p.strip()] if body else []
        try:
            values = [int(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"bad tree literal {text!r}") from exc
    elif s.isdigit():
        values = [int(ch) for ch in s]
    else:
        raise ValueError(f"bad tree literal {text!r}")
    if 0 in values:
        values = [v + 1 for v in values]
    return make_tree(values)


def tree_to_json(t: CouplingTree) -> dict:
    return {"levels": None if t.is_null else list(t.levels)}


def tree_from_json(obj: dict) -> CouplingTree:
    levels = obj["levels"]
    if levels is None:
        return NULL
    if any(v == 0 for v in levels):
        levels = [v + 1 for v in levels]
    return make_tree(levels)


def format_bracketing(b: Bracketing) -> str:
    if b == ():
        return "*"
    return f"({format_bracketing(b[0])}.{format_bracketing(b[1])})"


def parse_bracketing(text: str) -> Bracketing:
    """Parse shapes such as ``((*.*).*)``; the dot separator is optional and
    undotted runs associate to the left."""
    shape, rest = _parse_shape(text.strip())
    if rest.strip():
        raise ValueError(f"trailing input {rest!r} in bracketing {text!r}")
    return shape


def _parse_shape(s: str) -> tuple[Bracketing, str]:
    s = s.lstrip()
    if s.startswith("*"):
        return (), s[1:]
    if s.startswith("("):
        factors: list[Bracketing] = []
        rest = s[1:]
        while True:
            rest = rest.lstrip()
            if rest.startswith(")"):
                break
            if rest.startswith("."):
                rest = rest[1:]
                continue
            if not rest:
                raise ValueError("unbalanced parenthesis in bracketing")
            factor, rest = _parse_shape(rest)
            factors.append(factor)
        if len(factors) < 2:
            raise ValueError("a bracketing node needs two sides")
        shape = factors[0]
        for f in factors[1:]:
            shape = (shape, f)
        return shape, rest[1:]
    raise ValueError(f"unexpected input {s[:12]!r} in bracketing")
