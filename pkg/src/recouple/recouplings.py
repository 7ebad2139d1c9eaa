"""Arrows between same-length coupling trees and their primitive moves.

Between any two trees of the same length there is exactly one arrow, so
an arrow is just the ordered pair of its endpoints.  The generating
moves are reattachments: swap the labels n and n+1 when the level-(n+1)
node is a child of the level-n node.  Seen on shapes this re-associates
one node, so a move is the tree-level avatar of the associativity map.
Pseudo moves lift the adjacency restriction: at a node whose nearer
child (the descendant of least level, its partner) is internal, the same
re-association swaps the node's label with its partner's.

Factorization into moves is breadth-first search over the move graph,
expanding levels in increasing order so results are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .braids import Permutation
from .trees import (
    CouplingTree,
    cut_above,
    cut_below,
    level_leq,
    make_tree,
    region_of_level,
    region_span,
    tree_from_json,
    tree_to_json,
)


class LengthMismatch(ValueError):
    """Arrows only exist between trees of equal length."""


class NotComposable(ValueError):
    """The first arrow must end where the second begins."""


class NotAttached(ValueError):
    """No legal move at this level of this tree."""


class NotSplit(ValueError):
    """The arrow does not decompose about the requested level."""


class IllegalMove(ValueError):
    """A structurally valid move forbidden by an extra side condition."""


@dataclass(frozen=True)
class Recoupling:
    """The unique arrow from one coupling tree to another of equal length."""

    source: CouplingTree
    target: CouplingTree

    def __post_init__(self) -> None:
        if len(self.source) != len(self.target):
            raise LengthMismatch(f"{len(self.source)} leaves vs {len(self.target)}")

    def is_identity(self) -> bool:
        return self.source == self.target

    def inverse(self) -> Recoupling:
        return Recoupling(self.target, self.source)


def recoupling(s: CouplingTree, t: CouplingTree) -> Recoupling:
    return Recoupling(s, t)


def identity_recoupling(t: CouplingTree) -> Recoupling:
    return Recoupling(t, t)


def compose(first: Recoupling, second: Recoupling) -> Recoupling:
    """The arrow doing ``first`` and then ``second``."""
    if first.target != second.source:
        raise NotComposable(
            f"first ends at {first.target}, second starts at {second.source}"
        )
    return Recoupling(first.source, second.target)


def region_permutation(r: Recoupling) -> Permutation:
    """Region-to-region view: where each source region's level lives in the target."""
    if r.source.is_null or r.target.is_null:
        raise ValueError("null trees have no regions")
    s = Permutation(r.source.levels)
    t = Permutation(r.target.levels)
    return s.then(t.inverse())


def level_permutation(r: Recoupling) -> Permutation:
    """Level-to-level view: the new label of the node sitting in each region."""
    if r.source.is_null or r.target.is_null:
        raise ValueError("null trees have no levels")
    s = Permutation(r.source.levels)
    t = Permutation(r.target.levels)
    return s.inverse().then(t)


# --------------------------------------------------------------------------
# Reattachment moves


def reattach_legal(t: CouplingTree, n: int) -> bool:
    """True when the level-(n+1) node is a child of the level-n node."""
    if t.levels is None or not 1 <= n <= len(t.levels) - 1:
        return False
    return level_leq(t, n, n + 1)


def reattach_side(t: CouplingTree, n: int) -> str:
    """'left' when label n sits left of label n+1, else 'right'."""
    if not reattach_legal(t, n):
        raise NotAttached(f"no move at level {n} of {t}")
    return "left" if region_of_level(t, n) < region_of_level(t, n + 1) else "right"


def _swap_levels(t: CouplingTree, a: int, b: int) -> CouplingTree:
    levels = list(t.levels)
    i, j = levels.index(a), levels.index(b)
    levels[i], levels[j] = levels[j], levels[i]
    return make_tree(levels)


def apply_reattachment(
    t: CouplingTree, n: int, direction: str | None = None
) -> CouplingTree:
    """Swap labels n and n+1; the move re-associates the level-n node."""
    side = reattach_side(t, n)
    if direction is not None and direction != side:
        raise ValueError(f"move at level {n} of {t} goes {side}, not {direction}")
    return _swap_levels(t, n, n + 1)


def adjacent_levels(t: CouplingTree) -> tuple[int, ...]:
    """Levels where an adjacent move is available."""
    if t.levels is None:
        return ()
    return tuple(n for n in range(1, len(t.levels)) if reattach_legal(t, n))


@dataclass(frozen=True)
class Reattachment:
    """One adjacent move, recorded at its source tree."""

    tree: CouplingTree
    level: int
    direction: str

    def __post_init__(self) -> None:
        side = reattach_side(self.tree, self.level)
        if self.direction != side:
            raise ValueError(
                f"move at level {self.level} of {self.tree} goes {side}"
            )

    @property
    def target(self) -> CouplingTree:
        return _swap_levels(self.tree, self.level, self.level + 1)

    def as_recoupling(self) -> Recoupling:
        return Recoupling(self.tree, self.target)


def reattachment(t: CouplingTree, n: int) -> Reattachment:
    return Reattachment(t, n, reattach_side(t, n))


# --------------------------------------------------------------------------
# Pseudo moves: adjacency restriction lifted


def partner_level(t: CouplingTree, n: int) -> int:
    """The least level strictly below node n — the child it re-associates with."""
    if t.levels is None or not 1 <= n <= len(t.levels) - 1:
        raise NotAttached(f"no node at level {n} of {t}")
    lo, hi = region_span(t, n)
    inside = [v for v in t.levels[lo - 1 : hi] if v != n]
    if not inside:
        raise NotAttached(f"node at level {n} of {t} has two leaf children")
    return min(inside)


def pseudo_legal(t: CouplingTree, n: int) -> bool:
    try:
        partner_level(t, n)
    except NotAttached:
        return False
    return True


def pseudo_side(t: CouplingTree, n: int) -> str:
    q = partner_level(t, n)
    return "left" if region_of_level(t, n) < region_of_level(t, q) else "right"


def apply_pseudo(t: CouplingTree, n: int) -> CouplingTree:
    """Swap label n with its partner; same re-association, any gap allowed."""
    return _swap_levels(t, n, partner_level(t, n))


def pseudo_levels(t: CouplingTree) -> tuple[int, ...]:
    if t.levels is None:
        return ()
    return tuple(n for n in range(1, len(t.levels)) if pseudo_legal(t, n))


@dataclass(frozen=True)
class PseudoReattachment:
    """One pseudo move, recorded at its source tree."""

    tree: CouplingTree
    level: int

    def __post_init__(self) -> None:
        partner_level(self.tree, self.level)

    @property
    def partner(self) -> int:
        return partner_level(self.tree, self.level)

    @property
    def direction(self) -> str:
        return pseudo_side(self.tree, self.level)

    @property
    def target(self) -> CouplingTree:
        return _swap_levels(self.tree, self.level, self.partner)

    def as_recoupling(self) -> Recoupling:
        return Recoupling(self.tree, self.target)


# --------------------------------------------------------------------------
# Factorization


def _bfs_path(
    source: CouplingTree,
    target: CouplingTree,
    levels_of: Callable[[CouplingTree], Iterable[int]],
    step: Callable[[CouplingTree, int], CouplingTree],
) -> tuple[tuple[CouplingTree, int], ...]:
    """Shortest move sequence, deterministic via increasing-level expansion."""
    if source == target:
        return ()
    parent: dict[CouplingTree, tuple[CouplingTree, int]] = {source: (source, 0)}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        for n in levels_of(current):
            nxt = step(current, n)
            if nxt in parent:
                continue
            parent[nxt] = (current, n)
            if nxt == target:
                path: list[tuple[CouplingTree, int]] = []
                at = nxt
                while at != source:
                    prev, lvl = parent[at]
                    path.append((prev, lvl))
                    at = prev
                return tuple(reversed(path))
            queue.append(nxt)
    raise RuntimeError(f"move graph failed to connect {source} to {target}")


def factor_primitive(r: Recoupling) -> tuple[Reattachment, ...]:
    """A sequence of adjacent moves composing to the arrow (empty for identity)."""
    path = _bfs_path(r.source, r.target, adjacent_levels, apply_reattachment)
    return tuple(reattachment(t, n) for t, n in path)


def factor_primitive_pseudo(r: Recoupling) -> tuple[PseudoReattachment, ...]:
    """Like factor_primitive but with the adjacency restriction lifted."""
    path = _bfs_path(r.source, r.target, pseudo_levels, apply_pseudo)
    return tuple(PseudoReattachment(t, n) for t, n in path)


# --------------------------------------------------------------------------
# Splitting about a level


def split_about(r: Recoupling, m: int) -> tuple[Recoupling, Recoupling]:
    """Factor through moves inside level m's subtree, then moves outside it.

    Legal when both endpoints carry level m in the same region, the
    subtree below it spans the same regions, and that span holds the same
    level set.  The first factor rearranges only the subtree's labels,
    the second only the rest; as label permutations the two commute.
    """
    s, t = r.source, r.target
    if s.levels is None or t.levels is None:
        raise NotSplit("null trees do not split")
    n = len(s.levels)
    if m > n:
        return identity_recoupling(s), r
    if region_of_level(s, m) != region_of_level(t, m):
        raise NotSplit(f"level {m} sits in different regions of {s} and {t}")
    span = region_span(s, m)
    if span != region_span(t, m):
        raise NotSplit(f"level {m}'s subtree covers different regions")
    lo, hi = span
    if set(s.levels[lo - 1 : hi]) != set(t.levels[lo - 1 : hi]):
        raise NotSplit(f"level {m}'s subtree holds different labels")
    mid = list(s.levels)
    mid[lo - 1 : hi] = t.levels[lo - 1 : hi]
    u = make_tree(mid)
    return Recoupling(s, u), Recoupling(u, t)


# --------------------------------------------------------------------------
# JSON forms


def recoupling_to_json(r: Recoupling) -> dict:
    return {"source": tree_to_json(r.source), "target": tree_to_json(r.target)}


def recoupling_from_json(obj: dict) -> Recoupling:
    return Recoupling(tree_from_json(obj["source"]), tree_from_json(obj["target"]))


def move_to_json(move: Reattachment | PseudoReattachment) -> dict:
    if isinstance(move, Reattachment):
        return {"level": move.level, "direction": move.direction}
    return {"level": move.level, "partner": move.partner, "direction": move.direction}
