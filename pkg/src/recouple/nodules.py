"""Coupling trees with marked leaves: units awaiting absorption and ghosts.

A noduled tree is a tree plus two disjoint sets of leaf positions: unit
marks (the leaf carries the unit object) and ghost marks (the unit has
been absorbed and the leaf's edge is pictured as deleted).  Arrows exist
exactly between endpoints with the same marked support — moves may flip
a mark's type but never create or destroy one.

Ghosts may not cover every leaf: with nothing left the picture has no
tree at all, so such values are rejected at construction, which keeps
ghost-contraction total everywhere else.

Equivalence forgets levels except where they survive ghost contraction:
two noduled trees are identified when their shapes, marks, and
ghost-contracted trees (with levels) all agree.  Representatives take
the largest label sequence in the class, extending the convention used
for plain trees.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator

from .recouplings import (
    IllegalMove,
    LengthMismatch,
    apply_reattachment,
    factor_primitive,
    reattach_side,
    recoupling,
)
from .trees import (
    CouplingTree,
    contract,
    forget_levels,
    format_tree,
    graft,
    make_tree,
    parse_tree,
    region_of_level,
    region_span,
    shape_size,
    tensor_M,
    tree_equiv,
    tree_from_json,
    tree_to_json,
)


class GroundMismatch(ValueError):
    """The two nodule patterns live on different underlying sets."""


class AllGhostSide(ValueError):
    """The requested side's leaves are all ghosts, so it has no tree."""


class AllGhost(ValueError):
    """Every leaf is a ghost; such a pattern has no picture."""


# --------------------------------------------------------------------------
# Nodule patterns over an abstract finite ground set


@dataclass(frozen=True)
class NoduleObject:
    """Unit/ghost marks over the ground set {1..ground}."""

    ground: int
    units: frozenset[int]
    ghosts: frozenset[int]

    def __post_init__(self) -> None:
        universe = set(range(1, self.ground + 1))
        if not (set(self.units) <= universe and set(self.ghosts) <= universe):
            raise ValueError("marks must lie inside the ground set")
        if self.units & self.ghosts:
            raise ValueError("a position cannot be unit and ghost at once")
        if self.ground and set(self.ghosts) == universe:
            raise AllGhost(f"all {self.ground} positions are ghosts")

    @property
    def support(self) -> frozenset[int]:
        return self.units | self.ghosts


def nodule_object(ground: int, units=(), ghosts=()) -> NoduleObject:
    return NoduleObject(ground, frozenset(units), frozenset(ghosts))


def nodule_arrow_exists(a: NoduleObject, b: NoduleObject) -> bool:
    """Arrows only flip mark types, so they preserve the marked support."""
    if a.ground != b.ground:
        raise GroundMismatch(f"ground sets of size {a.ground} vs {b.ground}")
    return a.support == b.support


# --------------------------------------------------------------------------
# Noduled coupling trees


@dataclass(frozen=True)
class NoduledTree:
    tree: CouplingTree
    units: frozenset[int] = field(default_factory=frozenset)
    ghosts: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        NoduleObject(len(self.tree), self.units, self.ghosts)

    @property
    def leaves(self) -> int:
        return len(self.tree)

    def pattern(self) -> NoduleObject:
        return NoduleObject(len(self.tree), self.units, self.ghosts)


def noduled(tree: CouplingTree, units=(), ghosts=()) -> NoduledTree:
    return NoduledTree(tree, frozenset(units), frozenset(ghosts))


def noduled_left(nt: NoduledTree) -> NoduledTree:
    from .trees import left as tree_left

    lt = tree_left(nt.tree)
    m = len(lt)
    ghosts = frozenset(i for i in nt.ghosts if i <= m)
    if len(ghosts) == m:
        raise AllGhostSide("left side is entirely ghosts")
    return NoduledTree(lt, frozenset(i for i in nt.units if i <= m), ghosts)


def noduled_right(nt: NoduledTree) -> NoduledTree:
    from .trees import left as tree_left, right as tree_right

    m = len(tree_left(nt.tree))
    rt = tree_right(nt.tree)
    ghosts = frozenset(i - m for i in nt.ghosts if i > m)
    if len(ghosts) == len(rt):
        raise AllGhostSide("right side is entirely ghosts")
    return NoduledTree(rt, frozenset(i - m for i in nt.units if i > m), ghosts)


def ghost_contraction(nt: NoduledTree) -> CouplingTree:
    """The tree left after deleting every ghost leaf's edge."""
    return contract(nt.tree, nt.ghosts)


def noduled_equiv(a: NoduledTree, b: NoduledTree) -> bool:
    return (
        a.leaves == b.leaves
        and a.units == b.units
        and a.ghosts == b.ghosts
        and tree_equiv(a.tree, b.tree)
        and ghost_contraction(a) == ghost_contraction(b)
    )


def _shape_labelings(shape) -> Iterator[CouplingTree]:
    """Every level assignment of a bracketing (roots take minima)."""

    def fill(sh, levels: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if sh == ():
            yield ()
            return
        l, r = sh
        root, rest = levels[0], levels[1:]
        n_left = shape_size(l) - 1
        for chosen in itertools.combinations(rest, n_left):
            remaining = tuple(x for x in rest if x not in chosen)
            for ls in fill(l, chosen):
                for rs in fill(r, remaining):
                    yield ls + (root,) + rs

    size = shape_size(shape)
    for seq in fill(shape, tuple(range(1, size))):
        yield make_tree(list(seq))


def noduled_representative(nt: NoduledTree) -> NoduledTree:
    """The largest-labelled member of the equivalence class."""
    target = ghost_contraction(nt)
    best = max(
        (
            s
            for s in _shape_labelings(forget_levels(nt.tree))
            if contract(s, nt.ghosts) == target
        ),
        key=lambda s: s.levels,
    )
    return NoduledTree(best, nt.units, nt.ghosts)


def noduled_tensor_M(a: NoduledTree, b: NoduledTree) -> NoduledTree:
    """Concatenate under a new root, then pick the class representative.

    The joined ghost-contraction is the plain-tree tensor of the two
    ghost-contractions, mirroring the label-forgetting convention of the
    unmarked tensor; the result tree is the largest labelling of the
    grafted shape that contracts to it.
    """
    offset = a.leaves
    units = a.units | frozenset(i + offset for i in b.units)
    ghosts = a.ghosts | frozenset(i + offset for i in b.ghosts)
    shape = graft(forget_levels(a.tree), forget_levels(b.tree))
    target = tensor_M(ghost_contraction(a), ghost_contraction(b))
    candidates = [
        s for s in _shape_labelings(shape) if contract(s, ghosts) == target
    ]
    if not candidates:
        raise RuntimeError("no labelling matches the joined contraction")
    return NoduledTree(max(candidates, key=lambda s: s.levels), units, ghosts)


# --------------------------------------------------------------------------
# Arrows and primitives


@dataclass(frozen=True)
class NoduledRecoupling:
    """The arrow between two noduled trees with the same marked support."""

    source: NoduledTree
    target: NoduledTree

    def __post_init__(self) -> None:
        if self.source.leaves != self.target.leaves:
            raise LengthMismatch(
                f"{self.source.leaves} leaves vs {self.target.leaves}"
            )
        if not nodule_arrow_exists(self.source.pattern(), self.target.pattern()):
            raise GroundMismatch("endpoints mark different leaf positions")

    def is_identity(self) -> bool:
        return self.source == self.target

    def inverse(self) -> NoduledRecoupling:
        return NoduledRecoupling(self.target, self.source)


def parent_of_leaf(t: CouplingTree, position: int) -> int:
    """The level of the node a leaf hangs from (its nearer join)."""
    n = len(t)
    if not 1 <= position <= n:
        raise ValueError(f"no leaf {position} in a {n}-leaf tree")
    if n == 1:
        raise ValueError("a bare leaf has no parent node")
    left_join = t.levels[position - 2] if position > 1 else 0
    right_join = t.levels[position - 1] if position < n else 0
    return max(left_join, right_join)


def leaf_is_left_child(t: CouplingTree, position: int) -> bool:
    """True when the leaf's parent joins it from the right-hand side."""
    parent = parent_of_leaf(t, position)
    return position < len(t) and t.levels[position - 1] == parent


@dataclass(frozen=True)
class NoduleChange:
    """Flip one mark between unit and ghost; everything else is untouched."""

    source: NoduledTree
    position: int
    to_ghost: bool

    def __post_init__(self) -> None:
        pool = self.source.units if self.to_ghost else self.source.ghosts
        if self.position not in pool:
            kind = "unit" if self.to_ghost else "ghost"
            raise IllegalMove(f"position {self.position} carries no {kind} mark")
        self.target  # reject flips that would leave only ghosts

    @property
    def target(self) -> NoduledTree:
        p = self.position
        if self.to_ghost:
            return NoduledTree(
                self.source.tree,
                self.source.units - {p},
                self.source.ghosts | {p},
            )
        return NoduledTree(
            self.source.tree,
            self.source.units | {p},
            self.source.ghosts - {p},
        )

    def as_arrow(self) -> NoduledRecoupling:
        return NoduledRecoupling(self.source, self.target)


def _move_blocks(t: CouplingTree, n: int) -> tuple[range, range, range]:
    """The three leaf ranges a move at level n re-associates."""
    lo, hi = region_span(t, n)
    pos_n = region_of_level(t, n)
    pos_next = region_of_level(t, n + 1)
    if pos_n < pos_next:  # left move: (A,(B,C)) -> ((A,B),C)
        return (
            range(lo, pos_n + 1),
            range(pos_n + 1, pos_next + 1),
            range(pos_next + 1, hi + 2),
        )
    return (
        range(lo, pos_next + 1),
        range(pos_next + 1, pos_n + 1),
        range(pos_n + 1, hi + 2),
    )


@dataclass(frozen=True)
class NoduledReattachment:
    """An adjacent move whose three blocks each keep a ghost-free leaf."""

    source: NoduledTree
    level: int

    def __post_init__(self) -> None:
        reattach_side(self.source.tree, self.level)  # NotAttached if no move
        for block in _move_blocks(self.source.tree, self.level):
            if all(leaf in self.source.ghosts for leaf in block):
                raise IllegalMove(
                    f"a block of the level-{self.level} move is entirely ghosts"
                )

    @property
    def direction(self) -> str:
        return reattach_side(self.source.tree, self.level)

    @property
    def target(self) -> NoduledTree:
        return NoduledTree(
            apply_reattachment(self.source.tree, self.level),
            self.source.units,
            self.source.ghosts,
        )

    def as_arrow(self) -> NoduledRecoupling:
        return NoduledRecoupling(self.source, self.target)


def factor_noduled(
    r: NoduledRecoupling,
) -> tuple[NoduleChange | NoduledReattachment, ...]:
    """Primitives composing to the arrow: wake all ghosts, move, re-absorb.

    With every mark a unit during the middle leg, the ghost-free-leaf
    side condition is vacuous, so the plain-tree factorization applies
    unchanged.
    """
    steps: list[NoduleChange | NoduledReattachment] = []
    current = r.source
    for p in sorted(r.source.ghosts):
        change = NoduleChange(current, p, to_ghost=False)
        steps.append(change)
        current = change.target
    for move in factor_primitive(recoupling(current.tree, r.target.tree)):
        step = NoduledReattachment(current, move.level)
        steps.append(step)
        current = step.target
    for p in sorted(r.target.ghosts):
        change = NoduleChange(current, p, to_ghost=True)
        steps.append(change)
        current = change.target
    assert current == r.target
    return tuple(steps)


# --------------------------------------------------------------------------
# Text and JSON forms

_COMPACT = re.compile(
    r"\(\s*(\d+)\s*,\s*\{([\d\s,]*)\}\s*,\s*\{([\d\s,]*)\}\s*\)"
)


def _parse_set(text: str) -> frozenset[int]:
    return frozenset(int(x) for x in text.replace(",", " ").split())


def parse_noduled(text: str) -> NoduledTree:
    """Accept ``[2,1,3] u{3} g{5,6}`` or the compact ``(514632,{3},{5,6})``."""
    text = text.strip()
    compact = _COMPACT.fullmatch(text)
    if compact:
        return NoduledTree(
            parse_tree(compact.group(1)),
            _parse_set(compact.group(2)),
            _parse_set(compact.group(3)),
        )
    sets: dict[str, frozenset[int]] = {}
    rest = text
    while True:
        match = re.search(r"([ug])\{([\d\s,]*)\}\s*$", rest)
        if match is None or match.group(1) in sets:
            break
        sets[match.group(1)] = _parse_set(match.group(2))
        rest = rest[: match.start()].rstrip()
    return NoduledTree(
        parse_tree(rest),
        sets.get("u", frozenset()),
        sets.get("g", frozenset()),
    )


def format_noduled(nt: NoduledTree) -> str:
    parts = [format_tree(nt.tree)]
    if nt.units:
        parts.append("u{" + ",".join(str(i) for i in sorted(nt.units)) + "}")
    if nt.ghosts:
        parts.append("g{" + ",".join(str(i) for i in sorted(nt.ghosts)) + "}")
    return " ".join(parts)


def noduled_to_json(nt: NoduledTree) -> dict:
    return {
        "tree": tree_to_json(nt.tree),
        "units": sorted(nt.units),
        "ghosts": sorted(nt.ghosts),
    }


def noduled_from_json(obj: dict) -> NoduledTree:
    return NoduledTree(
        tree_from_json(obj["tree"]),
        frozenset(int(i) for i in obj.get("units", ())),
        frozenset(int(i) for i in obj.get("ghosts", ())),
    )
