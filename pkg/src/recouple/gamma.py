"""Evaluation of tree-groupoid arrows in a concrete model.

Assign one model object per leaf and every arrow between coupling trees
becomes a model arrow: adjacent and pseudo moves land on associator
components, mark flips on unitor components, and strand crossings on
braiding components, each framed by identities along the rest of the
tree.  An arrow is evaluated by factoring it into primitive steps,
mapping each step through the model's structure maps, and composing
temporally (first step acts first).

Ghost-marked leaves are spliced out of every tensor word; unit-marked
leaves stay, and the assignment must put the model's unit object on
every marked position.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .braids import Permutation, XBraidArrow, adjacent_transposition
from .models import check_dodecagons
from .nodules import (
    NoduleChange,
    NoduledReattachment,
    NoduledRecoupling,
    NoduledTree,
    factor_noduled,
    leaf_is_left_child,
    noduled,
    parent_of_leaf,
)
from .recouplings import (
    IllegalMove,
    LengthMismatch,
    PseudoReattachment,
    Reattachment,
    Recoupling,
    adjacent_levels,
    apply_reattachment,
    factor_primitive,
    factor_primitive_pseudo,
    move_to_json,
    recoupling,
)
from .trees import (
    CouplingTree,
    Leaf,
    format_tree,
    region_of_level,
    region_span,
    to_recursive,
)


class NotPrimitiveInterchange(ValueError):
    """The crossed region does not sit under a node with two leaf children."""


class ModeViolation(ValueError):
    """Pseudo-move evaluation was asked of a model that fails the checks."""


class EndpointMismatch(ValueError):
    """Component arrows do not line up with the leaf assignment."""


class NaturalityViolation(ValueError):
    """The two transport routes around a naturality square disagree."""


# --------------------------------------------------------------------------
# Leaf assignments and objects


def _marks(t: CouplingTree | NoduledTree):
    if isinstance(t, NoduledTree):
        return t.tree, t.units, t.ghosts
    return t, frozenset(), frozenset()


def _check_assignment(n: int, leaves: Sequence, model) -> None:
    if len(leaves) != n:
        raise LengthMismatch(f"{len(leaves)} objects assigned to {n} leaves")


def _check_marks(marked, perm: Permutation | None, leaves: Sequence, model) -> None:
    """Every marked slot must hold the unit object (through the slot map)."""
    for p in sorted(marked):
        strand = perm(p) if perm is not None else p
        if leaves[strand - 1] != model.unit:
            raise EndpointMismatch(
                f"slot {p} is marked but carries {leaves[strand - 1]}, "
                f"not the unit {model.unit}"
            )


def _fold_object(tree: CouplingTree, ghosts, slot_objects: Sequence, model):
    """The bracketed tensor product of the surviving leaf objects."""

    def walk(node, lo: int):
        if isinstance(node, Leaf):
            if lo in ghosts:
                return None, 1
            return slot_objects[lo - 1], 1
        a, na = walk(node.left, lo)
        b, nb = walk(node.right, lo + na)
        if a is None:
            return b, na + nb
        if b is None:
            return a, na + nb
        return model.tensor_objects(a, b), na + nb

    obj, _ = walk(to_recursive(tree), 1)
    assert obj is not None  # a fully ghosted tree is not constructible
    return obj


def gamma_object(t: CouplingTree | NoduledTree, leaves: Sequence, model):
    """The model object a (noduled) tree picks out under an assignment."""
    tree, units, ghosts = _marks(t)
    _check_assignment(len(tree), leaves, model)
    _check_marks(units | ghosts, None, leaves, model)
    return _fold_object(tree, ghosts, leaves, model)


# --------------------------------------------------------------------------
# Embedding a component at one node


def _leaf_count(node) -> int:
    if isinstance(node, Leaf):
        return 1
    return _leaf_count(node.left) + _leaf_count(node.right)


def _context_arrow(tree: CouplingTree, ghosts, slot_objects, model, hole, component):
    """Identities everywhere except the subtree at level ``hole``.

    Ghost leaves contribute nothing; the node carrying the hole level is
    replaced wholesale by ``component``.
    """

    def walk(node, lo: int):
        if isinstance(node, Leaf):
            if lo in ghosts:
                return None, 1
            return model.identity(slot_objects[lo - 1]), 1
        if node.level == hole:
            return component, _leaf_count(node)
        a, na = walk(node.left, lo)
        b, nb = walk(node.right, lo + na)
        if a is None:
            return b, na + nb
        if b is None:
            return a, na + nb
        return model.tensor_arrows(a, b), na + nb

    arrow, _ = walk(to_recursive(tree), 1)
    return arrow


def _block_object(slot_objects, ghosts, model, leaf_lo: int, leaf_hi: int):
    objs = [slot_objects[p - 1] for p in range(leaf_lo, leaf_hi + 1) if p not in ghosts]
    if not objs:
        raise IllegalMove(
            f"leaves {leaf_lo}..{leaf_hi} are entirely ghosts; no object survives"
        )
    obj = objs[0]
    for o in objs[1:]:
        obj = model.tensor_objects(obj, o)
    return obj


def _move_arrow(tree, level, partner, slot_objects, ghosts, model):
    """The associator component of one (pseudo) move, in context.

    With the moved node left of its partner the rotation takes
    x(yz) to (xy)z, so the component is an inverse associator; on the
    other side it is a forward one.
    """
    pos_n = region_of_level(tree, level)
    pos_q = region_of_level(tree, partner)
    lo, hi = region_span(tree, level)
    if pos_n < pos_q:
        x = _block_object(slot_objects, ghosts, model, lo, pos_n)
        y = _block_object(slot_objects, ghosts, model, pos_n + 1, pos_q)
        z = _block_object(slot_objects, ghosts, model, pos_q + 1, hi + 1)
        component = model.assoc_inv(x, y, z)
    else:
        x = _block_object(slot_objects, ghosts, model, lo, pos_q)
        y = _block_object(slot_objects, ghosts, model, pos_q + 1, pos_n)
        z = _block_object(slot_objects, ghosts, model, pos_n + 1, hi + 1)
        component = model.assoc(x, y, z)
    return _context_arrow(tree, ghosts, slot_objects, model, level, component)


def gamma_reattachment(move: Reattachment | PseudoReattachment, leaves, model):
    """The model arrow of one adjacent or pseudo move on a plain tree."""
    _check_assignment(len(move.tree), leaves, model)
    partner = move.partner if isinstance(move, PseudoReattachment) else move.level + 1
    return _move_arrow(move.tree, move.level, partner, leaves, frozenset(), model)


# --------------------------------------------------------------------------
# Mark flips


def _nodule_change_arrow(change: NoduleChange, slot_objects, model):
    nt = change.source
    p = change.position
    m = parent_of_leaf(nt.tree, p)
    lo, hi = region_span(nt.tree, m)
    if leaf_is_left_child(nt.tree, p):
        b = _block_object(slot_objects, nt.ghosts, model, p + 1, hi + 1)
        core = model.left_unitor(b) if change.to_ghost else model.left_unitor_inv(b)
    else:
        a = _block_object(slot_objects, nt.ghosts, model, lo, p - 1)
        core = model.right_unitor(a) if change.to_ghost else model.right_unitor_inv(a)
    return _context_arrow(nt.tree, nt.ghosts, slot_objects, model, m, core)


def gamma_nodule_change(change: NoduleChange, leaves, model):
    """The unitor component of one mark flip, in context.

    Absorbing a unit on the left of its sibling is a left unitor;
    waking a ghost is the inverse direction.  The flipped leaf's sibling
    subtree must keep a ghost-free leaf to name the unitor's object.
    """
    nt = change.source
    _check_assignment(nt.leaves, leaves, model)
    _check_marks(nt.units | nt.ghosts, None, leaves, model)
    return _nodule_change_arrow(change, leaves, model)


def _noduled_move_arrow(step: NoduledReattachment, slot_objects, model):
    nt = step.source
    return _move_arrow(
        nt.tree, step.level, step.level + 1, slot_objects, nt.ghosts, model
    )


# --------------------------------------------------------------------------
# Crossings


@dataclass(frozen=True)
class Interchange:
    """One crossing of the two leaves under a least node, with slot contents.

    ``perm`` sends each slot to the strand it carries just before the
    crossing; ``sign`` +1 is a forward crossing, -1 its inverse.
    """

    tree: CouplingTree
    region: int
    sign: int
    perm: Permutation

    def __post_init__(self) -> None:
        n = len(self.tree)
        if not 1 <= self.region <= n - 1:
            raise ValueError(f"no region {self.region} in a {n}-leaf tree")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.perm.degree != n:
            raise ValueError("slot map degree must match the leaf count")
        if region_span(self.tree, self.node) != (self.region, self.region):
            raise NotPrimitiveInterchange(
                f"region {self.region} of {format_tree(self.tree)} does not "
                "pair two bare leaves"
            )

    @property
    def node(self) -> int:
        return self.tree.levels[self.region - 1]

    @property
    def target_perm(self) -> Permutation:
        return adjacent_transposition(len(self.tree), self.region).then(self.perm)


def gamma_interchange(inter: Interchange, leaves, model, ghosts=frozenset()):
    """The braiding component of one primitive crossing, in context."""
    n = len(inter.tree)
    _check_assignment(n, leaves, model)
    x = leaves[inter.perm(inter.region) - 1]
    y = leaves[inter.perm(inter.region + 1) - 1]
    component = model.braiding(x, y) if inter.sign > 0 else model.braiding_inv(y, x)
    slot_objects = [leaves[inter.perm(p) - 1] for p in range(1, n + 1)]
    return _context_arrow(inter.tree, ghosts, slot_objects, model, inter.node, component)


# --------------------------------------------------------------------------
# Plain and noduled arrows


def _require_pseudo_monoidal(model, leaves, samples: int = 24) -> None:
    """Spot-check the rewriting squares a pseudo factorization leans on."""
    pool = sorted(set(leaves) | {model.unit})
    tuples = list(itertools.product(pool, repeat=5))
    if len(tuples) > samples:
        tuples = random.Random(20210).sample(tuples, samples)
    for a, b, c, d, f in tuples:
        if not check_dodecagons(model, a, b, c, d, f):
            raise ModeViolation(
                f"rewriting squares fail at {(a, b, c, d, f)}; pseudo moves "
                "are not sound in this model"
            )


def gamma_arrow(
    r: Recoupling, leaves, model, mode: str = "premonoidal", unchecked: bool = False
):
    """Evaluate a plain-tree arrow through a deterministic factorization.

    ``mode`` picks the primitive alphabet: ``"premonoidal"`` uses
    adjacent moves only; ``"pseudo"`` also allows gapped moves, which is
    only sound when the model's rewriting squares commute (checked on a
    sample unless ``unchecked``).
    """
    if mode not in ("premonoidal", "pseudo"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_assignment(len(r.source), leaves, model)
    if mode == "pseudo" and not unchecked:
        _require_pseudo_monoidal(model, leaves)
    factor = factor_primitive if mode == "premonoidal" else factor_primitive_pseudo
    result = model.identity(gamma_object(r.source, leaves, model))
    for move in factor(r):
        result = model.compose(result, gamma_reattachment(move, leaves, model))
    return result


def gamma_noduled(r: NoduledRecoupling, leaves, model):
    """Evaluate a noduled arrow: wake ghosts, move, re-absorb."""
    _check_assignment(r.source.leaves, leaves, model)
    _check_marks(r.source.units | r.source.ghosts, None, leaves, model)
    result = model.identity(gamma_object(r.source, leaves, model))
    for step in factor_noduled(r):
        if isinstance(step, NoduleChange):
            part = _nodule_change_arrow(step, leaves, model)
        else:
            part = _noduled_move_arrow(step, leaves, model)
        result = model.compose(result, part)
    return result


# --------------------------------------------------------------------------
# Braided arrows


@dataclass(frozen=True)
class BraidedRecoupling:
    """A re-bracketing together with a motion of the leaf strands."""

    source: CouplingTree
    target: CouplingTree
    braid: XBraidArrow

    def __post_init__(self) -> None:
        if len(self.source) != len(self.target):
            raise LengthMismatch(f"{len(self.source)} leaves vs {len(self.target)}")
        if self.braid.word.strands != len(self.source):
            raise LengthMismatch(
                f"{self.braid.word.strands} strands for {len(self.source)} leaves"
            )

    def noduled(self) -> BraidedNoduledRecoupling:
        return BraidedNoduledRecoupling(
            noduled(self.source), noduled(self.target), self.braid
        )

    def inverse(self) -> BraidedRecoupling:
        return BraidedRecoupling(self.target, self.source, self.braid.inverse())


@dataclass(frozen=True)
class BraidedNoduledRecoupling:
    """A braided arrow whose endpoints carry unit and ghost marks.

    Marks name slots, and crossings are only factored through unmarked
    slots, so the strands sitting on marked positions never move.
    """

    source: NoduledTree
    target: NoduledTree
    braid: XBraidArrow

    def __post_init__(self) -> None:
        NoduledRecoupling(self.source, self.target)  # support and length checks
        if self.braid.word.strands != self.source.leaves:
            raise LengthMismatch(
                f"{self.braid.word.strands} strands for {self.source.leaves} leaves"
            )

    def inverse(self) -> BraidedNoduledRecoupling:
        return BraidedNoduledRecoupling(self.target, self.source, self.braid.inverse())


def _region_primitive(t: CouplingTree, i: int) -> bool:
    return region_span(t, t.levels[i - 1]) == (i, i)


def _path_to_primitive(tree: CouplingTree, i: int):
    """Shortest adjacent-move path to a tree pairing leaves i and i+1."""
    if _region_primitive(tree, i):
        return ()
    parent = {tree: (tree, 0)}
    queue = deque([tree])
    while queue:
        current = queue.popleft()
        for n in adjacent_levels(current):
            nxt = apply_reattachment(current, n)
            if nxt in parent:
                continue
            parent[nxt] = (current, n)
            if _region_primitive(nxt, i):
                path = []
                at = nxt
                while at != tree:
                    prev, lvl = parent[at]
                    path.append((prev, lvl))
                    at = prev
                return tuple(reversed(path))
            queue.append(nxt)
    raise RuntimeError(f"no tree pairing leaves {i},{i + 1} reachable from {tree}")


def _mixed_steps(arrow: BraidedNoduledRecoupling):
    """Primitive steps with the slot map in force as each one acts."""
    marks = arrow.source.units | arrow.source.ghosts
    current = arrow.source
    pi = arrow.braid.source
    out = []
    for p in sorted(current.ghosts):
        change = NoduleChange(current, p, to_ghost=False)
        out.append((change, pi))
        current = change.target
    for i, sign in arrow.braid.word.letters:
        if i in marks or i + 1 in marks:
            raise IllegalMove(
                f"crossing at region {i} would move a marked slot; only "
                "unmarked strands may braid"
            )
        for tree, level in _path_to_primitive(current.tree, i):
            step = NoduledReattachment(
                NoduledTree(tree, current.units, current.ghosts), level
            )
            out.append((step, pi))
            current = step.target
        inter = Interchange(current.tree, i, sign, pi)
        out.append((inter, pi))
        pi = inter.target_perm
    for move in factor_primitive(recoupling(current.tree, arrow.target.tree)):
        step = NoduledReattachment(
            NoduledTree(move.tree, current.units, current.ghosts), move.level
        )
        out.append((step, pi))
        current = step.target
    for p in sorted(arrow.target.ghosts):
        change = NoduleChange(current, p, to_ghost=True)
        out.append((change, pi))
        current = change.target
    assert current == arrow.target
    assert pi == arrow.braid.target
    return out


def factor_mixed(arrow: BraidedNoduledRecoupling):
    """Moves, mark flips and primitive crossings composing to the arrow."""
    return tuple(step for step, _ in _mixed_steps(arrow))


def factor_braided(arrow: BraidedRecoupling):
    return factor_mixed(arrow.noduled())


def gamma_mixed(arrow: BraidedNoduledRecoupling, leaves, model):
    """Evaluate a braided noduled arrow; leaves[j] is strand j's object."""
    n = arrow.source.leaves
    _check_assignment(n, leaves, model)
    _check_marks(
        arrow.source.units | arrow.source.ghosts, arrow.braid.source, leaves, model
    )
    source_obj = _fold_object(
        arrow.source.tree,
        arrow.source.ghosts,
        [leaves[arrow.braid.source(p) - 1] for p in range(1, n + 1)],
        model,
    )
    result = model.identity(source_obj)
    for step, pi in _mixed_steps(arrow):
        slot_objects = [leaves[pi(p) - 1] for p in range(1, n + 1)]
        if isinstance(step, Interchange):
            part = gamma_interchange(step, leaves, model)
        elif isinstance(step, NoduleChange):
            part = _nodule_change_arrow(step, slot_objects, model)
        else:
            part = _noduled_move_arrow(step, slot_objects, model)
        result = model.compose(result, part)
    return result


def gamma_braided(arrow: BraidedRecoupling, leaves, model):
    return gamma_mixed(arrow.noduled(), leaves, model)


# --------------------------------------------------------------------------
# Naturality transport


def _ends(arrow):
    """Endpoint data: trees, ghost sets, marked slots and slot maps."""
    if isinstance(arrow, Recoupling):
        n = len(arrow.source)
        pi = Permutation.identity(n)
        return arrow.source, frozenset(), arrow.target, frozenset(), frozenset(), pi, pi
    if isinstance(arrow, NoduledRecoupling):
        n = arrow.source.leaves
        pi = Permutation.identity(n)
        marks = arrow.source.units | arrow.source.ghosts
        return (
            arrow.source.tree,
            arrow.source.ghosts,
            arrow.target.tree,
            arrow.target.ghosts,
            marks,
            pi,
            pi,
        )
    if isinstance(arrow, BraidedRecoupling):
        return (
            arrow.source,
            frozenset(),
            arrow.target,
            frozenset(),
            frozenset(),
            arrow.braid.source,
            arrow.braid.target,
        )
    if isinstance(arrow, BraidedNoduledRecoupling):
        marks = arrow.source.units | arrow.source.ghosts
        return (
            arrow.source.tree,
            arrow.source.ghosts,
            arrow.target.tree,
            arrow.target.ghosts,
            marks,
            arrow.braid.source,
            arrow.braid.target,
        )
    raise TypeError(f"not a tree-groupoid arrow: {arrow!r}")


def _tensor_by_shape(tree, ghosts, payloads, model):
    """Tensor the payload arrows together in the tree's bracket pattern."""

    def walk(node, lo: int):
        if isinstance(node, Leaf):
            if lo in ghosts:
                return None, 1
            return payloads[lo - 1], 1
        a, na = walk(node.left, lo)
        b, nb = walk(node.right, lo + na)
        if a is None:
            return b, na + nb
        if b is None:
            return a, na + nb
        return model.tensor_arrows(a, b), na + nb

    arrow, _ = walk(to_recursive(tree), 1)
    return arrow


def _gamma_of(arrow, leaves, model, mode, unchecked):
    if isinstance(arrow, Recoupling):
        return gamma_arrow(arrow, leaves, model, mode=mode, unchecked=unchecked)
    if isinstance(arrow, NoduledRecoupling):
        return gamma_noduled(arrow, leaves, model)
    if isinstance(arrow, BraidedRecoupling):
        return gamma_braided(arrow, leaves, model)
    if isinstance(arrow, BraidedNoduledRecoupling):
        return gamma_mixed(arrow, leaves, model)
    raise TypeError(f"not a tree-groupoid arrow: {arrow!r}")


def canonical(
    arrow,
    components: Sequence,
    model,
    mode: str = "premonoidal",
    unchecked: bool = False,
):
    """Transport per-strand component arrows along a tree-groupoid arrow.

    With one endo-arrow per strand, both routes around the naturality
    square are formed: components first, then the evaluated arrow, and
    the other way round with the components re-bracketed (and re-slotted)
    at the target.  The common value is returned; disagreement raises
    ``NaturalityViolation``.  Marked slots must carry identity arrows on
    the unit object.
    """
    comps = list(components)
    src_tree, src_ghosts, tgt_tree, tgt_ghosts, marks, src_pi, tgt_pi = _ends(arrow)
    n = len(src_tree)
    if len(comps) != n:
        raise EndpointMismatch(f"{len(comps)} components for {n} strands")
    leaves = [model.arrow_object(f) for f in comps]
    for p in sorted(marks):
        f = comps[src_pi(p) - 1]
        if model.arrow_object(f) != model.unit or not model.is_identity(f):
            raise EndpointMismatch(
                f"slot {p} is marked; its strand must carry the identity on "
                "the unit object"
            )
    tau = _gamma_of(arrow, leaves, model, mode, unchecked)
    before = _tensor_by_shape(
        src_tree, src_ghosts, [comps[src_pi(p) - 1] for p in range(1, n + 1)], model
    )
    after = _tensor_by_shape(
        tgt_tree, tgt_ghosts, [comps[tgt_pi(p) - 1] for p in range(1, n + 1)], model
    )
    first = model.compose(before, tau)
    second = model.compose(tau, after)
    if not model.equal_arrows(first, second):
        raise NaturalityViolation(
            "transporting the components before and after the arrow disagrees"
        )
    return first


# --------------------------------------------------------------------------
# Results and traces


@dataclass(frozen=True)
class GammaResult:
    """An evaluated arrow with the objects at its two ends."""

    source: object
    target: object
    arrow: object


def gamma_result(
    arrow, leaves, model, mode: str = "premonoidal", unchecked: bool = False
) -> GammaResult:
    """Evaluate any tree-groupoid arrow and report its endpoint objects."""
    value = _gamma_of(arrow, leaves, model, mode, unchecked)
    src_tree, src_ghosts, tgt_tree, tgt_ghosts, _, src_pi, tgt_pi = _ends(arrow)
    n = len(src_tree)
    source = _fold_object(
        src_tree, src_ghosts, [leaves[src_pi(p) - 1] for p in range(1, n + 1)], model
    )
    target = _fold_object(
        tgt_tree, tgt_ghosts, [leaves[tgt_pi(p) - 1] for p in range(1, n + 1)], model
    )
    return GammaResult(source, target, value)


def factor_of(arrow, mode: str = "premonoidal"):
    """The primitive steps the evaluator would walk for this arrow."""
    if isinstance(arrow, Recoupling):
        factor = factor_primitive if mode == "premonoidal" else factor_primitive_pseudo
        return tuple(factor(arrow))
    if isinstance(arrow, NoduledRecoupling):
        return tuple(factor_noduled(arrow))
    if isinstance(arrow, BraidedRecoupling):
        return factor_braided(arrow)
    if isinstance(arrow, BraidedNoduledRecoupling):
        return factor_mixed(arrow)
    raise TypeError(f"not a tree-groupoid arrow: {arrow!r}")


def step_to_json(step) -> dict:
    """A JSON-friendly record of one primitive step."""
    if isinstance(step, (Reattachment, PseudoReattachment)):
        record = move_to_json(step)
        record["kind"] = "move"
        record["tree"] = format_tree(step.tree)
        return record
    if isinstance(step, NoduledReattachment):
        return {
            "kind": "move",
            "tree": format_tree(step.source.tree),
            "level": step.level,
            "direction": step.direction,
        }
    if isinstance(step, NoduleChange):
        return {
            "kind": "mark-flip",
            "tree": format_tree(step.source.tree),
            "position": step.position,
            "to_ghost": step.to_ghost,
        }
    if isinstance(step, Interchange):
        return {
            "kind": "crossing",
            "tree": format_tree(step.tree),
            "region": step.region,
            "sign": step.sign,
            "slots": list(step.perm.image),
        }
    raise TypeError(f"not a primitive step: {step!r}")
