"""Commutativity checking for arrow graphs and a boxes-on-strings calculus.

An ``ArrowGraph`` is a finite labeled directed graph whose edges carry
arrows of some category; it commutes when every two directed paths with
the same endpoints compose to equal arrows.  Composition and equality
are delegated to an ``ops`` object with ``compose`` (temporal: first
argument acts first) and ``equal_arrows`` — any evaluation model
qualifies, and ``GroupoidOps`` covers tree-groupoid arrows, where
equality is endpoint identity.

A ``StringDiagram`` draws arrows as labeled boxes riding n vertical
strings: each box records its re-bracketing, its strand motion, and one
component label per strand.  Consecutive boxes compose by stacking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable

from .braids import BraidWord, Permutation, XBraidArrow, compose_x
from .gamma import BraidedRecoupling, gamma_reattachment
from .models import deformativity
from .recouplings import (
    NotComposable,
    Recoupling,
    compose,
    factor_primitive,
    recoupling,
    region_permutation,
)
from .trees import CouplingTree, format_tree, make_tree, parse_tree


class PathExplosion(RuntimeError):
    """The path-enumeration cap was hit before the check could finish."""


# --------------------------------------------------------------------------
# Arrow graphs


@dataclass(frozen=True)
class Edge:
    source: Hashable
    target: Hashable
    label: str
    arrow: object


@dataclass(frozen=True)
class ArrowGraph:
    edges: tuple[Edge, ...]

    @property
    def vertices(self) -> tuple:
        seen: dict = {}
        for e in self.edges:
            seen.setdefault(e.source, None)
            seen.setdefault(e.target, None)
        return tuple(seen)

    def outgoing(self, vertex) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.source == vertex)


def arrow_graph(edges: Iterable[Edge]) -> ArrowGraph:
    return ArrowGraph(tuple(edges))


class GroupoidOps:
    """Tree-groupoid composition: arrows are equal when endpoints agree."""

    @staticmethod
    def compose(f: Recoupling, g: Recoupling) -> Recoupling:
        return compose(f, g)

    @staticmethod
    def equal_arrows(f: Recoupling, g: Recoupling) -> bool:
        return f.source == g.source and f.target == g.target


@dataclass(frozen=True)
class CommutativityReport:
    """Outcome of a commutativity check, with a failing path pair if any."""

    commutes: bool
    paths_checked: int
    witness: tuple[tuple[Edge, ...], tuple[Edge, ...]] | None

    def __bool__(self) -> bool:
        return self.commutes


def _simple_paths(graph: ArrowGraph, start, cap: int, budget: list[int]):
    """Directed paths from start that never revisit a vertex."""
    out: list[tuple[Edge, ...]] = []

    def go(vertex, visited, acc):
        for edge in graph.outgoing(vertex):
            if edge.target in visited:
                continue
            budget[0] += 1
            if budget[0] > cap:
                raise PathExplosion(f"more than {cap} paths; raise the cap")
            acc.append(edge)
            out.append(tuple(acc))
            go(edge.target, visited | {edge.target}, acc)
            acc.pop()

    go(start, {start}, [])
    return out


def is_commutative(graph: ArrowGraph, ops, cap: int = 100_000) -> CommutativityReport:
    """Check that all parallel directed paths compose to equal arrows.

    Paths never revisit a vertex, so cycles contribute their simple
    segments only.  Enumeration is exhaustive and capped: exceeding the
    cap raises ``PathExplosion`` rather than sampling.  On failure, the
    report carries one offending pair of paths.
    """
    budget = [0]
    by_ends: dict[tuple, list[tuple[Edge, ...]]] = {}
    for start in graph.vertices:
        for path in _simple_paths(graph, start, cap, budget):
            by_ends.setdefault((start, path[-1].target), []).append(path)
    for (start, end), paths in by_ends.items():
        if len(paths) < 2:
            continue
        composites = []
        for path in paths:
            value = path[0].arrow
            for edge in path[1:]:
                value = ops.compose(value, edge.arrow)
            composites.append(value)
        for k in range(1, len(paths)):
            if not ops.equal_arrows(composites[0], composites[k]):
                return CommutativityReport(False, budget[0], (paths[0], paths[k]))
    return CommutativityReport(True, budget[0], None)


# --------------------------------------------------------------------------
# Pentagon graphs


_PENTAGON_CHAIN = ([3, 1, 2], [3, 2, 1], [2, 3, 1], [1, 3, 2], [1, 2, 3], [2, 1, 3])


def deformed_pentagon(model, a, b, c, d) -> ArrowGraph:
    """Six labeled corners, five single moves, and the closing rewrite.

    The chain of adjacent moves runs between the two labelings of the
    doubled-pair bracketing; the closing edge carries the rewriting
    automorphism directly, so the square of routes closes by
    construction in every model.
    """
    leaves = [a, b, c, d]
    corners = [make_tree(levels) for levels in _PENTAGON_CHAIN]
    edges = []
    for s, t in itertools.pairwise(corners):
        (move,) = factor_primitive(recoupling(s, t))
        edges.append(
            Edge(s, t, f"move {move.level}", gamma_reattachment(move, leaves, model))
        )
    edges.append(
        Edge(corners[0], corners[-1], "rewrite", deformativity(model, a, b, c, d))
    )
    return arrow_graph(edges)


def plain_pentagon(model, a, b, c, d) -> ArrowGraph:
    """The five classical re-bracketing edges, wired straight to the model.

    The two routes from the left comb to the right comb agree exactly
    when the model's five-point rewrite is trivial.
    """
    one = model.identity
    edges = [
        Edge(
            "((ab)c)d",
            "(a(bc))d",
            "inner-left",
            model.tensor_arrows(model.assoc(a, b, c), one(d)),
        ),
        Edge("(a(bc))d", "a((bc)d)", "outer", model.assoc(a, b + c, d)),
        Edge(
            "a((bc)d)",
            "a(b(cd))",
            "inner-right",
            model.tensor_arrows(one(a), model.assoc(b, c, d)),
        ),
        Edge("((ab)c)d", "(ab)(cd)", "front", model.assoc(a + b, c, d)),
        Edge("(ab)(cd)", "a(b(cd))", "back", model.assoc(a, b, c + d)),
    ]
    return arrow_graph(edges)


# --------------------------------------------------------------------------
# Boxes on strings


def _neutral_join(first: str, second: str) -> str:
    if first == "1":
        return second
    if second == "1":
        return first
    return f"{second}·{first}"


@dataclass(frozen=True)
class Box:
    """One arrow drawn on the strings: re-bracketing, motion, components."""

    label: str
    source_tree: CouplingTree
    target_tree: CouplingTree
    braid: XBraidArrow
    components: tuple[str, ...]

    def __post_init__(self) -> None:
        n = len(self.source_tree)
        if len(self.target_tree) != n or self.braid.word.strands != n:
            raise NotComposable("box endpoints disagree about the strand count")
        if len(self.components) != n:
            raise NotComposable(f"{len(self.components)} component labels for {n} strands")

    @property
    def strands(self) -> int:
        return len(self.source_tree)

    @property
    def source_state(self) -> tuple[CouplingTree, Permutation]:
        return self.source_tree, self.braid.source

    @property
    def target_state(self) -> tuple[CouplingTree, Permutation]:
        return self.target_tree, self.braid.target

    @property
    def recoupling_perm(self) -> Permutation:
        return region_permutation(recoupling(self.source_tree, self.target_tree))

    def as_arrow(self) -> BraidedRecoupling:
        return BraidedRecoupling(self.source_tree, self.target_tree, self.braid)


def identity_box(tree: CouplingTree, perm: Permutation) -> Box:
    return Box(
        "1",
        tree,
        tree,
        XBraidArrow(perm, BraidWord(len(tree), ())),
        ("1",) * len(tree),
    )


def is_identity_box(box: Box) -> bool:
    return (
        box.source_tree == box.target_tree
        and not box.braid.word.letters
        and all(c == "1" for c in box.components)
    )


@dataclass(frozen=True)
class StringDiagram:
    strands: int
    boxes: tuple[Box, ...]

    def __post_init__(self) -> None:
        for box in self.boxes:
            if box.strands != self.strands:
                raise NotComposable("a box rides a different number of strings")
        for upper, lower in itertools.pairwise(self.boxes):
            if upper.target_state != lower.source_state:
                raise NotComposable(
                    "consecutive boxes do not meet: "
                    f"{format_tree(upper.target_tree)} vs "
                    f"{format_tree(lower.source_tree)}"
                )


def compose_boxes(d: StringDiagram) -> Box:
    """Stack the diagram's boxes into one: words concatenate, labels chain."""
    if not d.boxes:
        raise NotComposable("an empty diagram has no composite box")
    braid = d.boxes[0].braid
    for box in d.boxes[1:]:
        braid = compose_x(braid, box.braid)
    components = list(d.boxes[0].components)
    for box in d.boxes[1:]:
        components = [_neutral_join(f, g) for f, g in zip(components, box.components)]
    labels = [b.label for b in d.boxes if not is_identity_box(b)]
    label = "∘".join(reversed(labels)) if labels else "1"
    return Box(
        label,
        d.boxes[0].source_tree,
        d.boxes[-1].target_tree,
        braid,
        tuple(components),
    )


# --------------------------------------------------------------------------
# Rendering

_COL = 4  # characters per string in text mode


def _text_row(n: int, overrides: dict[int, str]) -> str:
    chars = [" "] * (_COL * n - _COL + 1)
    for p in range(1, n + 1):
        chars[_COL * (p - 1)] = overrides.get(p, "│")
    return "".join(chars).rstrip()


def _render_text(d: StringDiagram) -> str:
    n = d.strands
    width = _COL * n - _COL + 1
    rows = [_text_row(n, {})]
    for box in d.boxes:
        for i, sign in box.braid.word.letters:
            rows.append(_text_row(n, {i: "╲", i + 1: "╱"}))
            marker = _text_row(n, {i: "╱", i + 1: "╲"})
            mid = _COL * (i - 1) + _COL // 2
            marker = marker[:mid].ljust(mid) + ("+" if sign > 0 else "-") + marker[mid + 1 :]
            rows.append(marker.rstrip())
        rows.append("┌" + "─" * max(width - 2, 1) + "┐")
        rows.append(("│" + box.label.center(max(width - 2, 1)) + "│"))
        if any(c != "1" for c in box.components):
            joined = " ".join(c[:3] for c in box.components)
            inner = joined.center(max(width - 2, 1))[: max(width - 2, 1)]
            rows.append("│" + inner + "│")
        rows.append("└" + "─" * max(width - 2, 1) + "┘")
        rows.append(_text_row(n, {}))
    return "\n".join(rows) + "\n"


_SPAN = 40  # svg pixels per string
_STEP = 30  # svg pixels per crossing row
_BOXH = 40  # svg pixels per box body


def _render_svg(d: StringDiagram) -> str:
    n = d.strands
    width = _SPAN * (n + 1)
    xs = {p: _SPAN * p for p in range(1, n + 1)}
    body: list[str] = []
    y = 20
    for box in d.boxes:
        for i, sign in box.braid.word.letters:
            x1, x2 = xs[i], xs[i + 1]
            top, bottom = y, y + _STEP
            under = f'<line x1="{x1}" y1="{top}" x2="{x2}" y2="{bottom}" stroke="black"/>'
            over_halo = (
                f'<line x1="{x2}" y1="{top}" x2="{x1}" y2="{bottom}" '
                'stroke="white" stroke-width="6"/>'
            )
            over = f'<line x1="{x2}" y1="{top}" x2="{x1}" y2="{bottom}" stroke="black"/>'
            if sign > 0:
                body.extend([under, over_halo, over])
            else:
                over2 = f'<line x1="{x1}" y1="{top}" x2="{x2}" y2="{bottom}" stroke="black"/>'
                halo = (
                    f'<line x1="{x1}" y1="{top}" x2="{x2}" y2="{bottom}" '
                    'stroke="white" stroke-width="6"/>'
                )
                first = f'<line x1="{x2}" y1="{top}" x2="{x1}" y2="{bottom}" stroke="black"/>'
                body.extend([first, halo, over2])
            y += _STEP
        left, right = xs[1] - 15, xs[n] + 15
        body.append(
            f'<rect x="{left}" y="{y}" width="{right - left}" height="{_BOXH}" '
            'fill="white" stroke="black"/>'
        )
        body.append(
            f'<text x="{(left + right) // 2}" y="{y + _BOXH // 2 + 5}" '
            'text-anchor="middle" font-family="monospace" font-size="14">'
            f"{box.label}</text>"
        )
        y += _BOXH + 20
    height = y + 20
    strings = [
        f'<line x1="{xs[p]}" y1="0" x2="{xs[p]}" y2="{height}" stroke="black"/>'
        for p in range(1, n + 1)
    ]
    parts = (
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">'
        ]
        + strings
        + body
        + ["</svg>"]
    )
    return "\n".join(parts) + "\n"


def render(d: StringDiagram, format: str = "svg") -> str:
    """Draw the diagram deterministically; crossings come before each box."""
    if format == "svg":
        return _render_svg(d)
    if format == "text":
        return _render_text(d)
    raise ValueError(f"unknown format {format!r}")


# --------------------------------------------------------------------------
# JSON form (groupoid-level edge lists)


def graph_from_json(obj: dict) -> ArrowGraph:
    """Edges between named trees; payloads are the unique tree-groupoid arrows."""
    edges = []
    for item in obj["edges"]:
        s, t = parse_tree(item["source"]), parse_tree(item["target"])
        edges.append(
            Edge(
                format_tree(s),
                format_tree(t),
                item.get("label", ""),
                recoupling(s, t),
            )
        )
    return arrow_graph(edges)


def graph_to_json(graph: ArrowGraph) -> dict:
    return {
        "edges": [
            {"source": str(e.source), "target": str(e.target), "label": e.label}
            for e in graph.edges
        ]
    }
