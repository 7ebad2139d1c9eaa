"""Command-line front end: parse trees, factor, evaluate, check, render.

Exit codes: 0 for success, 1 for a check that ran and failed (the report
carries a witness), 2 for usage errors, 3 for bad input — unreadable
files, malformed JSON, or values the library rejects.  Set RECOUPLE_LOG
to a level name for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from .braids import Permutation, XBraidArrow, format_word, parse_word
from .diagrams import (
    Box,
    GroupoidOps,
    PathExplosion,
    StringDiagram,
    compose_boxes,
    deformed_pentagon,
    graph_from_json,
    is_commutative,
    plain_pentagon,
    render,
)
from .gamma import BraidedNoduledRecoupling, BraidedRecoupling, factor_of, gamma_result, step_to_json
from .models import check_dodecagons, check_pentagon, deformativity, model_from_json
from .nodules import NoduledRecoupling, noduled
from .recouplings import recoupling
from .trees import enumerate_trees, forget_levels, format_bracketing, format_tree, parse_tree

log = logging.getLogger("recouple")

_BUILTIN_MODELS = {
    "strict": {"kind": "scalar", "preset": "strict"},
    "random": {"kind": "scalar", "preset": "random"},
    "power-ac": {"kind": "scalar", "preset": "power_ac"},
    "coboundary": {"kind": "scalar", "preset": "coboundary"},
    "bilinear-braided": {"kind": "scalar", "preset": "bilinear_braided"},
    "random-braided": {"kind": "scalar", "preset": "random_braided"},
    "hecke": {"kind": "matrix", "r": "hecke"},
    "swap": {"kind": "matrix", "r": "swap"},
}


def _resolve_model(spec: str, seed: int):
    if spec.startswith("builtin:"):
        name = spec[len("builtin:") :]
        if name not in _BUILTIN_MODELS:
            raise ValueError(
                f"unknown builtin model {name!r}; have {', '.join(sorted(_BUILTIN_MODELS))}"
            )
        config = dict(_BUILTIN_MODELS[name])
        config.setdefault("seed", seed)
        return model_from_json(config)
    return model_from_json(_load_json(spec))


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _field(obj: dict, name: str):
    if name not in obj:
        raise ValueError(f"request is missing the {name!r} field")
    return obj[name]


def _ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip() != ""]


def _arrow_json(value) -> dict:
    if hasattr(value, "obj"):
        return {"object": value.obj, "value": str(value.value)}
    return {
        "power": value.power,
        "matrix": [[str(entry) for entry in row] for row in value.matrix],
    }


def _arrow_text(value) -> str:
    if hasattr(value, "obj"):
        return f"{value.value} at object {value.obj}"
    size = len(value.matrix)
    flat = [entry for row in value.matrix for entry in row]
    identity = all(
        entry == (1 if i // size == i % size else 0) for i, entry in enumerate(flat)
    )
    return f"{size}x{size} matrix on power {value.power} (identity: {identity})"


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# --------------------------------------------------------------------------
# Request parsing


def _endpoint(obj):
    """A tree endpoint: either a bare string or {tree, units, ghosts}."""
    if isinstance(obj, str):
        return parse_tree(obj), (), ()
    tree = parse_tree(_field(obj, "tree"))
    return tree, tuple(obj.get("units", ())), tuple(obj.get("ghosts", ()))


def _arrow_from_request(req: dict):
    groupoid = req.get("groupoid", "plain")
    s_tree, s_units, s_ghosts = _endpoint(_field(req, "source"))
    t_tree, t_units, t_ghosts = _endpoint(_field(req, "target"))
    if groupoid == "plain":
        return recoupling(s_tree, t_tree)
    if groupoid == "noduled":
        return NoduledRecoupling(
            noduled(s_tree, s_units, s_ghosts), noduled(t_tree, t_units, t_ghosts)
        )
    n = len(s_tree)
    start = Permutation(tuple(req["start"])) if "start" in req else Permutation.identity(n)
    braid = XBraidArrow(start, parse_word(req.get("word", ""), n))
    if groupoid == "braided":
        return BraidedRecoupling(s_tree, t_tree, braid)
    if groupoid == "mixed":
        return BraidedNoduledRecoupling(
            noduled(s_tree, s_units, s_ghosts), noduled(t_tree, t_units, t_ghosts), braid
        )
    raise ValueError(f"unknown groupoid {groupoid!r}")


def _diagram_from_json(obj: dict) -> StringDiagram:
    strands = _field(obj, "strands")
    boxes = []
    start = Permutation.identity(strands)
    for record in _field(obj, "boxes"):
        if "start" in record:
            start = Permutation(tuple(record["start"]))
        braid = XBraidArrow(start, parse_word(record.get("word", ""), strands))
        components = tuple(record.get("components", ["1"] * strands))
        boxes.append(
            Box(
                record.get("label", ""),
                parse_tree(_field(record, "source")),
                parse_tree(_field(record, "target")),
                braid,
                components,
            )
        )
        start = braid.target
    return StringDiagram(strands, tuple(boxes))


# --------------------------------------------------------------------------
# Commands


def _cmd_normalize(args) -> int:
    tree = parse_tree(args.tree)
    payload = {
        "tree": format_tree(tree),
        "levels": list(tree.levels),
        "leaves": len(tree),
        "shape": format_bracketing(forget_levels(tree)),
    }
    _emit(
        args,
        payload,
        [
            f"tree:   {payload['tree']}",
            f"leaves: {payload['leaves']}",
            f"shape:  {payload['shape']}",
        ],
    )
    return 0


def _cmd_recouple(args) -> int:
    arrow = recoupling(parse_tree(args.source), parse_tree(args.target))
    mode = "pseudo" if args.pseudo else "premonoidal"
    steps = [step_to_json(step) for step in factor_of(arrow, mode)]
    lines = [f"{len(steps)} move(s) from {args.source} to {args.target}"]
    for record in steps:
        where = f" about {record['partner']}" if "partner" in record else ""
        lines.append(
            f"  {record['direction']:>5} at level {record['level']}{where} on {record['tree']}"
        )
    _emit(args, {"moves": steps, "count": len(steps)}, lines)
    return 0


def _cmd_evaluate(args) -> int:
    req = _load_json(args.request)
    arrow = _arrow_from_request(req)
    if "model" in req:
        model = model_from_json(req["model"])
    else:
        model = _resolve_model(args.model, args.seed)
    leaves = _field(req, "leaves")
    mode = req.get("mode", "premonoidal")
    result = gamma_result(arrow, leaves, model, mode=mode)
    payload = {
        "groupoid": req.get("groupoid", "plain"),
        "model": model.name,
        "source_object": result.source,
        "target_object": result.target,
        "arrow": _arrow_json(result.arrow),
    }
    lines = [
        f"groupoid:      {payload['groupoid']}",
        f"model:         {model.name}",
        f"source object: {result.source}",
        f"target object: {result.target}",
        f"arrow:         {_arrow_text(result.arrow)}",
    ]
    if req.get("trace") or args.trace:
        steps = [step_to_json(step) for step in factor_of(arrow, mode)]
        payload["steps"] = steps
        lines.append(f"steps:         {len(steps)}")
        for record in steps:
            lines.append("  " + json.dumps(record))
    _emit(args, payload, lines)
    return 0


def _cmd_check(args) -> int:
    model = _resolve_model(args.model, args.seed)
    if args.what == "pentagon":
        objects = _ints(args.objects)
        if len(objects) != 4:
            raise ValueError("pentagon takes exactly four objects")
        ok = check_pentagon(model, *objects)
        rewrite = deformativity(model, *objects)
        payload = {
            "check": "pentagon",
            "model": model.name,
            "objects": objects,
            "ok": ok,
            "rewriting": _arrow_json(rewrite),
        }
        verdict = "PASS" if ok else "FAIL"
        _emit(
            args,
            payload,
            [f"pentagon at {tuple(objects)} in {model.name}: {verdict}",
             f"rewriting automorphism: {_arrow_text(rewrite)}"],
        )
        return 0 if ok else 1
    if args.what == "dodecagons":
        objects = _ints(args.objects)
        if len(objects) != 5:
            raise ValueError("dodecagons takes exactly five objects")
        ok = check_dodecagons(model, *objects)
        payload = {
            "check": "dodecagons",
            "model": model.name,
            "objects": objects,
            "ok": ok,
        }
        _emit(
            args,
            payload,
            [f"dodecagons at {tuple(objects)} in {model.name}: {'PASS' if ok else 'FAIL'}"],
        )
        return 0 if ok else 1
    # diagram
    if args.edges is not None:
        graph = graph_from_json(_load_json(args.edges))
        ops = GroupoidOps()
    else:
        objects = _ints(args.objects)
        if len(objects) != 4:
            raise ValueError("the pentagon graphs take exactly four objects")
        builder = deformed_pentagon if args.graph == "deformed-pentagon" else plain_pentagon
        graph = builder(model, *objects)
        ops = model
    report = is_commutative(graph, ops, cap=args.cap)
    payload = {
        "check": "diagram",
        "commutes": report.commutes,
        "paths": report.paths_checked,
    }
    lines = [f"diagram commutes: {report.commutes} ({report.paths_checked} paths)"]
    if report.witness is not None:
        routes = [[edge.label for edge in path] for path in report.witness]
        payload["witness"] = routes
        lines.append(f"witness routes: {routes[0]} vs {routes[1]}")
    _emit(args, payload, lines)
    return 0 if report.commutes else 1


def _cmd_render(args) -> int:
    diagram = _diagram_from_json(_load_json(args.diagram))
    if args.compose:
        box = compose_boxes(diagram)
        payload = {
            "label": box.label,
            "source": format_tree(box.source_tree),
            "target": format_tree(box.target_tree),
            "word": format_word(box.braid.word),
            "motion": list(box.braid.target.image),
            "recoupling_perm": box.recoupling_perm.cycle_string(),
            "components": list(box.components),
        }
        print(json.dumps(payload, indent=2))
        return 0
    fmt = "text" if args.format == "text" else "svg"
    sys.stdout.write(render(diagram, fmt))
    return 0


def _cmd_search_models(args) -> int:
    objects = _ints(args.objects)
    if len(objects) != 5:
        raise ValueError("search-models takes five objects (pentagon uses the first four)")
    preset = "random_braided" if args.braided else "random"
    rows = []
    for seed in range(args.seed, args.seed + args.count):
        model = model_from_json({"kind": "scalar", "preset": preset, "seed": seed})
        rows.append(
            {
                "seed": seed,
                "pentagon": check_pentagon(model, *objects[:4]),
                "dodecagons": check_dodecagons(model, *objects),
            }
        )
    lines = [f"{len(rows)} {preset} model(s) at objects {tuple(objects)}"]
    for row in rows:
        lines.append(
            f"  seed {row['seed']:>3}: pentagon {'PASS' if row['pentagon'] else 'FAIL'}"
            f", dodecagons {'PASS' if row['dodecagons'] else 'FAIL'}"
        )
    _emit(args, {"preset": preset, "objects": objects, "results": rows}, lines)
    return 0


def _cmd_enumerate(args) -> int:
    n = args.leaves
    if n < 1:
        raise ValueError("need at least one leaf")
    count = math.factorial(n - 1)
    shown: list[str] = []
    if args.limit > 0 and n <= 9:
        shown = [format_tree(t) for t in enumerate_trees(n)[: args.limit]]
    payload = {"leaves": n, "count": count, "trees": shown}
    lines = [f"{count} tree(s) on {n} leaves"] + [f"  {s}" for s in shown]
    if count > len(shown):
        lines.append(f"  ... ({count - len(shown)} more not shown)")
    _emit(args, payload, lines)
    return 0


# --------------------------------------------------------------------------
# Wiring


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="recouple",
        description="Coupling-tree groupoids: factor, evaluate, check, render.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, format_default="text"):
        p.add_argument("--model", default="builtin:strict", help="builtin:NAME or a JSON file")
        p.add_argument("--seed", type=int, default=0, help="seed for seeded builtin models")
        p.add_argument(
            "--format", choices=("text", "json", "svg"), default=format_default
        )

    p = sub.add_parser("normalize", help="parse a tree and print its canonical forms")
    p.add_argument("--tree", required=True)
    common(p)
    p.set_defaults(handler=_cmd_normalize)

    p = sub.add_parser("recouple", help="factor the arrow between two trees into moves")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--pseudo", action="store_true", help="allow gapped moves")
    common(p)
    p.set_defaults(handler=_cmd_recouple)

    p = sub.add_parser("evaluate", help="evaluate an arrow from a JSON request")
    p.add_argument("--request", required=True, help="request file, or - for stdin")
    p.add_argument("--trace", action="store_true", help="include the factorization steps")
    common(p)
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser("check", help="run a coherence check")
    p.add_argument("what", choices=("pentagon", "dodecagons", "diagram"))
    p.add_argument("--objects", default="1,1,1,1", help="comma-separated object sizes")
    p.add_argument("--edges", default=None, help="diagram: JSON edge list between trees")
    p.add_argument(
        "--graph",
        choices=("deformed-pentagon", "plain-pentagon"),
        default="deformed-pentagon",
        help="diagram: builtin graph to check when --edges is absent",
    )
    p.add_argument("--cap", type=int, default=100_000, help="path enumeration cap")
    common(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("render", help="draw a string diagram of boxes")
    p.add_argument("--diagram", required=True, help="diagram file, or - for stdin")
    p.add_argument("--compose", action="store_true", help="print the composite box instead")
    common(p, format_default="svg")
    p.set_defaults(handler=_cmd_render)

    p = sub.add_parser("search-models", help="survey seeded models for coherence")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--objects", default="1,1,1,1,1")
    p.add_argument("--braided", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_search_models)

    p = sub.add_parser("enumerate", help="count and list the trees on n leaves")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--limit", type=int, default=20)
    common(p)
    p.set_defaults(handler=_cmd_enumerate)

    return parser.parse_args(argv)


def main(argv=None) -> int:
    level = os.environ.get("RECOUPLE_LOG")
    if level:
        logging.basicConfig(level=level.upper())
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except PathExplosion as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        log.debug("failed", exc_info=exc)
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
