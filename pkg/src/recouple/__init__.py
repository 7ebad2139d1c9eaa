"""Groupoids of leveled coupling trees, braidings, and exact coherence evaluation."""

from .braids import (
    BraidWord,
    Permutation,
    XBraidArrow,
    braid_equal,
    compose_x,
    format_word,
    parse_word,
    word,
)
from .diagrams import (
    ArrowGraph,
    Box,
    Edge,
    GroupoidOps,
    PathExplosion,
    StringDiagram,
    arrow_graph,
    compose_boxes,
    deformed_pentagon,
    is_commutative,
    plain_pentagon,
    render,
)
from .gamma import (
    BraidedNoduledRecoupling,
    BraidedRecoupling,
    canonical,
    factor_of,
    gamma_arrow,
    gamma_braided,
    gamma_mixed,
    gamma_noduled,
    gamma_object,
    gamma_result,
)
from .models import (
    MatrixModel,
    ScalarModel,
    check_dodecagons,
    check_pentagon,
    deformativity,
    matrix_hecke,
    matrix_swap,
    model_from_json,
    model_to_json,
    scalar_coboundary,
    scalar_power_ac,
    scalar_random,
    scalar_random_braided,
    scalar_strict,
)
from .nodules import NoduledRecoupling, NoduledTree, noduled, parse_noduled
from .recouplings import (
    Recoupling,
    compose,
    factor_primitive,
    factor_primitive_pseudo,
    recoupling,
    region_permutation,
    split_about,
)
from .trees import CouplingTree, enumerate_trees, format_tree, make_tree, parse_tree

__version__ = "0.1.0"

__all__ = [
    "ArrowGraph",
    "Box",
    "BraidWord",
    "BraidedNoduledRecoupling",
    "BraidedRecoupling",
    "CouplingTree",
    "Edge",
    "GroupoidOps",
    "MatrixModel",
    "NoduledRecoupling",
    "NoduledTree",
    "PathExplosion",
    "Permutation",
    "Recoupling",
    "ScalarModel",
    "StringDiagram",
    "XBraidArrow",
    "arrow_graph",
    "braid_equal",
    "canonical",
    "check_dodecagons",
    "check_pentagon",
    "compose",
    "compose_boxes",
    "compose_x",
    "deformativity",
    "deformed_pentagon",
    "enumerate_trees",
    "factor_of",
    "factor_primitive",
    "factor_primitive_pseudo",
    "format_tree",
    "format_word",
    "gamma_arrow",
    "gamma_braided",
    "gamma_mixed",
    "gamma_noduled",
    "gamma_object",
    "gamma_result",
    "is_commutative",
    "make_tree",
    "matrix_hecke",
    "matrix_swap",
    "model_from_json",
    "model_to_json",
    "noduled",
    "parse_noduled",
    "parse_tree",
    "parse_word",
    "plain_pentagon",
    "recoupling",
    "region_permutation",
    "render",
    "scalar_coboundary",
    "scalar_power_ac",
    "scalar_random",
    "scalar_random_braided",
    "scalar_strict",
    "split_about",
    "word",
]
