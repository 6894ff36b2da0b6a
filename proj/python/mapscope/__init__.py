"""Rooted nonseparable planar maps, their labelled trees and pattern-avoiding permutations.

Trees are passed around in their text form, e.g. ``"(2 (1) (1))"``;
permutations are lists of ranks; maps are dicts with ``n_darts``, ``alpha``,
``sigma`` and ``root``.
"""

import json
from decimal import Decimal
from fractions import Fraction

from . import _core
from ._core import (
    ConvergenceError,
    ParseError,
    PreconditionError,
    enumerate_restricted_trees,
    enumerate_trees,
    format_tree,
    generate_av,
    has_no_only_children,
    in_class,
    insert_largest,
    is_k_face_free_tree,
    is_primitive_perm,
    is_primitive_tree,
    mef_necessary,
    occurrences,
    perm_to_tree,
    reduce_to_primitive,
    suite_names,
    tree_stats,
    tree_to_perm,
    validate_tree,
)

__all__ = [
    "ConvergenceError",
    "ParseError",
    "PreconditionError",
    "asymptotic",
    "b3_singularity",
    "canonical_code",
    "enumerate_restricted_trees",
    "enumerate_trees",
    "format_tree",
    "generate_av",
    "has_no_only_children",
    "in_class",
    "insert_largest",
    "is_k_face_free_tree",
    "is_primitive_perm",
    "is_primitive_tree",
    "map_summary",
    "mef_necessary",
    "occurrences",
    "perm_to_tree",
    "reduce_to_primitive",
    "run_cli",
    "run_suite",
    "series",
    "suite_names",
    "tree_stats",
    "tree_to_map",
    "tree_to_perm",
    "tutte_count",
    "validate_tree",
]


def tree_to_map(tree):
    return json.loads(_core.tree_to_map(tree))


def map_summary(m):
    return _core.map_summary(json.dumps(m))


def canonical_code(m):
    return tuple(_core.canonical_code(json.dumps(m)))


def series(name, order):
    """Exact coefficients of x^0..x^order as Fractions."""
    return [Fraction(c) for c in _core.series(name, order)]


def tutte_count(n):
    return int(_core.tutte_count(n))


def asymptotic(name, n):
    """(first-order estimate, exact count it approximates)."""
    estimate, exact = _core.asymptotic(name, n)
    return Decimal(estimate), int(exact)


def b3_singularity():
    return {k: Decimal(v) for k, v in _core.b3_singularity().items()}


def run_suite(name, size_cap=0):
    return json.loads(_core.run_suite(name, size_cap))


def run_cli(args, stdin=""):
    """Run the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli(list(args), stdin)
