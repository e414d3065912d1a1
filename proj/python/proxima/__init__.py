"""Best proximity point checks, solver and oracle on finite instances."""

import json as _json

from ._core import (
    EvalError,
    FileError,
    Instance,
    ParseError,
    ProximaError,
    SchemaError,
    apply_F,
    builtin_names,
    d_phi,
    definitions,
    equivalent,
    evaluate,
    export_problem,
    load_builtin,
    load_problem_file,
    load_problem_text,
    parse_expression,
    proximal_subsets,
    random_instance,
    residual,
    validate_text,
)
from . import _core

__all__ = [
    "EvalError", "FileError", "Instance", "ParseError", "ProximaError", "SchemaError",
    "apply_F", "builtin_names", "check", "corpus", "d_phi", "definitions", "equivalent",
    "evaluate", "export_problem", "load_builtin", "load_problem_file", "load_problem_text",
    "oracle", "parse_expression", "proximal_subsets", "random_instance", "residual",
    "solve", "validate_text",
]


def check(instance, definition, threads=1):
    """Run one named check and return its report as a dict."""
    return _json.loads(_core.check_json(instance, definition, threads))


def solve(instance, start=None, conv_tol=1e-9, max_iters=10000, threads=1):
    """Run the proximal iteration; the dict includes every iterate under "points"."""
    return _json.loads(_core.solve_json(instance, start, conv_tol, max_iters, threads))


def oracle(instance, threads=1):
    return _json.loads(_core.oracle_json(instance, threads))


def corpus(threads=1):
    return _json.loads(_core.corpus_json(threads))
