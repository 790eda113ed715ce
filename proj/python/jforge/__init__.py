"""Exact calculus for affine Jacobi structures, Lie algebroids on the affine
dual, strongly-affine triples, and characteristic foliations.

Thin wrapper over the _jforge extension; structures travel as jforge/1 JSON
(see the file schema emitted by the CLI)."""

import json as _json

from _jforge import (  # noqa: F401
    JforgeError,
    JforgeParseError,
    JforgePreconditionError,
    char_rank,
    check,
    classify,
    extract_triple,
    format_version,
    from_triple,
    jacobi_bracket,
    leaf,
    orbit,
    poissonize,
    sj_bracket,
    sn_bracket,
    tangent_lift,
    to_algebroid,
    to_jacobi,
)

__all__ = [
    "JforgeError",
    "JforgeParseError",
    "JforgePreconditionError",
    "char_rank",
    "check",
    "classify",
    "extract_triple",
    "format_version",
    "from_triple",
    "jacobi_bracket",
    "leaf",
    "load",
    "orbit",
    "poissonize",
    "sj_bracket",
    "sn_bracket",
    "tangent_lift",
    "to_algebroid",
    "to_jacobi",
]


def load(path):
    """Read a structure file and return its JSON text."""
    with open(path, "r", encoding="utf-8") as f:
        return _json.dumps(_json.load(f))
