"""Exact GIT wall-and-chamber decompositions for thin quiver moduli.

The extension module does the work; this wrapper adds file loading and
converts the exact num/den rationals in the JSON report to `Fraction`.
"""

import json as _json
from fractions import Fraction
from pathlib import Path

try:
    from ._quivergit import (
        AnalysisError,
        Document,
        RequestParseError,
        UnsupportedInput,
        kernel_basis,
        king_semistability,
        picard_general,
        picard_mds_quotient,
    )
except ImportError:  # in-tree test runs put the module on sys.path directly
    from _quivergit import (
        AnalysisError,
        Document,
        RequestParseError,
        UnsupportedInput,
        kernel_basis,
        king_semistability,
        picard_general,
        picard_mds_quotient,
    )

__all__ = [
    "AnalysisError",
    "Document",
    "RequestParseError",
    "UnsupportedInput",
    "analyze",
    "kernel_basis",
    "king_semistability",
    "load",
    "picard_general",
    "picard_mds_quotient",
    "report",
]

__version__ = "0.1.0"


def analyze(text, json_input=False):
    """Build the full analysis document from request text."""
    return Document.from_json(text) if json_input else Document.from_text(text)


def load(path, json_input=None):
    """Analyze a request file; `.json` files are parsed as the JSON mirror."""
    path = Path(path)
    if json_input is None:
        json_input = path.suffix == ".json"
    return analyze(path.read_text(), json_input=json_input)


def _fractions(node):
    if isinstance(node, dict):
        if set(node) == {"num", "den"}:
            return Fraction(int(node["num"]), int(node["den"]))
        return {key: _fractions(value) for key, value in node.items()}
    if isinstance(node, list):
        return [_fractions(item) for item in node]
    return node


def report(doc):
    """The JSON report as nested dicts with exact `Fraction` values."""
    return _fractions(_json.loads(doc.json()))
